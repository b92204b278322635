use serde::{Deserialize, Serialize};

use crate::invariants::QuotientClass;
use crate::pi1::{CoverClass, Pi1Descriptor};

use super::config::Format;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FixLine {
    pub t1: String,
    pub t2: String,
    pub t3: String,
    pub components: Vec<String>,
    pub count: usize,
    pub classes: Vec<String>,
    pub flagged: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub verified: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub grid: Option<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuotientLine {
    pub generators: Vec<String>,
    pub order: usize,
    pub class: QuotientClass,
    pub h11: i64,
    pub h21: i64,
    pub euler: i64,
    pub pi1: Pi1Descriptor,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub isolated_points: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub closed_form_points: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AutLine {
    pub index: usize,
    pub representative: String,
    pub map: String,
    pub order: usize,
    pub volume_preserving: bool,
    pub free: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Pi1Line {
    pub generators: Vec<String>,
    pub pi1: Pi1Descriptor,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckLine {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

/// Output of one command; the JSON form is this value serialized.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "rows", rename_all = "lowercase")]
pub enum Report {
    Fixtable(Vec<FixLine>),
    Quotients(Vec<QuotientLine>),
    Auts(Vec<AutLine>),
    Pi1(Vec<Pi1Line>),
    Selfcheck(Vec<CheckLine>),
}

struct Table {
    columns: Vec<String>,
    rows: Vec<Vec<String>>,
}

fn gens_cell(g: &[String]) -> String {
    if g.is_empty() {
        "⟨⟩".into()
    } else {
        g.join("; ")
    }
}

fn cols(names: &[&str]) -> Vec<String> {
    names.iter().map(|s| s.to_string()).collect()
}

fn yes(b: bool) -> String {
    if b { "yes" } else { "no" }.into()
}

fn cover(c: CoverClass) -> String {
    format!("{c:?}")
}

impl Report {
    pub fn from_json(s: &str) -> Result<Report, serde_json::Error> {
        serde_json::from_str(s)
    }

    /// False when a selfcheck line failed.
    pub fn passed(&self) -> bool {
        match self {
            Report::Selfcheck(lines) => lines.iter().all(|l| l.passed),
            _ => true,
        }
    }

    fn table(&self) -> Table {
        match self {
            Report::Fixtable(rows) => {
                let oracle = rows.iter().any(|r| r.verified.is_some());
                let mut columns = cols(&["t1", "t2", "t3", "components", "count"]);
                if oracle {
                    columns.push(format!("verified@N={}", rows.iter().find_map(|r| r.grid).unwrap_or(0)));
                }
                let rows = rows
                    .iter()
                    .map(|r| {
                        let mut v = vec![
                            r.t1.clone(),
                            r.t2.clone(),
                            r.t3.clone(),
                            if r.components.is_empty() { "∅".into() } else { r.components.join(" ∪ ") },
                            r.count.to_string(),
                        ];
                        if oracle {
                            v.push(r.verified.map(|b| b.to_string()).unwrap_or_default());
                        }
                        v
                    })
                    .collect();
                Table { columns, rows }
            }
            Report::Quotients(rows) => Table {
                columns: cols(&["generators", "order", "class", "h11", "h21", "euler", "pi1", "cover"]),
                rows: rows
                    .iter()
                    .map(|r| {
                        vec![
                            gens_cell(&r.generators),
                            r.order.to_string(),
                            format!("{:?}", r.class),
                            r.h11.to_string(),
                            r.h21.to_string(),
                            r.euler.to_string(),
                            r.pi1.label.clone(),
                            cover(r.pi1.cover_class),
                        ]
                    })
                    .collect(),
            },
            Report::Auts(rows) => Table {
                columns: cols(&["#", "representative", "map", "order", "volume-preserving", "free"]),
                rows: rows
                    .iter()
                    .map(|r| vec![r.index.to_string(), r.representative.clone(), r.map.clone(), r.order.to_string(), yes(r.volume_preserving), yes(r.free)])
                    .collect(),
            },
            Report::Pi1(rows) => Table {
                columns: cols(&["generators", "pi1", "finite", "order", "abelianization", "lattice rank", "point quotient", "cover"]),
                rows: rows
                    .iter()
                    .map(|r| {
                        let p = &r.pi1;
                        let ab = crate::pi1::abelian_label(
                            p.abelian_free_rank,
                            &p.abelian_invariants.iter().map(|&d| num_bigint::BigInt::from(d)).collect::<Vec<_>>(),
                        );
                        vec![
                            gens_cell(&r.generators),
                            p.label.clone(),
                            yes(p.finite),
                            p.order.map(|o| o.to_string()).unwrap_or_else(|| "∞".into()),
                            ab,
                            p.lattice_rank.map(|r| r.to_string()).unwrap_or_default(),
                            p.point_quotient.clone().unwrap_or_default(),
                            cover(p.cover_class),
                        ]
                    })
                    .collect(),
            },
            Report::Selfcheck(rows) => Table {
                columns: cols(&["check", "result", "detail"]),
                rows: rows.iter().map(|r| vec![r.name.clone(), if r.passed { "PASS" } else { "FAIL" }.into(), r.detail.clone()]).collect(),
            },
        }
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => serde_json::to_string_pretty(self).expect("serializable") + "\n",
            Format::Markdown => {
                let t = self.table();
                let esc = |s: &str| s.replace('|', "\\|");
                let mut out = format!("| {} |\n", t.columns.join(" | "));
                out += &format!("|{}\n", t.columns.iter().map(|_| "---|").collect::<String>());
                for r in &t.rows {
                    out += &format!("| {} |\n", r.iter().map(|c| esc(c)).collect::<Vec<_>>().join(" | "));
                }
                out
            }
            Format::Csv => {
                let t = self.table();
                let mut w = csv::Writer::from_writer(Vec::new());
                w.write_record(&t.columns).expect("in-memory write");
                for r in &t.rows {
                    w.write_record(r).expect("in-memory write");
                }
                String::from_utf8(w.into_inner().expect("flush")).expect("utf-8")
            }
        }
    }
}
