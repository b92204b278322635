use std::str::FromStr;

use crate::families::{build_d4, build_z2, default_d4, default_z2, AutGroupDescription, AutSubgroup, FactorPoint, FamilySetup, FamilyTag};
use crate::torus::{parse_epoint, parse_map, TorusError};

use super::ReportError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Markdown,
    Csv,
    Json,
}

impl FromStr for Format {
    type Err = String;
    fn from_str(s: &str) -> Result<Format, String> {
        match s.trim().to_ascii_lowercase().as_str() {
            "md" | "markdown" => Ok(Format::Markdown),
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            other => Err(format!("unknown format `{other}` (expected md, csv or json)")),
        }
    }
}

/// Which subgroups Υ ≤ Aut(X) a command looks at.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub enum Selector {
    /// Whatever the command does without a subgroup.
    #[default]
    Unset,
    /// Generators in the map DSL; a bare point is a translation.
    Generators(Vec<String>),
    AllSubgroups,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunConfig {
    pub family: FamilyTag,
    /// Torsion parameters u₁, u₂, u₃ as points of the factors, e.g. `(τ+1)/2`.
    pub params: [Option<String>; 3],
    pub nonisogenous: bool,
    pub subgroup: Selector,
    /// Largest subgroup order enumerated by `AllSubgroups`; defaults depend on the family.
    pub max_order: Option<usize>,
    pub format: Format,
    pub grid: i64,
    pub oracle: bool,
}

impl Default for RunConfig {
    fn default() -> RunConfig {
        RunConfig {
            family: FamilyTag::D4,
            params: [None, None, None],
            nonisogenous: true,
            subgroup: Selector::Unset,
            max_order: None,
            format: Format::Markdown,
            grid: 16,
            oracle: false,
        }
    }
}

fn parse_bool(v: &str) -> Result<bool, String> {
    match v.to_ascii_lowercase().as_str() {
        "true" | "yes" | "on" | "1" => Ok(true),
        "false" | "no" | "off" | "0" => Ok(false),
        other => Err(format!("expected a boolean, found `{other}`")),
    }
}

/// Splits `a; b; c` into trimmed, nonempty generator literals.
pub fn split_generators(s: &str) -> Vec<String> {
    s.split(';').map(str::trim).filter(|g| !g.is_empty()).map(String::from).collect()
}

impl RunConfig {
    /// Reads a flat `key = value` file. Blank lines and `#` comments are skipped.
    ///
    /// Keys: family, u1, u2, u3, nonisogenous, subgroup, all_subgroups, max_order, format, grid, oracle.
    pub fn parse(text: &str) -> Result<RunConfig, ReportError> {
        let mut cfg = RunConfig::default();
        for (ln, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("");
            if line.trim().is_empty() {
                continue;
            }
            let err = |column: usize, message: String| ReportError::Parse { line: ln + 1, column, message };
            let Some(eq) = line.find('=') else {
                return Err(err(line.len() - line.trim_start().len() + 1, "expected `key = value`".into()));
            };
            let key = line[..eq].trim();
            let value = line[eq + 1..].trim();
            let vcol = eq + 2 + (line[eq + 1..].len() - line[eq + 1..].trim_start().len());
            let at_value = |m: String| err(vcol, m);
            match key {
                "family" => cfg.family = value.parse().map_err(at_value)?,
                "u1" | "u2" | "u3" => {
                    let i = key[1..].parse::<usize>().expect("digit") - 1;
                    cfg.params[i] = Some(value.to_string());
                }
                "nonisogenous" => cfg.nonisogenous = parse_bool(value).map_err(at_value)?,
                "subgroup" => cfg.subgroup = Selector::Generators(split_generators(value)),
                "all_subgroups" => {
                    if parse_bool(value).map_err(at_value)? {
                        cfg.subgroup = Selector::AllSubgroups;
                    }
                }
                "max_order" => cfg.max_order = Some(value.parse().map_err(|e| at_value(format!("{e}")))?),
                "format" => cfg.format = value.parse().map_err(at_value)?,
                "grid" => cfg.grid = value.parse().map_err(|e| at_value(format!("{e}")))?,
                "oracle" => cfg.oracle = parse_bool(value).map_err(at_value)?,
                other => return Err(err(line.len() - line.trim_start().len() + 1, format!("unknown key `{other}`"))),
            }
        }
        Ok(cfg)
    }

    pub fn setup(&self) -> Result<FamilySetup, ReportError> {
        if self.params.iter().all(Option::is_none) {
            return Ok(match self.family {
                FamilyTag::D4 => default_d4(),
                FamilyTag::Z2Z2 => {
                    let mut f = default_z2();
                    f.nonisogenous = self.nonisogenous;
                    f
                }
            });
        }
        let (periods, defaults) = match self.family {
            FamilyTag::D4 => (["τ", "τ", "τ′"], crate::families::d4_default_params()),
            FamilyTag::Z2Z2 => (["τ1", "τ2", "τ3"], crate::families::z2_default_params()),
        };
        let mut us: Vec<FactorPoint> = Vec::new();
        for i in 0..3 {
            us.push(match &self.params[i] {
                None => defaults[i].clone(),
                Some(s) => parse_epoint(s, periods[i]).map_err(|e| ReportError::Usage(format!("u{}: {e}", i + 1)))?,
            });
        }
        let built = match self.family {
            FamilyTag::D4 => build_d4(us[0].clone(), us[1].clone(), us[2].clone()),
            FamilyTag::Z2Z2 => build_z2(us[0].clone(), us[1].clone(), us[2].clone(), self.nonisogenous),
        };
        built.map_err(|e| ReportError::Usage(e.to_string()))
    }

    /// The explicitly selected subgroup, if any.
    pub fn selected_subgroup(&self, setup: &FamilySetup, aut: &AutGroupDescription) -> Result<Option<AutSubgroup>, ReportError> {
        let Selector::Generators(gens) = &self.subgroup else { return Ok(None) };
        let maps = gens
            .iter()
            .map(|g| {
                parse_map(g, &setup.shape).map_err(|e| match e {
                    TorusError::Parse { column, message, .. } => ReportError::Parse { line: 1, column, message: format!("in `{g}`: {message}") },
                    other => ReportError::Usage(other.to_string()),
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        aut.subgroup_of_maps(&maps).map(Some).map_err(|e| ReportError::Usage(e.to_string()))
    }

    pub fn subgroup_order_cap(&self) -> usize {
        self.max_order.unwrap_or(match self.family {
            FamilyTag::D4 => 16,
            FamilyTag::Z2Z2 => 2,
        })
    }
}
