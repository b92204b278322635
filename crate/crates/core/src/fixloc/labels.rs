use std::collections::BTreeMap;

use num_bigint::BigInt;
use serde::Serialize;

use crate::families::{AutGroupDescription, FamilySetup, FamilyTag};
use crate::ratlin::{Rat, Sublattice};
use crate::torus::{format_epoint, TorusPoint};

use super::component::FixedComponent;
use super::{fixed_locus_in_quotient, FixlocError};

type Ep = (Rat, Rat);

fn ep(x: &[Rat], i: usize) -> Ep {
    (x[2 * i].frac_part(), x[2 * i + 1].frac_part())
}

fn ep_add(a: &Ep, b: &Ep) -> Ep {
    ((&a.0 + &b.0).frac_part(), (&a.1 + &b.1).frac_part())
}

fn ep_sub(a: &Ep, b: &Ep) -> Ep {
    ((&a.0 - &b.0).frac_part(), (&a.1 - &b.1).frac_part())
}

fn ep_double(a: &Ep) -> Ep {
    ep_add(a, a)
}

fn real(n: i64, d: i64) -> Ep {
    (Rat::frac(n, d), Rat::zero())
}

/// Least solution of 2x = b in coordinates reduced to [0, 1).
fn half_of(b: &Ep) -> Ep {
    let two = BigInt::from(2);
    (b.0.frac_part().div_int(&two), b.1.frac_part().div_int(&two))
}

fn axis_direction(v: [i64; 3]) -> Sublattice {
    let rows: Vec<Vec<BigInt>> = (0..2)
        .map(|k| (0..6).map(|j| BigInt::from(if j % 2 == k { v[j / 2] } else { 0 })).collect())
        .collect();
    Sublattice::from_vectors(6, &rows).expect("rank 6").saturation()
}

/// Name of a fixed curve in the D4 family, ordered so that the preferred name of an orbit is its minimum.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct CurveLabel {
    /// 1..=10 for the named families, 0xff otherwise.
    pub family: u8,
    pub off_diagonal: bool,
    pub params: Vec<Rat>,
    pub text: String,
}

fn e(p: &Ep) -> String {
    format_epoint(&p.0, &p.1, "τ")
}

fn e3(p: &Ep) -> String {
    format_epoint(&p.0, &p.1, "τ′")
}

fn generic_label(c: &FixedComponent, setup: &FamilySetup) -> CurveLabel {
    let text = format!("F^{}{}", c.dim_complex(), c.offset().render(&setup.shape));
    CurveLabel { family: 0xff, off_diagonal: true, params: c.offset().coords().to_vec(), text }
}

/// Labels a component of Fix(α) for α the translation by `t`.
///
/// When t₃ ≠ 1/2 the E′ coordinate is written relative to β (2β = 1/4 + t₃) or γ (2γ = 1/2 + t₃).
pub fn curve_label(c: &FixedComponent, setup: &FamilySetup, t: Option<&TorusPoint>) -> CurveLabel {
    let Some(t) = t else { return generic_label(c, setup) };
    if setup.tag != FamilyTag::D4 || c.dim_complex() != 1 {
        return generic_label(c, setup);
    }
    let tc = t.coords();
    let (t1, t2, t3) = (ep(tc, 0), ep(tc, 1), ep(tc, 2));
    let x = c.offset().coords();
    let (z1, z2, z3) = (ep(x, 0), ep(x, 1), ep(x, 2));
    let (u1, u2) = (&setup.params[0], &setup.params[1]);
    let half = real(1, 2);
    let zero = real(0, 1);
    let symbolic = t3 != half;
    let render_l = |l: &Ep, base: (i64, i64)| -> String {
        if !symbolic {
            return e3(l);
        }
        let (sym, anchor) = if base.1 == 4 {
            ("β", real(1, 4))
        } else {
            ("γ", real(1, 2))
        };
        let delta = ep_sub(l, &half_of(&ep_add(&anchor, &t3)));
        if delta == zero {
            sym.to_string()
        } else {
            format!("{sym}+{}", e3(&delta))
        }
    };
    let mk = |family: u8, off_diagonal: bool, params: Vec<&Ep>, text: String| CurveLabel {
        family,
        off_diagonal,
        params: params.iter().flat_map(|p| [p.0.clone(), p.1.clone()]).collect(),
        text,
    };
    let dir = c.direction();
    if dir == &axis_direction([0, 0, 1]) {
        let (p, q) = (&z1, &z2);
        let diag = p == q;
        if ep_double(p) == t1 && ep_double(q) == t2 {
            return mk(1, !diag, vec![p, q], format!("C^{{1}}_{{{},{}}}", e(p), e(q)));
        }
        if ep_double(p) == ep_add(&t1, &half) && ep_double(q) == ep_add(&t2, &half) {
            return mk(2, !diag, vec![p, q], format!("C^{{2}}_{{{},{}}}", e(p), e(q)));
        }
    } else if dir == &axis_direction([1, 0, 0]) {
        let (q, l) = (&z2, &z3);
        if ep_double(l) == ep_add(&real(1, 4), &t3) {
            if ep_double(q) == half {
                return mk(3, true, vec![q, l], format!("C^{{3}}_{{{},{}}}", e(q), render_l(l, (1, 4))));
            }
            if ep_double(q) == zero {
                return mk(9, true, vec![q, l], format!("C^{{9}}_{{{},{}}}", e(q), render_l(l, (1, 4))));
            }
        }
    } else if dir == &axis_direction([0, 1, 0]) {
        let (p, l) = (&z1, &z3);
        if ep_double(l) == ep_add(&real(3, 4), &t3) {
            if ep_double(p) == half {
                return mk(4, true, vec![p, l], format!("C^{{4}}_{{{},{}}}", e(p), render_l(l, (3, 4))));
            }
            if ep_double(p) == zero {
                return mk(10, true, vec![p, l], format!("C^{{10}}_{{{},{}}}", e(p), render_l(l, (3, 4))));
            }
        }
    } else if dir == &axis_direction([1, -1, 0]) || dir == &axis_direction([1, 1, 0]) {
        let anti = dir == &axis_direction([1, -1, 0]);
        let (cval, base, fams) = if anti { (ep_add(&z1, &z2), (1, 2), (5, 6)) } else { (ep_sub(&z2, &z1), (0, 1), (7, 8)) };
        let l = &z3;
        if ep_double(l) == ep_add(&real(base.0, base.1), &t3) {
            let fam = if cval == ep_add(u1, &t1) {
                Some(fams.0)
            } else if cval == ep_add(u2, &t1) {
                Some(fams.1)
            } else {
                None
            };
            if let Some(fam) = fam {
                return mk(fam, true, vec![l], format!("C^{{{fam},{}}}_{{{}}}", e(&t1), render_l(l, base)));
            }
        }
    }
    generic_label(c, setup)
}

/// One row of the fixed-locus table of the D4 family.
#[derive(Clone, Debug, Serialize)]
pub struct FixedLocusRow {
    pub t1: String,
    pub t2: String,
    pub t3: String,
    pub components: Vec<String>,
    pub count: usize,
    /// The class lifts summarized by this row.
    pub classes: Vec<String>,
    /// Set when the t₃ ≠ 1/2 sub-cases of a row do not share one symbolic component list.
    pub flagged: bool,
}

const ROW_ORDER: [&str; 4] = ["0|0", "τ/2|τ/2", "τ/2|(τ+1)/2", "0|1/2"];

/// Fix(α_X) for every nontrivial automorphism of a D4 manifold, grouped as in the classification
/// table: t₃ = 1/2 and free classes get their own rows, the remaining values of t₃ are merged.
pub fn fixed_locus_table(setup: &FamilySetup, aut: &AutGroupDescription) -> Result<Vec<FixedLocusRow>, FixlocError> {
    if setup.tag != FamilyTag::D4 {
        return Err(FixlocError::Unsupported("the fixed-locus table is defined for the D4 family".into()));
    }
    struct Sub {
        t3: Ep,
        free: bool,
        labels: Vec<String>,
        class: String,
    }
    let mut groups: BTreeMap<(usize, String), (Ep, Ep, Vec<Sub>)> = BTreeMap::new();
    for c in aut.classes.iter().filter(|c| !c.rep.is_identity()) {
        if !c.rep.is_translation() {
            return Err(FixlocError::Consistency(format!("class {} has no translation lift", c.rep.to_dsl(&setup.shape))));
        }
        let rep = fixed_locus_in_quotient(&c.rep, setup, &[])?;
        let t = c.rep.translation_part().coords();
        let (t1, t2, t3) = (ep(t, 0), ep(t, 1), ep(t, 2));
        let key = format!("{}|{}", e(&t1), e(&t2));
        let pos = ROW_ORDER.iter().position(|k| *k == key).unwrap_or(ROW_ORDER.len());
        let g = groups.entry((pos, key)).or_insert_with(|| (t1, t2, Vec::new()));
        g.2.push(Sub { t3, free: rep.components.is_empty(), labels: rep.orbit_labels, class: rep.label });
    }
    let half = real(1, 2);
    let mut rows = Vec::new();
    for (_, (t1, t2, mut subs)) in groups {
        subs.sort_by(|a, b| (!a.free, a.t3 != half, &a.t3).cmp(&(!b.free, b.t3 != half, &b.t3)));
        let row = |s: &Sub, t3: String, flagged: bool| FixedLocusRow {
            t1: e(&t1),
            t2: e(&t2),
            t3,
            count: s.labels.len(),
            components: s.labels.clone(),
            classes: vec![s.class.clone()],
            flagged,
        };
        let (single, rest): (Vec<Sub>, Vec<Sub>) = subs.into_iter().partition(|s| s.free || s.t3 == half);
        for s in &single {
            rows.push(row(s, e3(&s.t3), false));
        }
        if rest.is_empty() {
            continue;
        }
        let sorted = |s: &Sub| {
            let mut v = s.labels.clone();
            v.sort();
            v
        };
        if rest.iter().all(|s| sorted(s) == sorted(&rest[0])) {
            let mut r = row(&rest[0], "≠1/2".into(), false);
            r.classes = rest.iter().map(|s| s.class.clone()).collect();
            rows.push(r);
        } else {
            for s in &rest {
                rows.push(row(s, e3(&s.t3), true));
            }
        }
    }
    Ok(rows)
}
