use std::collections::HashMap;

use num_integer::Integer;
use rayon::prelude::*;
use serde::Serialize;

use crate::ratlin::{unimodular_inverse, IntMat, Rat};
use crate::torus::{AffineTorusMap, MapOrder, TorusPoint};

use super::{FamilySetup, FamilyTag};

/// One element of Aut(X) = N(G)/G.
#[derive(Clone, Debug, Serialize)]
pub struct AutClass {
    /// Canonical lift: closest to a translation, then lexicographically least.
    pub rep: AffineTorusMap,
    /// All lifts, one per element of the covering group.
    #[serde(skip)]
    pub members: Vec<AffineTorusMap>,
    pub volume_preserving: bool,
    pub free: bool,
    pub order: usize,
}

impl AutClass {
    pub fn is_identity(&self) -> bool {
        self.rep.is_identity()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct AutGroupDescription {
    #[serde(skip)]
    pub normalizer: Vec<AffineTorusMap>,
    pub classes: Vec<AutClass>,
    pub quotient_order: usize,
    pub exponent: usize,
    /// Set when the search space is only known to be complete under an unverified hypothesis.
    pub lower_bound: bool,
    #[serde(skip)]
    class_index: HashMap<AffineTorusMap, usize>,
}

impl AutGroupDescription {
    pub fn class_of(&self, f: &AffineTorusMap) -> Option<usize> {
        self.class_index.get(f).copied()
    }

    /// Index of the product class c_i ∘ c_j.
    pub fn multiply(&self, i: usize, j: usize) -> usize {
        self.class_of(&self.classes[i].rep.compose(&self.classes[j].rep)).expect("normalizer is closed")
    }

    pub fn identity(&self) -> usize {
        self.classes.iter().position(|c| c.is_identity()).expect("identity class")
    }

    pub fn normalizer_order(&self) -> usize {
        self.normalizer.len()
    }
}

fn rep_key(f: &AffineTorusMap) -> (usize, Vec<Vec<num_bigint::BigInt>>, TorusPoint) {
    let c = f.complex_linear();
    let n = c.rows();
    let dist = c.sub(&IntMat::identity(n)).to_rows().iter().flatten().filter(|x| !num_traits::Zero::is_zero(*x)).count();
    (dist, c.to_rows(), f.translation_part().clone())
}

/// Candidate linear parts for normalizer elements.
///
/// D4: the linear parts of ⟨r, s⟩ with either sign on the third factor. Z2Z2: all sign diagonals.
fn linear_candidates(setup: &FamilySetup) -> Vec<IntMat> {
    let mut out: Vec<IntMat> = Vec::new();
    match setup.tag {
        FamilyTag::D4 => {
            for g in setup.covering.elements() {
                for eps in [1, -1] {
                    let c = g.complex_linear().dot(&IntMat::diag(&[1, 1, eps]));
                    if !out.contains(&c) {
                        out.push(c);
                    }
                }
            }
        }
        FamilyTag::Z2Z2 => {
            for mask in 0..8 {
                let d: Vec<i64> = (0..3).map(|i| if mask >> i & 1 == 1 { -1 } else { 1 }).collect();
                out.push(IntMat::diag(&d));
            }
        }
    }
    out.sort();
    out
}

/// Denominator of the translation grid searched for normalizer elements.
const TRANSLATION_GRID: i64 = 4;

/// Enumerates N(G) over the candidate linear parts and the 4-torsion translations.
pub fn automorphism_group(setup: &FamilySetup) -> AutGroupDescription {
    let cover = &setup.covering;
    let dim = setup.shape.real_dim();
    let grid: Vec<TorusPoint> = (0..TRANSLATION_GRID.pow(dim as u32))
        .map(|mut k| {
            let mut c = Vec::with_capacity(dim);
            for _ in 0..dim {
                c.push(Rat::frac(k % TRANSLATION_GRID, TRANSLATION_GRID));
                k /= TRANSLATION_GRID;
            }
            TorusPoint::new(c)
        })
        .collect();
    let mut normalizer: Vec<AffineTorusMap> = Vec::new();
    for c in linear_candidates(setup) {
        let c_inv = unimodular_inverse(&c);
        let c_real = c.kron_i2();
        // conjugated linear part and image of the generator translation, per generator
        let pre: Vec<(IntMat, Vec<Rat>, IntMat)> = cover
            .generators()
            .iter()
            .map(|h| {
                let l = c.dot(h.complex_linear()).dot(&c_inv);
                let lt = c_real.mul_rat_vec(h.translation_part().coords());
                let l_real = l.kron_i2();
                (l, lt, l_real)
            })
            .collect();
        let found: Vec<AffineTorusMap> = grid
            .par_iter()
            .filter(|t| {
                pre.iter().all(|(l, ct_h, l_real)| {
                    let lt = l_real.mul_rat_vec(t.coords());
                    let tr: Vec<Rat> = (0..dim).map(|i| &(&ct_h[i] + &t.coords()[i]) - &lt[i]).collect();
                    cover.contains(&AffineTorusMap::from_parts(l.clone(), TorusPoint::new(tr)))
                })
            })
            .map(|t| AffineTorusMap::from_parts(c.clone(), t.clone()))
            .collect();
        normalizer.extend(found);
    }
    normalizer.sort();
    let lower_bound = setup.tag == FamilyTag::Z2Z2 && !setup.nonisogenous;
    describe(normalizer, setup, lower_bound)
}

fn describe(normalizer: Vec<AffineTorusMap>, setup: &FamilySetup, lower_bound: bool) -> AutGroupDescription {
    let cover = &setup.covering;
    let mut assigned: HashMap<AffineTorusMap, usize> = HashMap::new();
    let mut raw: Vec<Vec<AffineTorusMap>> = Vec::new();
    for e in &normalizer {
        if assigned.contains_key(e) {
            continue;
        }
        let members: Vec<AffineTorusMap> = cover.elements().iter().map(|h| e.compose(h)).collect();
        for m in &members {
            assigned.insert(m.clone(), raw.len());
        }
        raw.push(members);
    }
    let mut classes: Vec<AutClass> = raw
        .into_par_iter()
        .map(|mut members| {
            members.sort_by_key(rep_key);
            let rep = members[0].clone();
            let free = !rep.is_identity() && members.iter().all(|m| !m.has_fixed_point());
            let order = class_order(&rep, setup);
            AutClass { volume_preserving: rep.volume_form_action().preserves(), rep, members, free, order }
        })
        .collect();
    classes.sort_by_key(|c| rep_key(&c.rep));
    let mut class_index = HashMap::new();
    for (i, c) in classes.iter().enumerate() {
        for m in &c.members {
            class_index.insert(m.clone(), i);
        }
    }
    let exponent = classes.iter().fold(1usize, |acc, c| acc.lcm(&c.order));
    let quotient_order = classes.len();
    AutGroupDescription { normalizer, classes, quotient_order, exponent, lower_bound, class_index }
}

fn class_order(rep: &AffineTorusMap, setup: &FamilySetup) -> usize {
    let mut acc = rep.clone();
    for k in 1..=crate::torus::DEFAULT_ORDER_CAP {
        if setup.covering.contains(&acc) {
            return k;
        }
        acc = acc.compose(rep);
    }
    match rep.order() {
        MapOrder::Finite(k) => k,
        MapOrder::Infinite => 0,
    }
}

/// Nontrivial classes acting without fixed points on X.
pub fn free_automorphisms(aut: &AutGroupDescription) -> Vec<&AutClass> {
    aut.classes.iter().filter(|c| c.free).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{default_d4, default_z2};

    #[test]
    fn d4_normalizer_and_classes() {
        let f = default_d4();
        let aut = automorphism_group(&f);
        assert_eq!(aut.normalizer_order(), 256);
        assert_eq!(aut.quotient_order, 16);
        assert_eq!(aut.exponent, 2);
        assert!(aut.classes.iter().all(|c| c.rep.is_translation() && c.volume_preserving));
        assert_eq!(free_automorphisms(&aut).len(), 2);
        let e = aut.identity();
        assert_eq!(aut.multiply(e, 3), 3);
    }

    #[test]
    fn z2_normalizer_and_classes() {
        let f = default_z2();
        let aut = automorphism_group(&f);
        assert_eq!(aut.normalizer_order(), 512);
        assert_eq!(aut.quotient_order, 128);
        assert_eq!(aut.exponent, 2);
        assert!(!aut.lower_bound);
        assert_eq!(free_automorphisms(&aut).len(), 26);
        let non_sym = aut.classes.iter().filter(|c| !c.volume_preserving).count();
        assert_eq!(non_sym, 64);
        for c in aut.classes.iter().filter(|c| !c.volume_preserving) {
            assert_eq!(c.rep.complex_linear(), &IntMat::diag(&[-1, 1, 1]));
        }
    }
}
