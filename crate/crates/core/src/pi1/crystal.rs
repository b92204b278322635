use std::collections::HashMap;

use num_bigint::BigInt;
use serde::Serialize;

use crate::families::{AutGroupDescription, AutSubgroup, FamilySetup};
use crate::ratlin::{rational_solvable, IntMat, Rat};
use crate::torus::{AffineTorusMap, FiniteAffineGroup, DEFAULT_ORDER_CAP};

use super::Pi1Error;

/// An affine map x ↦ M x + v of R^m with exact translation (not reduced modulo Z^m).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct AffineElement {
    pub linear: IntMat,
    pub translation: Vec<Rat>,
}

impl AffineElement {
    pub fn identity(m: usize) -> AffineElement {
        AffineElement { linear: IntMat::identity(m), translation: vec![Rat::zero(); m] }
    }

    pub fn translation_by(v: Vec<Rat>) -> AffineElement {
        AffineElement { linear: IntMat::identity(v.len()), translation: v }
    }

    /// self ∘ o
    pub fn compose(&self, o: &AffineElement) -> AffineElement {
        let mv = self.linear.mul_rat_vec(&o.translation);
        AffineElement {
            linear: self.linear.dot(&o.linear),
            translation: mv.iter().zip(&self.translation).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn inverse(&self) -> AffineElement {
        let inv = crate::ratlin::unimodular_inverse(&self.linear);
        let t: Vec<Rat> = inv.mul_rat_vec(&self.translation).iter().map(|x| -x).collect();
        AffineElement { linear: inv, translation: t }
    }

    pub fn is_translation(&self) -> bool {
        self.linear == IntMat::identity(self.linear.rows())
    }
}

/// Whether (M, v) fixes a point of R^m, i.e. (M − I) x = −v has a rational solution.
pub fn has_fixed_point(g: &AffineElement) -> bool {
    let m = g.linear.rows();
    let neg: Vec<Rat> = g.translation.iter().map(|x| -x).collect();
    rational_solvable(&g.linear.sub(&IntMat::identity(m)), &neg)
}

/// Γ = ⟨Z^m, lifts of H and Υ⟩ acting on R^m, stored as the finite point-and-translation group
/// Q = Γ / Z^m together with one coset representative per element of Q.
#[derive(Clone, Debug)]
pub struct CrystalGroup {
    dim: usize,
    quotient: FiniteAffineGroup,
    reps: Vec<AffineElement>,
    /// Positions of the generators of Q.
    gens: Vec<usize>,
    /// Lattice parts of products of representatives with generators: c_p c_g = τ(λ) c_{pg}.
    cocycle: HashMap<(usize, usize), (usize, Vec<BigInt>)>,
}

impl CrystalGroup {
    pub fn from_generators(setup: &FamilySetup, lifts: &[AffineTorusMap], expected: Option<usize>) -> Result<CrystalGroup, Pi1Error> {
        let mut gens = setup.covering.generators().to_vec();
        gens.extend(lifts.iter().cloned());
        let cap = expected.map_or(DEFAULT_ORDER_CAP * 4, |e| e);
        let quotient = FiniteAffineGroup::generate(&setup.shape, &gens, cap)
            .map_err(|_| Pi1Error::Consistency(format!("the lifts generate more than {cap} cosets of the lattice")))?;
        if let Some(e) = expected {
            if quotient.order() != e {
                return Err(Pi1Error::Consistency(format!("expected {e} cosets of the lattice, found {}", quotient.order())));
            }
        }
        let dim = setup.shape.real_dim();
        let reps: Vec<AffineElement> = quotient
            .elements()
            .iter()
            .map(|q| AffineElement { linear: q.real_linear().clone(), translation: q.translation_part().coords().to_vec() })
            .collect();
        let gen_pos: Vec<usize> = gens.iter().map(|g| quotient.position(g).expect("generator in group")).collect();
        let mut cocycle = HashMap::new();
        for (p, rp) in reps.iter().enumerate() {
            for &g in &gen_pos {
                let prod = rp.compose(&reps[g]);
                let pg = quotient.position(&quotient.elements()[p].compose(&quotient.elements()[g])).expect("closed");
                let lam: Vec<BigInt> = prod
                    .translation
                    .iter()
                    .zip(&reps[pg].translation)
                    .map(|(a, b)| (a - b).to_integer().expect("lattice correction is integral"))
                    .collect();
                cocycle.insert((p, g), (pg, lam));
            }
        }
        Ok(CrystalGroup { dim, quotient, reps, gens: gen_pos, cocycle })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Q = Γ / Z^m as a group of torus automorphisms.
    pub fn point_translation_group(&self) -> &FiniteAffineGroup {
        &self.quotient
    }

    pub fn coset_count(&self) -> usize {
        self.reps.len()
    }

    pub fn coset_reps(&self) -> &[AffineElement] {
        &self.reps
    }

    pub fn generator_positions(&self) -> &[usize] {
        &self.gens
    }

    /// (pg, λ) with c_p c_g = τ(λ) c_{pg}, for g a generator position.
    pub fn cocycle(&self, p: usize, g: usize) -> &(usize, Vec<BigInt>) {
        &self.cocycle[&(p, g)]
    }

    pub fn multiply(&self, p: usize, q: usize) -> usize {
        let e = &self.quotient.elements();
        self.quotient.position(&e[p].compose(&e[q])).expect("closed")
    }

    pub fn identity_position(&self) -> usize {
        self.quotient.position(&AffineTorusMap::identity(self.quotient.shape())).expect("identity")
    }

    /// Positions of the elements of Q whose linear part is the identity.
    pub fn translation_positions(&self) -> Vec<usize> {
        (0..self.reps.len()).filter(|&i| self.reps[i].is_translation()).collect()
    }
}

/// Γ for X/Υ, i.e. the orbifold fundamental group of the quotient.
pub fn build_gamma(setup: &FamilySetup, aut: &AutGroupDescription, upsilon: &AutSubgroup) -> Result<CrystalGroup, Pi1Error> {
    let expected = setup.covering.order() * upsilon.order();
    CrystalGroup::from_generators(setup, &upsilon.lifts(aut), Some(expected))
}
