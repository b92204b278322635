//! The two families of type-A Calabi-Yau threefolds: the D4 family on E×E×E′ and the (Z/2)²
//! family on E₁×E₂×E₃, with their automorphism groups and moduli.

mod aut;
mod moduli;
mod subgroups;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::invariants::invariant_hodge;
use crate::ratlin::{IntMat, Rat};
use crate::torus::{AffineTorusMap, FiniteAffineGroup, TorusError, TorusPoint, TorusShape, DEFAULT_ORDER_CAP};

pub use aut::{automorphism_group, free_automorphisms, AutClass, AutGroupDescription};
pub use subgroups::AutSubgroup;
pub use moduli::{double_cover_map, moduli_dimension, moduli_dimension_of, preimages, ModuliLabel};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum FamilyTag {
    D4,
    Z2Z2,
}

impl fmt::Display for FamilyTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FamilyTag::D4 => "d4",
            FamilyTag::Z2Z2 => "z2z2",
        })
    }
}

impl std::str::FromStr for FamilyTag {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s.trim().to_ascii_lowercase().as_str() {
            "d4" => Ok(FamilyTag::D4),
            "z2z2" | "z2" => Ok(FamilyTag::Z2Z2),
            other => Err(format!("unknown family `{other}` (expected d4 or z2z2)")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FamilyError {
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("the covering group does not act freely: {0} has a fixed point")]
    NotFree(String),
    #[error("consistency failure: {0}")]
    Consistency(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error(transparent)]
    Torus(#[from] TorusError),
}

/// A point a + bτ of one elliptic factor, as lattice coordinates (a, b).
pub type FactorPoint = (Rat, Rat);

/// A member of one of the families: the torus, its covering group and the torsion parameters.
#[derive(Clone, Debug)]
pub struct FamilySetup {
    pub tag: FamilyTag,
    pub shape: TorusShape,
    pub covering: FiniteAffineGroup,
    pub params: [FactorPoint; 3],
    /// Whether the three curves are assumed pairwise non-isogenous (only read for Z2Z2).
    pub nonisogenous: bool,
}

#[derive(Serialize)]
struct SetupJson<'a> {
    family: String,
    periods: &'a [String],
    u: Vec<String>,
    generators: Vec<String>,
    covering_order: usize,
}

impl FamilySetup {
    pub fn to_json(&self) -> serde_json::Value {
        let u = self
            .params
            .iter()
            .enumerate()
            .map(|(i, (a, b))| crate::torus::format_epoint(a, b, &self.shape.periods[i]))
            .collect();
        let generators = self
            .covering
            .labels()
            .iter()
            .zip(self.covering.generators())
            .map(|(l, g)| format!("{l}: {}", g.to_dsl(&self.shape)))
            .collect();
        serde_json::to_value(SetupJson {
            family: self.tag.to_string(),
            periods: &self.shape.periods,
            u,
            generators,
            covering_order: self.covering.order(),
        })
        .expect("serializable")
    }

    pub fn generator(&self, label: &str) -> Option<&AffineTorusMap> {
        self.covering.labels().iter().position(|l| l == label).map(|i| &self.covering.generators()[i])
    }
}

fn fp(a: (i64, i64), b: (i64, i64)) -> FactorPoint {
    (Rat::frac(a.0, a.1), Rat::frac(b.0, b.1))
}

/// u₁ = (τ+1)/2, u₂ = τ/2, u₃ = 1/4.
pub fn d4_default_params() -> [FactorPoint; 3] {
    [fp((1, 2), (1, 2)), fp((0, 1), (1, 2)), fp((1, 4), (0, 1))]
}

/// u₁ = u₂ = u₃ = 1/2.
pub fn z2_default_params() -> [FactorPoint; 3] {
    [fp((1, 2), (0, 1)), fp((1, 2), (0, 1)), fp((1, 2), (0, 1))]
}

fn reduce(p: &FactorPoint) -> FactorPoint {
    (p.0.frac_part(), p.1.frac_part())
}

fn is_torsion(p: &FactorPoint, n: i64) -> bool {
    p.0.mul_int(&n.into()).is_integer() && p.1.mul_int(&n.into()).is_integer()
}

fn is_zero(p: &FactorPoint) -> bool {
    p.0.frac_part().is_zero() && p.1.frac_part().is_zero()
}

fn translation_of(parts: [&FactorPoint; 3]) -> TorusPoint {
    TorusPoint::new(parts.iter().flat_map(|(a, b)| [a.clone(), b.clone()]).collect())
}

fn check_free(covering: &FiniteAffineGroup, shape: &TorusShape) -> Result<(), FamilyError> {
    for g in covering.elements() {
        if !g.is_identity() && g.has_fixed_point() {
            return Err(FamilyError::NotFree(g.to_dsl(shape)));
        }
    }
    Ok(())
}

fn check_hodge(covering: &FiniteAffineGroup, expected: i64) -> Result<(), FamilyError> {
    let h11 = invariant_hodge(covering, 1, 1).map_err(|e| FamilyError::Consistency(e.to_string()))?;
    let h21 = invariant_hodge(covering, 2, 1).map_err(|e| FamilyError::Consistency(e.to_string()))?;
    if (h11, h21) != (expected, expected) {
        return Err(FamilyError::Consistency(format!("expected h11 = h21 = {expected}, found ({h11}, {h21})")));
    }
    Ok(())
}

/// X = (E×E×E′)/⟨r, s⟩ with r(z) = (z₂, −z₁, z₃+u₃) and s(z) = (z₂+u₁, z₁+u₂, −z₃).
pub fn build_d4(u1: FactorPoint, u2: FactorPoint, u3: FactorPoint) -> Result<FamilySetup, FamilyError> {
    let (u1, u2, u3) = (reduce(&u1), reduce(&u2), reduce(&u3));
    if !is_torsion(&u1, 2) || !is_torsion(&u2, 2) {
        return Err(FamilyError::InvalidParameters("u1 and u2 must be 2-torsion points of E".into()));
    }
    if is_zero(&u1) && is_zero(&u2) {
        return Err(FamilyError::InvalidParameters("(u1, u2) must be nonzero".into()));
    }
    if u1 == u2 {
        return Err(FamilyError::InvalidParameters("u1 must differ from u2".into()));
    }
    if !is_torsion(&u3, 4) || is_zero(&u3) {
        return Err(FamilyError::InvalidParameters("u3 must be a nonzero 4-torsion point of E′".into()));
    }
    let shape = TorusShape::new(&["τ", "τ", "τ′"]);
    let zero = fp((0, 1), (0, 1));
    let r = AffineTorusMap::new(
        &shape,
        IntMat::from_i64(&[vec![0, 1, 0], vec![-1, 0, 0], vec![0, 0, 1]]),
        translation_of([&zero, &zero, &u3]),
    )?;
    let s = AffineTorusMap::new(
        &shape,
        IntMat::from_i64(&[vec![0, 1, 0], vec![1, 0, 0], vec![0, 0, -1]]),
        translation_of([&u1, &u2, &zero]),
    )?;
    let covering = FiniteAffineGroup::generate_labeled(&shape, &[r, s.clone()], vec!["r".into(), "s".into()], DEFAULT_ORDER_CAP)?;
    if covering.order() != 16 {
        return Err(FamilyError::InvalidParameters(format!("⟨r, s⟩ has order {}, not 16", covering.order())));
    }
    let w = s.compose(&s);
    let translations = covering.translations();
    if translations.len() != 2 || !translations.contains(&&w) {
        return Err(FamilyError::Consistency("w = s² should be the only nontrivial translation".into()));
    }
    check_free(&covering, &shape)?;
    check_hodge(&covering, 2)?;
    Ok(FamilySetup { tag: FamilyTag::D4, shape, covering, params: [u1, u2, u3], nonisogenous: false })
}

/// X = (E₁×E₂×E₃)/⟨a, b⟩ with a(z) = (−z₁, −z₂, z₃+u₃) and b(z) = (−z₁+u₁, z₂+u₂, −z₃).
pub fn build_z2(u1: FactorPoint, u2: FactorPoint, u3: FactorPoint, nonisogenous: bool) -> Result<FamilySetup, FamilyError> {
    let us = [reduce(&u1), reduce(&u2), reduce(&u3)];
    for (i, u) in us.iter().enumerate() {
        if !is_torsion(u, 2) || is_zero(u) {
            return Err(FamilyError::InvalidParameters(format!("u{} must be a nonzero 2-torsion point", i + 1)));
        }
    }
    let shape = TorusShape::new(&["τ1", "τ2", "τ3"]);
    let zero = fp((0, 1), (0, 1));
    let a = AffineTorusMap::diagonal(&shape, &[-1, -1, 1], translation_of([&zero, &zero, &us[2]]))?;
    let b = AffineTorusMap::diagonal(&shape, &[-1, 1, -1], translation_of([&us[0], &us[1], &zero]))?;
    let covering = FiniteAffineGroup::generate_labeled(&shape, &[a, b], vec!["a".into(), "b".into()], DEFAULT_ORDER_CAP)?;
    if covering.order() != 4 || covering.translations().len() != 1 {
        return Err(FamilyError::Consistency("⟨a, b⟩ should be (Z/2)² without translations".into()));
    }
    check_free(&covering, &shape)?;
    check_hodge(&covering, 3)?;
    Ok(FamilySetup { tag: FamilyTag::Z2Z2, shape, covering, params: us, nonisogenous })
}

pub fn default_d4() -> FamilySetup {
    let [u1, u2, u3] = d4_default_params();
    build_d4(u1, u2, u3).expect("default parameters are valid")
}

pub fn default_z2() -> FamilySetup {
    let [u1, u2, u3] = z2_default_params();
    build_z2(u1, u2, u3, true).expect("default parameters are valid")
}
