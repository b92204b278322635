use std::collections::BTreeSet;

use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize, Serializer};

use crate::families::{AutGroupDescription, AutSubgroup, FamilySetup, FamilyTag};
use crate::fixloc::{fixed_locus_in_quotient, fixed_locus_upstairs, identify_under_group, surface_fixing_profile, FixedComponent};
use crate::pi1::{abelianization, pi1_of_quotient, CrystalGroup, Pi1Descriptor};
use crate::ratlin::Rat;

use super::hodge::{invariant_hodge, HodgeDiamondSlice};
use super::InvariantsError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum QuotientClass {
    CrepantCalabiYau,
    NegativeKodaira,
    ZeroKodairaNontrivialCanonical,
    SmoothFreeQuotient,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PicardStructure {
    pub rank: i64,
    pub torsion: Vec<u64>,
}

/// Orbifold Hodge numbers of X/Υ with the pieces they are assembled from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbifoldHodge {
    pub hodge: HodgeDiamondSlice,
    /// Σ over nontrivial volume-preserving υ of |Fix(υ)/Υ|.
    pub twisted_sum: i64,
    /// Isolated points of the non-volume-preserving part, counted directly.
    pub isolated_points: Option<i64>,
    /// 2^{|Υ|+2}/(|Υ|−1), reported next to the direct count.
    pub closed_form_points: Option<Rat>,
}

#[derive(Clone, Debug)]
pub struct QuotientReport {
    pub class: QuotientClass,
    pub hodge: HodgeDiamondSlice,
    pub euler: i64,
    pub pi1: Pi1Descriptor,
    pub picard: PicardStructure,
    pub isolated_points: Option<i64>,
    pub closed_form_points: Option<Rat>,
}

impl Serialize for QuotientReport {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct View<'a> {
            class: &'a QuotientClass,
            h11: i64,
            h21: i64,
            euler: i64,
            pi1: &'a Pi1Descriptor,
            picard: &'a PicardStructure,
        }
        View { class: &self.class, h11: self.hodge.h11, h21: self.hodge.h21, euler: self.euler, pi1: &self.pi1, picard: &self.picard }
            .serialize(s)
    }
}

fn base_h11(setup: &FamilySetup) -> i64 {
    match setup.tag {
        FamilyTag::D4 => 2,
        FamilyTag::Z2Z2 => 3,
    }
}

fn fixloc_err(e: crate::fixloc::FixlocError) -> InvariantsError {
    InvariantsError::Consistency(e.to_string())
}

/// |γ(Π)|: isolated points fixed by the non-volume-preserving elements of Υ, up to Υ.
pub fn isolated_point_count(setup: &FamilySetup, aut: &AutGroupDescription, upsilon: &AutSubgroup) -> Result<i64, InvariantsError> {
    if setup.tag != FamilyTag::Z2Z2 {
        return Err(InvariantsError::Unsupported("isolated points are only counted for the (Z/2)² family".into()));
    }
    if upsilon.volume_preserving(aut) {
        return Err(InvariantsError::Unsupported("Υ preserves the volume form".into()));
    }
    let mut points: BTreeSet<FixedComponent> = BTreeSet::new();
    for i in upsilon.nontrivial(aut).filter(|&i| !aut.classes[i].volume_preserving) {
        points.extend(fixed_locus_upstairs(&aut.classes[i].rep, &setup.covering).into_iter().filter(|c| c.dim_complex() == 0));
    }
    let points: Vec<FixedComponent> = points.into_iter().collect();
    let mut gens = setup.covering.generators().to_vec();
    gens.extend(upsilon.lifts(aut));
    Ok(identify_under_group(&points, &gens).map_err(fixloc_err)?.len() as i64)
}

pub fn closed_form_points(upsilon_order: usize) -> Option<Rat> {
    (upsilon_order > 1).then(|| Rat::frac(1 << (upsilon_order + 2), upsilon_order as i64 - 1))
}

pub fn orbifold_hodge(setup: &FamilySetup, aut: &AutGroupDescription, upsilon: &AutSubgroup) -> Result<OrbifoldHodge, InvariantsError> {
    let lifts = upsilon.lifts(aut);
    let mut sum = 0i64;
    for i in upsilon.nontrivial(aut).filter(|&i| aut.classes[i].volume_preserving) {
        sum += fixed_locus_in_quotient(&aut.classes[i].rep, setup, &lifts).map_err(fixloc_err)?.upsilon_orbit_count as i64;
    }
    let base = base_h11(setup);
    if upsilon.volume_preserving(aut) {
        return Ok(OrbifoldHodge {
            hodge: HodgeDiamondSlice::calabi_yau(base + sum, base + sum),
            twisted_sum: sum,
            isolated_points: None,
            closed_form_points: None,
        });
    }
    let p = isolated_point_count(setup, aut, upsilon)?;
    Ok(OrbifoldHodge {
        hodge: HodgeDiamondSlice { h10: 0, h20: 0, h30: 0, h11: base + sum + p, h21: sum + p },
        twisted_sum: sum,
        isolated_points: Some(p),
        closed_form_points: closed_form_points(upsilon.order()),
    })
}

/// (rank, torsion) of Pic(X): rank h¹¹(X), torsion that of Ab(π₁(X)).
pub fn picard_structure(setup: &FamilySetup) -> Result<PicardStructure, InvariantsError> {
    let rank = invariant_hodge(&setup.covering, 1, 1)?;
    let gamma = CrystalGroup::from_generators(setup, &[], Some(setup.covering.order()))
        .map_err(|e| InvariantsError::Consistency(e.to_string()))?;
    let (_, torsion) = abelianization(&gamma, None);
    Ok(PicardStructure { rank, torsion: torsion.iter().map(|d| d.to_u64().expect("small")).collect() })
}

pub fn quotient_class(setup: &FamilySetup, aut: &AutGroupDescription, upsilon: &AutSubgroup) -> QuotientClass {
    if upsilon.nontrivial(aut).all(|i| aut.classes[i].free) {
        return QuotientClass::SmoothFreeQuotient;
    }
    if setup.tag == FamilyTag::D4 || upsilon.volume_preserving(aut) {
        return QuotientClass::CrepantCalabiYau;
    }
    let fixes_surfaces = upsilon
        .nontrivial(aut)
        .filter(|&i| !aut.classes[i].volume_preserving)
        .any(|i| surface_fixing_profile(&aut.classes[i].rep, setup).fixes_surfaces);
    if fixes_surfaces {
        QuotientClass::NegativeKodaira
    } else {
        QuotientClass::ZeroKodairaNontrivialCanonical
    }
}

/// Birational type, Hodge numbers, π₁ and Picard structure of the resolution of X/Υ.
pub fn classify_quotient(setup: &FamilySetup, aut: &AutGroupDescription, upsilon: &AutSubgroup) -> Result<QuotientReport, InvariantsError> {
    let oh = orbifold_hodge(setup, aut, upsilon)?;
    let pi1 = pi1_of_quotient(setup, aut, upsilon).map_err(|e| InvariantsError::Consistency(e.to_string()))?;
    let class = quotient_class(setup, aut, upsilon);
    if matches!(class, QuotientClass::CrepantCalabiYau | QuotientClass::SmoothFreeQuotient) && oh.hodge.h30 != 1 {
        return Err(InvariantsError::Consistency("Calabi-Yau quotient without a holomorphic volume form".into()));
    }
    Ok(QuotientReport {
        class,
        euler: oh.hodge.euler(),
        picard: PicardStructure { rank: oh.hodge.h11, torsion: pi1.abelian_invariants.clone() },
        hodge: oh.hodge,
        pi1,
        isolated_points: oh.isolated_points,
        closed_form_points: oh.closed_form_points,
    })
}
