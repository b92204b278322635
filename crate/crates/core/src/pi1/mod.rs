//! Fundamental groups of quotients C^n / Γ for crystallographic Γ, via the subgroup F_Γ
//! generated by elements with fixed points.

mod crystal;
mod fgamma;
mod finite;
mod quotient;

pub use crystal::{build_gamma, has_fixed_point, AffineElement, CrystalGroup};
pub use fgamma::{f_gamma, FGamma, FixedCoset};
pub use finite::{abelian_label, FiniteGroup};
pub use quotient::{abelian_invariants_u64, abelianization, classify_universal_cover, pi1_quotient, CoverClass, Pi1Descriptor};

use crate::families::{AutGroupDescription, AutSubgroup, FamilySetup};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Pi1Error {
    #[error("consistency failure: {0}")]
    Consistency(String),
}

/// π₁(X/Υ) in one call.
pub fn pi1_of_quotient(setup: &FamilySetup, aut: &AutGroupDescription, upsilon: &AutSubgroup) -> Result<Pi1Descriptor, Pi1Error> {
    let gamma = build_gamma(setup, aut, upsilon)?;
    let fg = f_gamma(&gamma)?;
    pi1_quotient(&gamma, &fg)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{automorphism_group, default_d4, default_z2};
    use crate::torus::{AffineTorusMap, TorusPoint};

    fn d4_translation(fracs: [(i64, i64); 6]) -> (FamilySetup, AutGroupDescription, AutSubgroup) {
        let f = default_d4();
        let aut = automorphism_group(&f);
        let a = AffineTorusMap::translation(&f.shape, TorusPoint::from_fracs(&fracs));
        let u = aut.subgroup_of_maps(&[a]).unwrap();
        (f, aut, u)
    }

    #[test]
    fn abelianization_of_x() {
        let f = default_d4();
        let aut = automorphism_group(&f);
        let g = build_gamma(&f, &aut, &aut.subgroup(&[])).unwrap();
        assert_eq!(abelian_invariants_u64(&g, None), (0, vec![2, 4, 4]));
        let d = pi1_of_quotient(&f, &aut, &aut.subgroup(&[])).unwrap();
        assert!(!d.finite);
        assert_eq!(d.cover_class, CoverClass::TypeA);
    }

    #[test]
    fn z2_x_is_abelian() {
        let f = default_z2();
        let aut = automorphism_group(&f);
        let g = build_gamma(&f, &aut, &aut.subgroup(&[])).unwrap();
        let (free, _) = abelianization(&g, None);
        assert_eq!(free, 0);
    }

    #[test]
    fn t3_half_gives_k3_type() {
        let (f, aut, u) = d4_translation([(0, 1), (0, 1), (0, 1), (0, 1), (1, 2), (0, 1)]);
        let d = pi1_of_quotient(&f, &aut, &u).unwrap();
        assert_eq!(d.lattice_rank, Some(2));
        assert_eq!(d.lattice_label.as_deref(), Some("Λ3‴"));
        assert_eq!(d.point_quotient.as_deref(), Some("Z/2×Z/2"));
        assert_eq!(d.cover_class, CoverClass::TypeK);
    }

    #[test]
    fn finite_examples() {
        // (τ/2, (τ+1)/2, 1/2)
        let (f, aut, u) = d4_translation([(0, 1), (1, 2), (1, 2), (1, 2), (1, 2), (0, 1)]);
        let d = pi1_of_quotient(&f, &aut, &u).unwrap();
        assert_eq!(d.label, "{0}");
        // (τ/2, τ/2, 0)
        let (f, aut, u) = d4_translation([(0, 1), (1, 2), (0, 1), (1, 2), (0, 1), (0, 1)]);
        let d = pi1_of_quotient(&f, &aut, &u).unwrap();
        assert_eq!(d.label, "Z/2×Z/4");
        assert_eq!(d.cover_class, CoverClass::Finite);
    }

    #[test]
    fn free_translation_keeps_full_lattice() {
        let (f, aut, u) = d4_translation([(0, 1), (0, 1), (0, 1), (0, 1), (0, 1), (1, 2)]);
        let d = pi1_of_quotient(&f, &aut, &u).unwrap();
        assert_eq!(d.lattice_label.as_deref(), Some("Λ1⊕Λ2⊕Λ3′"));
        assert_eq!(d.point_quotient.as_deref(), Some("D4"));
        let (f, aut, u) = d4_translation([(0, 1), (0, 1), (0, 1), (0, 1), (1, 2), (1, 2)]);
        let d = pi1_of_quotient(&f, &aut, &u).unwrap();
        assert_eq!(d.lattice_label.as_deref(), Some("Λ1⊕Λ2⊕Λ3″"));
    }
}
