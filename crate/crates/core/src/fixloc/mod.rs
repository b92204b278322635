//! Fixed loci of automorphisms of a free quotient A/H, computed upstairs on the torus A.

mod component;
mod engine;
mod grid;
mod labels;

use serde::Serialize;

use crate::families::FamilySetup;
use crate::torus::AffineTorusMap;

pub use component::{FixedComponent, Witness};
pub use engine::{fixed_locus_upstairs, identify_under_group, Orbit};
pub use grid::{brute_force_fixed_grid, solver_grid_points, verify_against_grid, GridCheck, GridPoints};
pub use labels::{curve_label, fixed_locus_table, CurveLabel, FixedLocusRow};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FixlocError {
    #[error("bad grid: {0}")]
    BadGrid(String),
    #[error("consistency failure: {0}")]
    Consistency(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
}

/// Number of fixed components by complex dimension 0, 1, 2 (and 3 for the identity).
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct DimensionProfile {
    pub points: usize,
    pub curves: usize,
    pub surfaces: usize,
    pub threefolds: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SurfaceFixingProfile {
    pub fixes_surfaces: bool,
    pub fixes_curves: bool,
    pub fixes_points: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct FixedLocusReport {
    pub label: String,
    pub components: Vec<FixedComponent>,
    /// Labels of the H-orbits, one per component of Fix(α_X).
    pub orbit_labels: Vec<String>,
    pub h_orbit_count: usize,
    pub upsilon_orbit_count: usize,
    /// Counted on H-orbits.
    pub profile: DimensionProfile,
}

/// Human-readable name of an automorphism lift.
pub fn class_label(alpha: &AffineTorusMap, setup: &FamilySetup) -> String {
    if alpha.is_translation() {
        alpha.translation_part().render(&setup.shape)
    } else {
        alpha.to_dsl(&setup.shape)
    }
}

fn profile_of(components: &[FixedComponent], orbits: &[Orbit]) -> DimensionProfile {
    let mut p = DimensionProfile::default();
    for o in orbits {
        match components[o.rep()].dim_complex() {
            0 => p.points += 1,
            1 => p.curves += 1,
            2 => p.surfaces += 1,
            _ => p.threefolds += 1,
        }
    }
    p
}

/// Fix(α_X) for α a lift of an automorphism of X = A/H, identified under H and then under
/// the group generated by H and `upsilon_lifts`.
pub fn fixed_locus_in_quotient(
    alpha: &AffineTorusMap,
    setup: &FamilySetup,
    upsilon_lifts: &[AffineTorusMap],
) -> Result<FixedLocusReport, FixlocError> {
    let components = fixed_locus_upstairs(alpha, &setup.covering);
    let h_gens = setup.covering.generators();
    let h_orbits = identify_under_group(&components, h_gens)?;
    let mut all = h_gens.to_vec();
    all.extend_from_slice(upsilon_lifts);
    let u_orbits = identify_under_group(&components, &all)?;
    let t = alpha.translation_part();
    let mut labels: Vec<_> = h_orbits
        .iter()
        .filter_map(|o| {
            o.members.iter().map(|&i| curve_label(&components[i], setup, alpha.is_translation().then_some(t))).min()
        })
        .collect();
    labels.sort();
    let orbit_labels = labels.into_iter().map(|l| l.text).collect();
    Ok(FixedLocusReport {
        label: class_label(alpha, setup),
        profile: profile_of(&components, &h_orbits),
        h_orbit_count: h_orbits.len(),
        upsilon_orbit_count: u_orbits.len(),
        orbit_labels,
        components,
    })
}

/// Whether the induced automorphism of X acts without fixed points.
pub fn is_free(alpha: &AffineTorusMap, setup: &FamilySetup) -> bool {
    setup.covering.elements().iter().all(|h| !h.inverse().compose(alpha).has_fixed_point())
}

pub fn surface_fixing_profile(alpha: &AffineTorusMap, setup: &FamilySetup) -> SurfaceFixingProfile {
    let comps = fixed_locus_upstairs(alpha, &setup.covering);
    let has = |d: usize| comps.iter().any(|c| c.dim_complex() == d);
    SurfaceFixingProfile { fixes_surfaces: has(2) || has(3), fixes_curves: has(1), fixes_points: has(0) }
}
