//! Exact integer and rational linear algebra: Hermite and Smith forms, sublattices of Z^m, and
//! affine congruences on the real torus R^m / Z^m.

mod intmat;
mod lattice;
mod normal_form;
mod rat;
mod solve;

pub use intmat::IntMat;
pub use lattice::{coords_in_basis, from_coords, Sublattice};
pub use normal_form::{ext_gcd, hnf, hnf_rows, invariant_factors, kernel_basis, rank, snf, unimodular_inverse};
pub use rat::{common_denominator, ParseRatError, Rat};
pub use solve::{integer_solution, rational_solvable, solve_affine_mod_lattice, SolutionSet};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LinError {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
}
