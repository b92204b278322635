//! Hodge numbers, Euler characteristics, Picard groups and the birational type of quotients.

mod hodge;
mod orbifold;

pub use hodge::{euler_char, exterior_trace, invariant_hodge, HodgeDiamondSlice};
pub use orbifold::{
    classify_quotient, closed_form_points, isolated_point_count, orbifold_hodge, picard_structure, quotient_class, OrbifoldHodge,
    PicardStructure, QuotientClass, QuotientReport,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum InvariantsError {
    #[error("consistency failure: {0}")]
    Consistency(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
}
