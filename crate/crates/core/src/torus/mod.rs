//! Complex tori in lattice coordinates: torsion points, affine automorphisms and the finite groups
//! they generate.

mod dsl;
mod group;
mod map;
mod point;

pub use dsl::parse_map;
pub use group::FiniteAffineGroup;
pub use map::{AffineTorusMap, MapOrder, VolumeAction, DEFAULT_ORDER_CAP};
pub use point::{canonical_period, format_epoint, parse_epoint, TorusPoint, TorusShape};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TorusError {
    #[error("linear part mixes factors {i} and {j}, which do not share a period")]
    SharedPeriod { i: usize, j: usize },
    #[error("linear part is not invertible over Z")]
    NotInvertible,
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("group exceeds {cap} elements")]
    NotFiniteUnderCap { cap: usize },
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("cannot parse `{input}` at column {column}: {message}")]
    Parse { input: String, column: usize, message: String },
}
