use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::ratlin::IntMat;
use crate::torus::FiniteAffineGroup;

use super::InvariantsError;

/// The part of a threefold Hodge diamond that is not fixed by symmetry.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct HodgeDiamondSlice {
    pub h10: i64,
    pub h20: i64,
    pub h30: i64,
    pub h11: i64,
    pub h21: i64,
}

impl HodgeDiamondSlice {
    pub fn calabi_yau(h11: i64, h21: i64) -> HodgeDiamondSlice {
        HodgeDiamondSlice { h10: 0, h20: 0, h30: 1, h11, h21 }
    }

    pub fn euler(&self) -> i64 {
        euler_char(self)
    }
}

/// e = 2 Σ_{p,q} ... for a compact Kähler threefold, written in the five independent numbers.
pub fn euler_char(h: &HodgeDiamondSlice) -> i64 {
    2 - 4 * h.h10 + 4 * h.h20 - 2 * h.h30 + 2 * h.h11 - 2 * h.h21
}

/// Trace of the p-th exterior power: the sum of principal p×p minors.
pub fn exterior_trace(c: &IntMat, p: usize) -> BigInt {
    let n = c.rows();
    if p == 0 {
        return BigInt::from(1);
    }
    if p > n {
        return BigInt::zero();
    }
    let mut total = BigInt::zero();
    let mut idx: Vec<usize> = (0..p).collect();
    loop {
        total += c.minor(&idx, &idx).det();
        // next p-subset of 0..n in lexicographic order
        let mut i = p;
        loop {
            if i == 0 {
                return total;
            }
            i -= 1;
            if idx[i] < n - p + i {
                break;
            }
        }
        idx[i] += 1;
        for j in i + 1..p {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// dim H^{p,q}(A)^G by averaging tr Λ^p(C_g) · tr Λ^q(C̄_g) over the group.
///
/// The complex linear parts are integer matrices, so conjugation leaves the traces unchanged.
pub fn invariant_hodge(group: &FiniteAffineGroup, p: usize, q: usize) -> Result<i64, InvariantsError> {
    let n = group.shape().complex_dim();
    if p > n || q > n {
        return Err(InvariantsError::Consistency(format!("h^{p},{q} is out of range for dimension {n}")));
    }
    let mut sum = BigInt::zero();
    for g in group.elements() {
        let c = g.complex_linear();
        sum += exterior_trace(c, p) * exterior_trace(c, q);
    }
    let order = BigInt::from(group.order());
    let (quot, rem) = sum.div_rem(&order);
    if !rem.is_zero() {
        return Err(InvariantsError::Consistency(format!("character sum {sum} is not divisible by |G| = {order}")));
    }
    Ok(quot.to_i64().expect("small"))
}
