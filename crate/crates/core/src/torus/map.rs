use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::ratlin::{solve_affine_mod_lattice, unimodular_inverse, IntMat, Rat, SolutionSet};

use super::point::{TorusPoint, TorusShape};
use super::TorusError;

/// Affine map z ↦ C z + t of a complex torus, stored with both its complex and real linear parts.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "MapRepr", from = "MapRepr")]
pub struct AffineTorusMap {
    real_linear: IntMat,
    translation: TorusPoint,
    complex_linear: IntMat,
}

#[derive(Clone, Serialize, Deserialize)]
struct MapRepr {
    linear: IntMat,
    translation: TorusPoint,
}

impl From<AffineTorusMap> for MapRepr {
    fn from(f: AffineTorusMap) -> MapRepr {
        MapRepr { linear: f.complex_linear, translation: f.translation }
    }
}

impl From<MapRepr> for AffineTorusMap {
    fn from(m: MapRepr) -> AffineTorusMap {
        AffineTorusMap::from_parts(m.linear, m.translation)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum MapOrder {
    Finite(usize),
    Infinite,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum VolumeAction {
    Preserves,
    /// Multiplies ω by the given determinant.
    Scales(i64),
}

impl VolumeAction {
    pub fn preserves(&self) -> bool {
        matches!(self, VolumeAction::Preserves)
    }

    pub fn sign(&self) -> i64 {
        match self {
            VolumeAction::Preserves => 1,
            VolumeAction::Scales(d) => *d,
        }
    }
}

pub const DEFAULT_ORDER_CAP: usize = 512;

impl AffineTorusMap {
    /// Builds the map from an integer complex linear part, rejecting swaps between factors with
    /// different periods.
    pub fn new(shape: &TorusShape, complex_linear: IntMat, translation: TorusPoint) -> Result<AffineTorusMap, TorusError> {
        let n = shape.complex_dim();
        if complex_linear.rows() != n || complex_linear.cols() != n || translation.len() != 2 * n {
            return Err(TorusError::ShapeMismatch(format!(
                "expected {n}x{n} linear part and {} coordinates",
                2 * n
            )));
        }
        for i in 0..n {
            for j in 0..n {
                if !complex_linear.get(i, j).is_zero() && !shape.shares_period(i, j) {
                    return Err(TorusError::SharedPeriod { i: i + 1, j: j + 1 });
                }
            }
        }
        let d = complex_linear.det();
        if d.abs() != BigInt::one() {
            return Err(TorusError::NotInvertible);
        }
        let real_linear = complex_linear.kron_i2();
        Ok(AffineTorusMap { real_linear, translation, complex_linear })
    }

    /// Builds the map without the period check; the caller guarantees the linear part is valid.
    pub fn from_parts(complex_linear: IntMat, translation: TorusPoint) -> AffineTorusMap {
        AffineTorusMap { real_linear: complex_linear.kron_i2(), translation, complex_linear }
    }

    pub fn identity(shape: &TorusShape) -> AffineTorusMap {
        AffineTorusMap::translation(shape, TorusPoint::zero(shape.real_dim()))
    }

    pub fn translation(shape: &TorusShape, t: TorusPoint) -> AffineTorusMap {
        let n = shape.complex_dim();
        AffineTorusMap::new(shape, IntMat::identity(n), t).expect("translations are always valid")
    }

    /// Diagonal complex linear part with the given signs, followed by translation t.
    pub fn diagonal(shape: &TorusShape, signs: &[i64], t: TorusPoint) -> Result<AffineTorusMap, TorusError> {
        AffineTorusMap::new(shape, IntMat::diag(signs), t)
    }

    pub fn complex_linear(&self) -> &IntMat {
        &self.complex_linear
    }

    pub fn real_linear(&self) -> &IntMat {
        &self.real_linear
    }

    pub fn translation_part(&self) -> &TorusPoint {
        &self.translation
    }

    pub fn real_dim(&self) -> usize {
        self.real_linear.rows()
    }

    pub fn is_translation(&self) -> bool {
        self.complex_linear == IntMat::identity(self.complex_linear.rows())
    }

    pub fn is_identity(&self) -> bool {
        self.is_translation() && self.translation.is_zero()
    }

    pub fn apply(&self, x: &[Rat]) -> TorusPoint {
        let y = self.real_linear.mul_rat_vec(x);
        TorusPoint::new(y.iter().zip(self.translation.coords()).map(|(a, b)| a + b).collect())
    }

    /// Points with f(x) = x, as cosets of a subtorus.
    pub fn fixed_points(&self) -> SolutionSet {
        solve_affine_mod_lattice(&self.real_linear, self.translation.coords())
    }

    pub fn has_fixed_point(&self) -> bool {
        !self.fixed_points().is_empty()
    }

    /// (self ∘ g)(x) = self(g(x)).
    pub fn compose(&self, g: &AffineTorusMap) -> AffineTorusMap {
        let t = self.real_linear.mul_rat_vec(g.translation.coords());
        let t = TorusPoint::new(t.iter().zip(self.translation.coords()).map(|(a, b)| a + b).collect());
        AffineTorusMap {
            real_linear: self.real_linear.dot(&g.real_linear),
            translation: t,
            complex_linear: self.complex_linear.dot(&g.complex_linear),
        }
    }

    pub fn inverse(&self) -> AffineTorusMap {
        let ci = unimodular_inverse(&self.complex_linear);
        let ri = ci.kron_i2();
        let t = ri.mul_rat_vec(self.translation.coords());
        AffineTorusMap { real_linear: ri, translation: TorusPoint::new(t.iter().map(|x| -x).collect()), complex_linear: ci }
    }

    /// g ∘ self ∘ g⁻¹.
    pub fn conjugate_by(&self, g: &AffineTorusMap) -> AffineTorusMap {
        g.compose(self).compose(&g.inverse())
    }

    pub fn pow(&self, k: usize) -> AffineTorusMap {
        let n = self.complex_linear.rows();
        let mut acc = AffineTorusMap {
            real_linear: IntMat::identity(2 * n),
            translation: TorusPoint::zero(2 * n),
            complex_linear: IntMat::identity(n),
        };
        for _ in 0..k {
            acc = acc.compose(self);
        }
        acc
    }

    pub fn order_with_cap(&self, cap: usize) -> MapOrder {
        let mut acc = self.clone();
        for k in 1..=cap {
            if acc.is_identity() {
                return MapOrder::Finite(k);
            }
            acc = acc.compose(self);
        }
        MapOrder::Infinite
    }

    pub fn order(&self) -> MapOrder {
        self.order_with_cap(DEFAULT_ORDER_CAP)
    }

    /// Action on dz₁∧…∧dzₙ, the determinant of the complex linear part.
    pub fn volume_form_action(&self) -> VolumeAction {
        let d = self.complex_linear.det();
        if d.is_one() {
            VolumeAction::Preserves
        } else {
            VolumeAction::Scales(num_traits::ToPrimitive::to_i64(&d).expect("determinant is ±1"))
        }
    }

    /// Age of an involution at a fixed point: half the number of -1 eigenvalues of the linear part.
    pub fn age_at_fixed_point(&self) -> Result<Rat, TorusError> {
        match self.order() {
            MapOrder::Finite(1) => return Ok(Rat::zero()),
            MapOrder::Finite(2) => {}
            _ => return Err(TorusError::Unsupported("age is only defined here for involutions".into())),
        }
        let c = &self.complex_linear;
        let n = c.rows();
        // C² = I, so the -1 eigenspace has dimension (n - tr C) / 2
        if c.dot(c) != IntMat::identity(n) {
            return Err(TorusError::Unsupported("linear part is not an involution".into()));
        }
        let minus = (BigInt::from(n as i64) - c.trace()) / BigInt::from(2);
        Ok(Rat::new(minus, 2))
    }

    /// Map literal in the form `(z2, -z1, z3 + 1/4)`.
    pub fn to_dsl(&self, shape: &TorusShape) -> String {
        let n = shape.complex_dim();
        let mut parts = Vec::with_capacity(n);
        for i in 0..n {
            let mut s = String::new();
            for j in 0..n {
                let c = self.complex_linear.get(i, j);
                if c.is_zero() {
                    continue;
                }
                let mag = c.abs();
                let coef = if mag.is_one() { String::new() } else { format!("{mag}*") };
                if s.is_empty() {
                    if c.is_negative() {
                        s.push('-');
                    }
                } else {
                    s.push_str(if c.is_negative() { " - " } else { " + " });
                }
                s.push_str(&format!("{coef}z{}", j + 1));
            }
            let (a, b) = self.translation.factor(i);
            if !(a.is_zero() && b.is_zero()) {
                let e = super::point::format_epoint(a, b, &shape.periods[i]);
                s.push_str(&format!(" + {e}"));
            }
            parts.push(s);
        }
        format!("({})", parts.join(", "))
    }
}

impl fmt::Debug for AffineTorusMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "AffineTorusMap {{ linear: {:?}, translation: {:?} }}", self.complex_linear.to_rows(), self.translation)
    }
}
