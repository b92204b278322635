use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::ratlin::Rat;
use crate::torus::{parse_epoint, FiniteAffineGroup};

use super::{FamilyError, FamilySetup, FamilyTag};

/// Dimension of the space of G-equivariant complex structures: Σ_χ n_χ² over the constituents of
/// the complex representation, computed as (1/|G|) Σ_g tr(C_g)².
///
/// This equals the Grassmannian count for real characters, which are the only ones occurring here.
pub fn moduli_dimension_of(group: &FiniteAffineGroup) -> i64 {
    let mut sum = BigInt::zero();
    for g in group.elements() {
        let t = g.complex_linear().trace();
        sum += &t * &t;
    }
    let (q, r) = sum.div_rem(&BigInt::from(group.order()));
    assert!(r.is_zero(), "character norm must be an integer");
    q.to_i64().expect("small")
}

pub fn moduli_dimension(setup: &FamilySetup) -> i64 {
    moduli_dimension_of(&setup.covering)
}

/// A point (μ, aμ′ + b) of the D4 moduli space, with the second period kept symbolic.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ModuliLabel {
    pub family: FamilyTag,
    pub coef: Rat,
    pub constant: Rat,
}

impl ModuliLabel {
    pub fn generic(family: FamilyTag) -> ModuliLabel {
        ModuliLabel { family, coef: Rat::one(), constant: Rat::zero() }
    }

    /// Equal up to an integer shift of the second period.
    pub fn equivalent(&self, o: &ModuliLabel) -> bool {
        self.family == o.family && self.coef == o.coef && (&self.constant - &o.constant).is_integer()
    }
}

fn require_d4(m: &ModuliLabel) -> Result<(), FamilyError> {
    if m.family != FamilyTag::D4 {
        return Err(FamilyError::Unsupported("the degree-two moduli map is defined for the D4 family".into()));
    }
    Ok(())
}

/// (μ, μ′) ↦ (μ, 2μ′).
pub fn double_cover_map(m: &ModuliLabel) -> Result<ModuliLabel, FamilyError> {
    require_d4(m)?;
    let two = BigInt::from(2);
    Ok(ModuliLabel { family: m.family, coef: m.coef.mul_int(&two), constant: m.constant.mul_int(&two) })
}

/// The two labels sent to `m`: (μ, μ′/2) and (μ, μ′/2 + 1/2).
pub fn preimages(m: &ModuliLabel) -> Result<(ModuliLabel, ModuliLabel), FamilyError> {
    require_d4(m)?;
    let two = BigInt::from(2);
    let coef = m.coef.div_int(&two);
    let half = m.constant.div_int(&two);
    Ok((
        ModuliLabel { family: m.family, coef: coef.clone(), constant: half.clone() },
        ModuliLabel { family: m.family, coef, constant: &half + &Rat::frac(1, 2) },
    ))
}

impl fmt::Display for ModuliLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d = crate::ratlin::common_denominator(&[self.coef.clone(), self.constant.clone()]);
        let a = self.coef.mul_int(&d).to_integer().expect("integral");
        let b = self.constant.mul_int(&d).to_integer().expect("integral");
        let mut num = match () {
            _ if a.is_zero() => String::new(),
            _ if a.is_one() => "mu'".to_string(),
            _ if a == -BigInt::one() => "-mu'".to_string(),
            _ => format!("{a}*mu'"),
        };
        if !b.is_zero() || num.is_empty() {
            if num.is_empty() {
                num = b.to_string();
            } else if b.is_negative() {
                num = format!("{num}{b}");
            } else {
                num = format!("{num}+{b}");
            }
        }
        if d.is_one() {
            write!(f, "(mu, {num})")
        } else if !a.is_zero() && !b.is_zero() {
            write!(f, "(mu, ({num})/{d})")
        } else {
            write!(f, "(mu, {num}/{d})")
        }
    }
}

impl FromStr for ModuliLabel {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        let inner = s.trim().strip_prefix('(').and_then(|x| x.strip_suffix(')')).ok_or("expected (mu, ...)")?;
        let (first, second) = inner.split_once(',').ok_or("expected two entries")?;
        if first.trim() != "mu" {
            return Err("first entry must be mu".into());
        }
        let expr = second.trim().replace("mu'", "tau");
        let (constant, coef) = parse_epoint(&expr, "τ").map_err(|e| e.to_string())?;
        Ok(ModuliLabel { family: FamilyTag::D4, coef, constant })
    }
}

impl Serialize for ModuliLabel {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for ModuliLabel {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{default_d4, default_z2};
    use crate::torus::TorusShape;

    #[test]
    fn dimensions() {
        assert_eq!(moduli_dimension(&default_d4()), 2);
        assert_eq!(moduli_dimension(&default_z2()), 3);
        let sh = TorusShape::new(&["τ"]);
        assert_eq!(moduli_dimension_of(&FiniteAffineGroup::trivial(&sh)), 1);
    }

    #[test]
    fn degree_two_map() {
        let m = ModuliLabel::generic(FamilyTag::D4);
        assert_eq!(double_cover_map(&m).unwrap().to_string(), "(mu, 2*mu')");
        let (p, q) = preimages(&m).unwrap();
        assert_eq!(p.to_string(), "(mu, mu'/2)");
        assert_eq!(q.to_string(), "(mu, (mu'+1)/2)");
        assert!(double_cover_map(&p).unwrap().equivalent(&m));
        assert!(double_cover_map(&q).unwrap().equivalent(&m));
        assert!(double_cover_map(&ModuliLabel::generic(FamilyTag::Z2Z2)).is_err());
    }

    #[test]
    fn label_round_trip() {
        let (_, q) = preimages(&ModuliLabel::generic(FamilyTag::D4)).unwrap();
        let back: ModuliLabel = q.to_string().parse().unwrap();
        assert_eq!(back, q);
        let j = serde_json::to_string(&q).unwrap();
        assert_eq!(j, "\"(mu, (mu'+1)/2)\"");
    }
}
