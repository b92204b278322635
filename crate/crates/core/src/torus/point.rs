use std::fmt;

use serde::{Deserialize, Serialize};

use crate::ratlin::Rat;

use super::TorusError;

/// Complex torus C^n / (Z + τ_1 Z) x ... x (Z + τ_n Z) with symbolic periods.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TorusShape {
    /// Period tag per complex factor; equal tags mean equal lattices.
    pub periods: Vec<String>,
    /// Standing assumption that no factor has complex multiplication by Q(ζ₆); recorded, not used.
    pub no_zeta6_multiplication: bool,
}

impl TorusShape {
    pub fn new(periods: &[&str]) -> TorusShape {
        TorusShape { periods: periods.iter().map(|p| canonical_period(p)).collect(), no_zeta6_multiplication: true }
    }

    pub fn complex_dim(&self) -> usize {
        self.periods.len()
    }

    pub fn real_dim(&self) -> usize {
        2 * self.periods.len()
    }

    pub fn shares_period(&self, i: usize, j: usize) -> bool {
        self.periods[i] == self.periods[j]
    }
}

/// Normalizes spellings such as `tau'`, `τ'` or `tau1` to `τ′`, `τ1`.
pub fn canonical_period(p: &str) -> String {
    let p = p.trim();
    let rest = p.strip_prefix("tau").or_else(|| p.strip_prefix('τ')).unwrap_or(p);
    let rest = rest.replace('\'', "′");
    format!("τ{rest}")
}

/// A point of the real torus (R/Z)^{2n}, coordinates ordered (real part, period part) per factor.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(from = "Vec<Rat>", into = "Vec<Rat>")]
pub struct TorusPoint {
    coords: Vec<Rat>,
}

impl TorusPoint {
    pub fn new(coords: Vec<Rat>) -> TorusPoint {
        TorusPoint { coords: coords.into_iter().map(|x| x.frac_part()).collect() }
    }

    pub fn zero(real_dim: usize) -> TorusPoint {
        TorusPoint { coords: vec![Rat::zero(); real_dim] }
    }

    pub fn from_fracs(c: &[(i64, i64)]) -> TorusPoint {
        TorusPoint::new(c.iter().map(|&(p, q)| Rat::frac(p, q)).collect())
    }

    pub fn coords(&self) -> &[Rat] {
        &self.coords
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|x| x.is_zero())
    }

    /// Point of the i-th factor as (real coefficient, period coefficient).
    pub fn factor(&self, i: usize) -> (&Rat, &Rat) {
        (&self.coords[2 * i], &self.coords[2 * i + 1])
    }

    pub fn add(&self, o: &TorusPoint) -> TorusPoint {
        TorusPoint::new(self.coords.iter().zip(&o.coords).map(|(a, b)| a + b).collect())
    }

    pub fn neg(&self) -> TorusPoint {
        TorusPoint::new(self.coords.iter().map(|a| -a).collect())
    }

    pub fn scale(&self, k: i64) -> TorusPoint {
        TorusPoint::new(self.coords.iter().map(|a| a * &Rat::int(k)).collect())
    }

    /// Smallest k > 0 with k * p = 0.
    pub fn torsion_order(&self) -> num_bigint::BigInt {
        crate::ratlin::common_denominator(&self.coords)
    }

    /// Renders each factor as an expression like `(τ+1)/2` or `3/8+τ′/2`.
    pub fn render(&self, shape: &TorusShape) -> String {
        let parts: Vec<String> =
            (0..self.len() / 2).map(|i| format_epoint(&self.coords[2 * i], &self.coords[2 * i + 1], &shape.periods[i])).collect();
        format!("({})", parts.join(", "))
    }
}

impl From<Vec<Rat>> for TorusPoint {
    fn from(v: Vec<Rat>) -> TorusPoint {
        TorusPoint::new(v)
    }
}

impl From<TorusPoint> for Vec<Rat> {
    fn from(p: TorusPoint) -> Vec<Rat> {
        p.coords
    }
}

impl fmt::Debug for TorusPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c: Vec<String> = self.coords.iter().map(|x| x.to_string()).collect();
        write!(f, "[{}]", c.join(", "))
    }
}

/// Formats a + bτ. Equal denominators are combined as `(kτ+m)/d`.
pub fn format_epoint(a: &Rat, b: &Rat, tag: &str) -> String {
    let per = |b: &Rat| -> String {
        let n = b.numer();
        let d = b.denom();
        let coef = if n == &num_bigint::BigInt::from(1) { String::new() } else if n == &num_bigint::BigInt::from(-1) { "-".into() } else { n.to_string() };
        if d == &num_bigint::BigInt::from(1) {
            format!("{coef}{tag}")
        } else {
            format!("{coef}{tag}/{d}")
        }
    };
    match (a.is_zero(), b.is_zero()) {
        (true, true) => "0".into(),
        (false, true) => a.to_string(),
        (true, false) => per(b),
        (false, false) => {
            if a.denom() == b.denom() && a.denom() != &num_bigint::BigInt::from(1) {
                let bn = b.numer();
                let coef = if bn == &num_bigint::BigInt::from(1) { String::new() } else { bn.to_string() };
                let an = a.numer();
                let sign = if an.sign() == num_bigint::Sign::Minus { "" } else { "+" };
                format!("({coef}{tag}{sign}{an})/{}", a.denom())
            } else {
                format!("{}+{}", a, per(b))
            }
        }
    }
}

/// Parses an expression such as `(tau+1)/2`, `3/8 + tau'/2` or `1/4` into (a, b) with value a + bτ.
///
/// Any period symbol must match `tag` after normalization.
pub fn parse_epoint(s: &str, tag: &str) -> Result<(Rat, Rat), TorusError> {
    let mut p = EParser { chars: s.chars().collect(), pos: 0, tag: canonical_period(tag), src: s.to_string() };
    let v = p.expr()?;
    p.skip_ws();
    if p.pos != p.chars.len() {
        return Err(p.err("trailing input"));
    }
    Ok(v)
}

struct EParser {
    chars: Vec<char>,
    pos: usize,
    tag: String,
    src: String,
}

impl EParser {
    fn err(&self, msg: &str) -> TorusError {
        TorusError::Parse { input: self.src.clone(), column: self.pos + 1, message: msg.to_string() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<(Rat, Rat), TorusError> {
        let mut acc = self.term()?;
        while let Some(c) = self.peek() {
            if c == '+' || c == '-' {
                self.pos += 1;
                let t = self.term()?;
                acc = if c == '+' { (&acc.0 + &t.0, &acc.1 + &t.1) } else { (&acc.0 - &t.0, &acc.1 - &t.1) };
            } else {
                break;
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<(Rat, Rat), TorusError> {
        let mut acc = self.unary()?;
        while let Some(c) = self.peek() {
            if c == '*' || c == '/' {
                self.pos += 1;
                let f = self.unary()?;
                if c == '*' {
                    acc = if f.1.is_zero() {
                        (&acc.0 * &f.0, &acc.1 * &f.0)
                    } else if acc.1.is_zero() {
                        (&f.0 * &acc.0, &f.1 * &acc.0)
                    } else {
                        return Err(self.err("product of two period terms"));
                    };
                } else {
                    if !f.1.is_zero() || f.0.is_zero() {
                        return Err(self.err("division by a period or by zero"));
                    }
                    acc = (&acc.0 / &f.0, &acc.1 / &f.0);
                }
            } else {
                break;
            }
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<(Rat, Rat), TorusError> {
        if self.peek() == Some('-') {
            self.pos += 1;
            let (a, b) = self.unary()?;
            return Ok((-a, -b));
        }
        self.atom()
    }

    fn atom(&mut self) -> Result<(Rat, Rat), TorusError> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let v = self.expr()?;
                if self.peek() != Some(')') {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                Ok(v)
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let n: String = self.chars[start..self.pos].iter().collect();
                let n: i64 = n.parse().map_err(|_| self.err("integer too large"))?;
                let mut v = (Rat::int(n), Rat::zero());
                // implicit product such as `3tau`
                if matches!(self.chars.get(self.pos), Some('t') | Some('τ')) {
                    let p = self.atom()?;
                    v = (Rat::zero(), &p.1 * &v.0);
                }
                Ok(v)
            }
            Some('t') | Some('τ') => {
                let start = self.pos;
                if self.chars[self.pos] == 't' {
                    let word: String = self.chars[self.pos..].iter().take(3).collect();
                    if word != "tau" {
                        return Err(self.err("unknown symbol"));
                    }
                    self.pos += 3;
                } else {
                    self.pos += 1;
                }
                while self.pos < self.chars.len() && matches!(self.chars[self.pos], '\'' | '′' | '0'..='9' | '₀'..='₉') {
                    self.pos += 1;
                }
                let sym: String = self.chars[start..self.pos].iter().collect();
                let sym = canonical_period(&sym.replace(['₁', '₂', '₃'], "").replace('₀', ""))
                    + &subscript_digits(&self.chars[start..self.pos]);
                if sym != self.tag {
                    return Err(self.err(&format!("period {sym} does not belong to this factor ({})", self.tag)));
                }
                Ok((Rat::zero(), Rat::one()))
            }
            _ => Err(self.err("expected a number, a period or '('")),
        }
    }
}

fn subscript_digits(cs: &[char]) -> String {
    cs.iter()
        .filter_map(|c| match c {
            '₀'..='₉' => char::from_digit(*c as u32 - '₀' as u32, 10),
            _ => None,
        })
        .collect()
}
