use num_bigint::BigInt;
use crate::ratlin::{IntMat, Rat};

use super::map::AffineTorusMap;
use super::point::{parse_epoint, TorusPoint, TorusShape};
use super::TorusError;

fn perr(input: &str, column: usize, message: impl Into<String>) -> TorusError {
    TorusError::Parse { input: input.to_string(), column, message: message.into() }
}

/// Splits `s` at commas (or `+`/`-` when `signs` is set) outside parentheses, keeping byte offsets.
fn split_top(s: &str, signs: bool) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if !signs && depth == 0 => {
                out.push((start, &s[start..i]));
                start = i + 1;
            }
            '+' | '-' if signs && depth == 0 && !s[start..i].trim().is_empty() => {
                out.push((start, &s[start..i]));
                start = i;
            }
            _ => {}
        }
    }
    out.push((start, &s[start..]));
    out
}

/// A signed term `[-]k*zj` or `[-]zj`; `None` when the term mentions no coordinate.
fn coordinate_term(term: &str) -> Option<Result<(usize, i64), String>> {
    let t: String = term.chars().filter(|c| !c.is_whitespace()).collect();
    let (neg, body) = match t.strip_prefix('-') {
        Some(b) => (true, b.to_string()),
        None => (false, t.strip_prefix('+').unwrap_or(&t).to_string()),
    };
    let zpos = body.find('z')?;
    let coef = match body[..zpos].trim_end_matches('*') {
        "" => 1,
        k => match k.parse::<i64>() {
            Ok(k) => k,
            Err(_) => return Some(Err(format!("bad coefficient `{k}`"))),
        },
    };
    let idx = match body[zpos + 1..].parse::<usize>() {
        Ok(j) if j >= 1 => j - 1,
        _ => return Some(Err(format!("bad coordinate `{}`", &body[zpos..]))),
    };
    Some(Ok((idx, if neg { -coef } else { coef })))
}

/// Parses a map literal such as `(z2, -z1, z3 + 1/4)`.
///
/// A literal with no coordinates at all, such as `(0, 0, tau'/2)`, is the translation by that point.
pub fn parse_map(input: &str, shape: &TorusShape) -> Result<AffineTorusMap, TorusError> {
    let n = shape.complex_dim();
    let trimmed = input.trim();
    let lead = input.len() - input.trim_start().len();
    let inner = trimmed
        .strip_prefix('(')
        .and_then(|s| s.strip_suffix(')'))
        .ok_or_else(|| perr(input, lead + 1, "expected a parenthesized tuple"))?;
    let base = lead + 1;
    let comps = split_top(inner, false);
    if comps.len() != n {
        return Err(perr(input, base + 1, format!("expected {n} components, found {}", comps.len())));
    }
    let mut linear = IntMat::zeros(n, n);
    let mut coords: Vec<Rat> = Vec::with_capacity(2 * n);
    let mut any_linear = false;
    let mut rows_with_linear = vec![false; n];
    for (i, (off, comp)) in comps.iter().enumerate() {
        let mut constant = String::new();
        let mut const_col = 0;
        for (toff, term) in split_top(comp, true) {
            let col = base + off + toff + 1;
            match coordinate_term(term) {
                Some(Ok((j, k))) => {
                    if j >= n {
                        return Err(perr(input, col, format!("coordinate z{} out of range", j + 1)));
                    }
                    let v = linear.get(i, j) + BigInt::from(k);
                    linear.set(i, j, v);
                    rows_with_linear[i] = true;
                    any_linear = true;
                }
                Some(Err(m)) => return Err(perr(input, col, m)),
                None if constant.is_empty() => {
                    let t = term.trim_start();
                    let t = t.strip_prefix('+').unwrap_or(t);
                    const_col = col + (term.len() - t.len());
                    constant.push_str(t);
                }
                None => constant.push_str(term),
            }
        }
        let (a, b) = if constant.trim().is_empty() {
            (Rat::zero(), Rat::zero())
        } else {
            parse_epoint(&constant, &shape.periods[i]).map_err(|e| match e {
                TorusError::Parse { column, message, .. } => perr(input, const_col + column - 1, message),
                other => other,
            })?
        };
        coords.push(a);
        coords.push(b);
    }
    if any_linear {
        if let Some(i) = rows_with_linear.iter().position(|r| !r) {
            return Err(perr(input, base + comps[i].0 + 1, format!("component {} has no coordinate", i + 1)));
        }
    } else {
        linear = IntMat::identity(n);
    }
    AffineTorusMap::new(shape, linear, TorusPoint::new(coords))
}
