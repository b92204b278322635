use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::Serialize;

use crate::ratlin::{common_denominator, Rat};
use crate::torus::{AffineTorusMap, FiniteAffineGroup};

use super::component::FixedComponent;
use super::FixlocError;

/// A set of points of ((1/N)Z/Z)^m, stored as a bitset over k ↦ Σ k_i N^i.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GridPoints {
    n: i64,
    dim: usize,
    bits: Vec<u64>,
}

impl GridPoints {
    pub fn empty(n: i64, dim: usize) -> GridPoints {
        let size = (n as usize).pow(dim as u32);
        GridPoints { n, dim, bits: vec![0; size.div_ceil(64)] }
    }

    pub fn full(n: i64, dim: usize) -> GridPoints {
        let size = (n as usize).pow(dim as u32);
        let mut g = GridPoints { n, dim, bits: vec![u64::MAX; size.div_ceil(64)] };
        let extra = g.bits.len() * 64 - size;
        if extra > 0 {
            let last = g.bits.len() - 1;
            g.bits[last] >>= extra;
        }
        g
    }

    pub fn denominator(&self) -> i64 {
        self.n
    }

    fn index(&self, k: &[i64]) -> usize {
        k.iter().rev().fold(0usize, |acc, &x| acc * self.n as usize + x.rem_euclid(self.n) as usize)
    }

    pub fn insert(&mut self, k: &[i64]) {
        let i = self.index(k);
        self.bits[i / 64] |= 1 << (i % 64);
    }

    pub fn contains(&self, k: &[i64]) -> bool {
        let i = self.index(k);
        self.bits[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn len(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.iter().all(|&w| w == 0)
    }

    pub fn union_with(&mut self, o: &GridPoints) {
        for (a, b) in self.bits.iter_mut().zip(&o.bits) {
            *a |= b;
        }
    }

    /// Integer numerators k of the points k/N.
    pub fn iter(&self) -> impl Iterator<Item = Vec<i64>> + '_ {
        self.bits.iter().enumerate().flat_map(move |(wi, &w)| {
            (0..64).filter(move |b| w >> b & 1 == 1).map(move |b| {
                let mut i = wi * 64 + b;
                (0..self.dim)
                    .map(|_| {
                        let x = (i % self.n as usize) as i64;
                        i /= self.n as usize;
                        x
                    })
                    .collect()
            })
        })
    }

    pub fn to_rats(&self, k: &[i64]) -> Vec<Rat> {
        k.iter().map(|&x| Rat::frac(x, self.n)).collect()
    }
}

fn scaled_translation(f: &AffineTorusMap, n: i64) -> Result<Vec<i64>, FixlocError> {
    let nb = BigInt::from(n);
    f.translation_part()
        .coords()
        .iter()
        .map(|x| {
            x.mul_int(&nb)
                .to_integer()
                .and_then(|v| v.to_i64())
                .ok_or_else(|| FixlocError::BadGrid(format!("translation denominator does not divide {n}")))
        })
        .collect()
}

fn small_matrix(f: &AffineTorusMap) -> Vec<Vec<i64>> {
    f.real_linear().to_rows().iter().map(|r| r.iter().map(|x| x.to_i64().expect("small entries")).collect()).collect()
}

/// Solves (M - I) k ≡ -N t (mod N) for k ∈ (Z/N)^m by splitting the coordinates in two halves.
fn grid_fixed_points(f: &AffineTorusMap, n: i64, out: &mut GridPoints) -> Result<(), FixlocError> {
    let m = f.real_dim();
    let nt = scaled_translation(f, n)?;
    let mut a = small_matrix(f);
    for (i, row) in a.iter_mut().enumerate() {
        row[i] -= 1;
    }
    let rhs: Vec<i64> = nt.iter().map(|x| (-x).rem_euclid(n)).collect();
    let half = m / 2;
    let pack = |v: &[i64]| v.iter().fold(0u128, |acc, &x| acc * n as u128 + x.rem_euclid(n) as u128);
    let tuples = |len: usize| -> Vec<Vec<i64>> {
        let total = (n as usize).pow(len as u32);
        (0..total)
            .map(|mut i| {
                (0..len)
                    .map(|_| {
                        let x = (i % n as usize) as i64;
                        i /= n as usize;
                        x
                    })
                    .collect()
            })
            .collect()
    };
    let mut left: HashMap<u128, Vec<Vec<i64>>> = HashMap::new();
    for ka in tuples(half) {
        let v: Vec<i64> = (0..m).map(|i| (0..half).map(|j| a[i][j] * ka[j]).sum::<i64>()).collect();
        left.entry(pack(&v)).or_default().push(ka);
    }
    let mut k = vec![0i64; m];
    for kb in tuples(m - half) {
        let need: Vec<i64> = (0..m).map(|i| rhs[i] - (0..m - half).map(|j| a[i][half + j] * kb[j]).sum::<i64>()).collect();
        if let Some(list) = left.get(&pack(&need)) {
            k[half..].copy_from_slice(&kb);
            for ka in list {
                k[..half].copy_from_slice(ka);
                out.insert(&k);
            }
        }
    }
    Ok(())
}

/// All x ∈ ((1/N)Z/Z)^{2n} with α(x) = h(x) for some h in the covering group, by exhaustive search.
pub fn brute_force_fixed_grid(alpha: &AffineTorusMap, covering: &FiniteAffineGroup, n: i64) -> Result<GridPoints, FixlocError> {
    if n < 1 {
        return Err(FixlocError::BadGrid("grid denominator must be positive".into()));
    }
    let mut ts = alpha.translation_part().coords().to_vec();
    for h in covering.elements() {
        ts.extend_from_slice(h.translation_part().coords());
    }
    if !(BigInt::from(n) % common_denominator(&ts) == BigInt::from(0)) {
        return Err(FixlocError::BadGrid(format!("{n} is not a multiple of every translation denominator")));
    }
    let dim = alpha.real_dim();
    let mut out = GridPoints::empty(n, dim);
    for h in covering.elements() {
        let f = h.inverse().compose(alpha);
        if f.is_identity() {
            return Ok(GridPoints::full(n, dim));
        }
        grid_fixed_points(&f, n, &mut out)?;
    }
    Ok(out)
}

/// Grid points lying on the given components, enumerated from their parametrization.
pub fn solver_grid_points(components: &[FixedComponent], n: i64, dim: usize) -> GridPoints {
    let mut out = GridPoints::empty(n, dim);
    for c in components {
        let k = c.dim_real();
        let (w, _) = c.frame();
        let nb = BigInt::from(n);
        let trailing: Option<Vec<i64>> =
            c.transverse_coords().iter().map(|y| y.mul_int(&nb).to_integer().and_then(|v| v.to_i64())).collect();
        let Some(trailing) = trailing else { continue };
        let w: Vec<Vec<i64>> = w.to_rows().iter().map(|r| r.iter().map(|x| x.to_i64().expect("small")).collect()).collect();
        // N x = Σ_i (N y_i) w_i
        let mut base = vec![0i64; dim];
        for (i, t) in trailing.iter().enumerate() {
            for j in 0..dim {
                base[j] += t * w[k + i][j];
            }
        }
        let total = (n as usize).pow(k as u32);
        let mut x = vec![0i64; dim];
        for mut idx in 0..total {
            x.copy_from_slice(&base);
            for wi in w.iter().take(k) {
                let yi = (idx % n as usize) as i64;
                idx /= n as usize;
                if yi != 0 {
                    for j in 0..dim {
                        x[j] += yi * wi[j];
                    }
                }
            }
            out.insert(&x);
        }
    }
    out
}

/// Outcome of comparing the solver's components against the exhaustive grid search.
#[derive(Clone, Debug, Serialize)]
pub struct GridCheck {
    pub n: i64,
    pub oracle_points: usize,
    pub solver_points: usize,
    pub agree: bool,
    /// Components with no point on the grid (then the grid cannot witness them).
    pub components_without_grid_points: usize,
}

pub fn verify_against_grid(
    alpha: &AffineTorusMap,
    covering: &FiniteAffineGroup,
    components: &[FixedComponent],
    n: i64,
) -> Result<GridCheck, FixlocError> {
    let oracle = brute_force_fixed_grid(alpha, covering, n)?;
    let solver = solver_grid_points(components, n, alpha.real_dim());
    let nb = BigInt::from(n);
    let missing = components.iter().filter(|c| c.transverse_coords().iter().any(|y| !y.mul_int(&nb).is_integer())).count();
    Ok(GridCheck { n, oracle_points: oracle.len(), solver_points: solver.len(), agree: oracle == solver, components_without_grid_points: missing })
}
