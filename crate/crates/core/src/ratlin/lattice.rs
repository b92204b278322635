use subsets::subsets_desc;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::intmat::IntMat;
use super::normal_form::{hnf, hnf_rows, snf, unimodular_inverse};
use super::rat::{common_denominator, Rat};
use super::LinError;

/// A subgroup of Z^m, stored by its row Hermite basis.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Sublattice {
    ambient: usize,
    basis: IntMat,
    saturated: bool,
}

impl std::fmt::Debug for Sublattice {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Sublattice(Z^{}, {:?}{})", self.ambient, self.basis, if self.saturated { ", sat" } else { "" })
    }
}

impl Sublattice {
    /// Lattice spanned by the rows of `gens`.
    pub fn from_generators(ambient: usize, gens: &IntMat) -> Result<Sublattice, LinError> {
        if gens.rows() > 0 && gens.cols() != ambient {
            return Err(LinError::Dimension(format!("generators have {} columns, ambient rank {}", gens.cols(), ambient)));
        }
        if gens.rows() == 0 {
            return Ok(Sublattice::zero(ambient));
        }
        let basis = hnf_rows(gens);
        let saturated = is_saturated_basis(&basis);
        Ok(Sublattice { ambient, basis, saturated })
    }

    pub fn from_vectors(ambient: usize, gens: &[Vec<BigInt>]) -> Result<Sublattice, LinError> {
        Sublattice::from_generators(ambient, &IntMat::from_rows(gens.to_vec(), ambient))
    }

    pub fn zero(ambient: usize) -> Sublattice {
        Sublattice { ambient, basis: IntMat::zeros(0, ambient), saturated: true }
    }

    pub fn full(ambient: usize) -> Sublattice {
        Sublattice { ambient, basis: IntMat::identity(ambient), saturated: true }
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient
    }

    pub fn rank(&self) -> usize {
        self.basis.rows()
    }

    pub fn basis(&self) -> &IntMat {
        &self.basis
    }

    pub fn is_saturated(&self) -> bool {
        self.saturated
    }

    fn check(&self, o: &Sublattice) -> Result<(), LinError> {
        if self.ambient != o.ambient {
            return Err(LinError::Dimension(format!("ambient ranks {} and {}", self.ambient, o.ambient)));
        }
        Ok(())
    }

    pub fn sum(&self, o: &Sublattice) -> Result<Sublattice, LinError> {
        self.check(o)?;
        Sublattice::from_generators(self.ambient, &self.basis.stack(&o.basis))
    }

    pub fn intersection(&self, o: &Sublattice) -> Result<Sublattice, LinError> {
        self.check(o)?;
        if self.rank() == 0 || o.rank() == 0 {
            return Ok(Sublattice::zero(self.ambient));
        }
        let c = self.basis.stack(&o.basis);
        let (h, u) = hnf(&c);
        let a = self.rank();
        let mut gens = Vec::new();
        for i in 0..h.rows() {
            if h.row(i).iter().all(|x| x.is_zero()) {
                let x: Vec<BigInt> = u.row(i)[..a].to_vec();
                gens.push(self.basis.vec_mul(&x));
            }
        }
        Sublattice::from_vectors(self.ambient, &gens)
    }

    /// Rational span intersected with Z^m.
    pub fn saturation(&self) -> Sublattice {
        if self.saturated {
            return self.clone();
        }
        let r = self.rank();
        let (_, _, v) = snf(&self.basis);
        let vinv = unimodular_inverse(&v);
        let rows: Vec<Vec<BigInt>> = (0..r).map(|i| vinv.row_vec(i)).collect();
        let mut s = Sublattice::from_vectors(self.ambient, &rows).expect("same ambient");
        s.saturated = true;
        s
    }

    /// Structure of Z^m / L: (free rank, invariant factors > 1).
    pub fn quotient_invariants(&self) -> (usize, Vec<BigInt>) {
        let free = self.ambient - self.rank();
        if self.rank() == 0 {
            return (free, vec![]);
        }
        let (s, _, _) = snf(&self.basis);
        let tors = (0..self.rank()).map(|i| s.get(i, i).clone()).filter(|d| !d.is_one()).collect();
        (free, tors)
    }

    /// Index [Z^m : L] for a full-rank lattice.
    pub fn index(&self) -> Option<BigInt> {
        if self.rank() != self.ambient {
            return None;
        }
        Some((0..self.ambient).map(|i| self.basis.get(i, i).clone()).product())
    }

    pub fn contains(&self, v: &[BigInt]) -> bool {
        assert_eq!(v.len(), self.ambient);
        let mut w = v.to_vec();
        for i in 0..self.rank() {
            let row = self.basis.row(i);
            let j = row.iter().position(|x| !x.is_zero()).expect("nonzero basis row");
            if !w[j].is_multiple_of(&row[j]) {
                return false;
            }
            let q = &w[j] / &row[j];
            for (k, x) in row.iter().enumerate() {
                w[k] -= &q * x;
            }
        }
        w.iter().all(|x| x.is_zero())
    }

    pub fn contains_rat(&self, v: &[Rat]) -> bool {
        if v.iter().any(|x| !x.is_integer()) {
            return false;
        }
        let w: Vec<BigInt> = v.iter().map(|x| x.to_integer().unwrap()).collect();
        self.contains(&w)
    }

    /// Whether `v` lies in the real span of the lattice.
    pub fn in_span(&self, v: &[Rat]) -> bool {
        let d = common_denominator(v);
        let w: Vec<BigInt> = v.iter().map(|x| (x.mul_int(&d)).to_integer().unwrap()).collect();
        self.saturation().contains(&w)
    }

    pub fn contains_lattice(&self, o: &Sublattice) -> bool {
        (0..o.rank()).all(|i| self.contains(o.basis.row(i)))
    }

    /// Image under v -> m v (m acting on column vectors).
    pub fn image(&self, m: &IntMat) -> Sublattice {
        let gens: Vec<Vec<BigInt>> = (0..self.rank()).map(|i| m.mul_vec(self.basis.row(i))).collect();
        Sublattice::from_vectors(m.rows(), &gens).expect("consistent dims")
    }

    /// Canonical representative of `v` modulo a full-rank lattice (coordinates reduced along the Hermite pivots).
    pub fn reduce_mod(&self, v: &[Rat]) -> Vec<Rat> {
        assert_eq!(self.rank(), self.ambient, "reduction needs a full-rank lattice");
        let mut w = v.to_vec();
        for i in 0..self.rank() {
            let row = self.basis.row(i);
            let piv = Rat::int(row[i].clone());
            let q = (&w[i] / &piv).floor();
            if !q.is_zero() {
                for (k, x) in row.iter().enumerate() {
                    w[k] = &w[k] - &Rat::int(x * &q);
                }
            }
        }
        w
    }

    /// Unimodular matrix whose first `rank` rows are a basis of the saturation.
    ///
    /// Remaining rows are standard unit vectors when possible (later coordinates preferred), which
    /// keeps quotient coordinates aligned with the ambient ones.
    pub fn complete_basis(&self) -> IntMat {
        let sat = self.saturation();
        let r = sat.rank();
        let m = self.ambient;
        for subset in subsets_desc(m, m - r) {
            let mut w = sat.basis.clone();
            for &j in &subset {
                let mut e = vec![BigInt::zero(); m];
                e[j] = BigInt::one();
                w = w.stack(&IntMat::from_rows(vec![e], m));
            }
            if w.det().abs().is_one() {
                return w;
            }
        }
        let (_, _, v) = snf(&sat.basis);
        let vinv = unimodular_inverse(&v);
        let mut w = sat.basis.clone();
        for i in r..m {
            w = w.stack(&IntMat::from_rows(vec![vinv.row_vec(i)], m));
        }
        w
    }
}

fn is_saturated_basis(b: &IntMat) -> bool {
    if b.rows() == 0 {
        return true;
    }
    let (s, _, _) = snf(b);
    (0..b.rows()).all(|i| s.get(i, i).abs().is_one())
}

/// Coordinates of `x` in the basis given by the rows of a unimodular matrix `w`: solves `y w = x`.
pub fn coords_in_basis(w_inv: &IntMat, x: &[Rat]) -> Vec<Rat> {
    // y = x w^{-1}
    let n = x.len();
    (0..n)
        .map(|j| {
            let mut acc = Rat::zero();
            for (i, xi) in x.iter().enumerate() {
                let c = w_inv.get(i, j);
                if !c.is_zero() && !xi.is_zero() {
                    acc = acc + xi.mul_int(c);
                }
            }
            acc
        })
        .collect()
}

/// Inverse of `coords_in_basis`: x = y w.
pub fn from_coords(w: &IntMat, y: &[Rat]) -> Vec<Rat> {
    let n = y.len();
    (0..w.cols())
        .map(|j| {
            let mut acc = Rat::zero();
            for i in 0..n {
                let c = w.get(i, j);
                if !c.is_zero() && !y[i].is_zero() {
                    acc = acc + y[i].mul_int(c);
                }
            }
            acc
        })
        .collect()
}

mod subsets {
    /// All k-subsets of 0..n, ordered so that subsets using later indices come first.
    pub fn subsets_desc(n: usize, k: usize) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut cur = Vec::new();
        rec(k, n, &mut cur, &mut out);
        out
    }

    fn rec(k: usize, hi: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            let mut s = cur.clone();
            s.sort_unstable();
            out.push(s);
            return;
        }
        for j in (0..hi).rev() {
            cur.push(j);
            rec(k, j, cur, out);
            cur.pop();
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lat(rows: &[Vec<i64>], m: usize) -> Sublattice {
        if rows.is_empty() {
            return Sublattice::zero(m);
        }
        Sublattice::from_generators(m, &IntMat::from_i64(rows)).unwrap()
    }

    #[test]
    fn quotient_of_scaled_lattices() {
        let l = lat(&[vec![2, 0], vec![0, 2]], 2);
        assert_eq!(l.quotient_invariants(), (0, vec![BigInt::from(2), BigInt::from(2)]));
        let l = lat(&[vec![1, 0]], 2);
        assert_eq!(l.quotient_invariants(), (1, vec![]));
        let l = lat(&[vec![2, 0], vec![0, 4]], 2);
        assert_eq!(l.quotient_invariants(), (0, vec![BigInt::from(2), BigInt::from(4)]));
    }

    #[test]
    fn sum_and_intersection_ranks() {
        let a = lat(&[vec![1, 0, 0], vec![0, 2, 0]], 3);
        let b = lat(&[vec![0, 1, 0], vec![0, 0, 1]], 3);
        let s = a.sum(&b).unwrap();
        let i = a.intersection(&b).unwrap();
        assert_eq!(s.rank() + i.rank(), a.rank() + b.rank());
        assert!(i.contains(&[BigInt::from(0), BigInt::from(2), BigInt::from(0)]));
        assert!(!i.contains(&[BigInt::from(0), BigInt::from(1), BigInt::from(0)]));
    }

    #[test]
    fn saturation_recovers_primitive_span() {
        let a = lat(&[vec![2, 2, 0]], 3);
        assert!(!a.is_saturated());
        let s = a.saturation();
        assert!(s.is_saturated());
        assert!(s.contains(&[BigInt::from(1), BigInt::from(1), BigInt::from(0)]));
        assert_eq!(s.saturation(), s);
    }

    #[test]
    fn dimension_mismatch_is_an_error() {
        let a = Sublattice::full(2);
        let b = Sublattice::full(3);
        assert!(a.sum(&b).is_err());
    }

    #[test]
    fn completion_prefers_unit_vectors() {
        let a = lat(&[vec![1, 0, 0, 0], vec![0, 1, 0, 0]], 4);
        let w = a.complete_basis();
        assert_eq!(w.row(2), &[BigInt::zero(), BigInt::zero(), BigInt::one(), BigInt::zero()]);
        assert_eq!(w.row(3), &[BigInt::zero(), BigInt::zero(), BigInt::zero(), BigInt::one()]);
        let d = lat(&[vec![1, -1, 0]], 3);
        assert!(d.complete_basis().is_unimodular());
    }

    #[test]
    fn reduce_mod_is_canonical() {
        let l = lat(&[vec![2, 1], vec![0, 3]], 2);
        let v = vec![Rat::frac(7, 2), Rat::frac(-1, 3)];
        let w = l.reduce_mod(&v);
        let shifted = vec![&v[0] + &Rat::int(2), &v[1] + &Rat::int(4)];
        assert_eq!(l.reduce_mod(&shifted), w);
    }
}
