use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::intmat::IntMat;
use super::lattice::Sublattice;
use super::normal_form::{rank, snf};
use super::rat::{common_denominator, Rat};

/// Solution set of `(M - I) x = -t` on the torus R^m / Z^m.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SolutionSet {
    Empty,
    /// Union of the cosets `offset + span_R(direction)` modulo Z^m, one per offset.
    Cosets { offsets: Vec<Vec<Rat>>, direction: Sublattice },
}

impl SolutionSet {
    pub fn is_empty(&self) -> bool {
        matches!(self, SolutionSet::Empty)
    }

    pub fn coset_count(&self) -> usize {
        match self {
            SolutionSet::Empty => 0,
            SolutionSet::Cosets { offsets, .. } => offsets.len(),
        }
    }
}

/// Solves `(m - I) x ≡ -t (mod Z^n)` for x in (R/Z)^n.
///
/// With `U (m - I) V = diag(d_1, .., d_r, 0, ..)` and `x = V y`, the first r coordinates of y take
/// `d_i` values each and the rest are free; the free columns of V span the saturated direction lattice.
pub fn solve_affine_mod_lattice(m: &IntMat, t: &[Rat]) -> SolutionSet {
    let n = m.rows();
    assert!(m.is_square(), "solve_affine_mod_lattice needs a square matrix");
    assert_eq!(t.len(), n, "translation length");
    let a = m.sub(&IntMat::identity(n));
    let (s, u, v) = snf(&a);
    let neg_t: Vec<Rat> = t.iter().map(|x| -x).collect();
    let rhs = u.mul_rat_vec(&neg_t);
    let r = (0..n).take_while(|&i| !s.get(i, i).is_zero()).count();
    if rhs[r..].iter().any(|x| !x.is_integer()) {
        return SolutionSet::Empty;
    }
    let dir_rows: Vec<Vec<BigInt>> = (r..n).map(|j| v.col_vec(j)).collect();
    let direction = Sublattice::from_vectors(n, &dir_rows).expect("square");
    // enumerate the finitely many choices for the constrained coordinates
    let mut choices: Vec<Vec<Rat>> = vec![vec![]];
    for i in 0..r {
        let d = s.get(i, i).clone();
        let dn = d.to_usize().expect("invariant factor fits in usize");
        let mut next = Vec::with_capacity(choices.len() * dn);
        for c in &choices {
            for k in 0..dn {
                let yi = (&rhs[i] + &Rat::int(k as i64)).div_int(&d);
                let mut c2 = c.clone();
                c2.push(yi);
                next.push(c2);
            }
        }
        choices = next;
    }
    let mut offsets: Vec<Vec<Rat>> = choices
        .into_iter()
        .map(|mut y| {
            y.resize(n, Rat::zero());
            v.mul_rat_vec(&y).into_iter().map(|x| x.frac_part()).collect()
        })
        .collect();
    offsets.sort();
    offsets.dedup();
    SolutionSet::Cosets { offsets, direction }
}

/// Whether `a x = b` has a rational solution.
pub fn rational_solvable(a: &IntMat, b: &[Rat]) -> bool {
    let d = common_denominator(b);
    let col: Vec<Vec<BigInt>> = b.iter().map(|x| vec![x.mul_int(&d).to_integer().unwrap()]).collect();
    let bcol = IntMat::from_rows(col, 1);
    let mut aug_rows = Vec::with_capacity(a.rows());
    for i in 0..a.rows() {
        let mut r = a.row_vec(i);
        r.push(bcol.get(i, 0).clone());
        aug_rows.push(r);
    }
    let aug = IntMat::from_rows(aug_rows, a.cols() + 1);
    rank(a) == rank(&aug)
}

/// An integer solution of `a x = c`, if one exists.
pub fn integer_solution(a: &IntMat, c: &[BigInt]) -> Option<Vec<BigInt>> {
    let (s, u, v) = snf(a);
    let uc = u.mul_vec(c);
    let k = a.rows().min(a.cols());
    let mut y = vec![BigInt::zero(); a.cols()];
    for i in 0..a.rows() {
        let d = if i < k { s.get(i, i).clone() } else { BigInt::zero() };
        if d.is_zero() {
            if !uc[i].is_zero() {
                return None;
            }
        } else {
            if !uc[i].is_multiple_of(&d) {
                return None;
            }
            y[i] = &uc[i] / &d;
        }
    }
    Some(v.mul_vec(&y))
}
