use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::intmat::IntMat;

/// Returns (g, x, y) with x*a + y*b = g = gcd(a, b) >= 0.
pub fn ext_gcd(a: &BigInt, b: &BigInt) -> (BigInt, BigInt, BigInt) {
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1) = (BigInt::one(), BigInt::zero());
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while !r1.is_zero() {
        let q = r0.div_floor(&r1);
        let r2 = &r0 - &q * &r1;
        r0 = std::mem::replace(&mut r1, r2);
        let s2 = &s0 - &q * &s1;
        s0 = std::mem::replace(&mut s1, s2);
        let t2 = &t0 - &q * &t1;
        t0 = std::mem::replace(&mut t1, t2);
    }
    if r0.is_negative() {
        (-r0, -s0, -t0)
    } else {
        (r0, s0, t0)
    }
}

/// Row Hermite normal form `h = u * m` with `u` unimodular.
///
/// Pivots are positive, entries above a pivot lie in `[0, pivot)`, zero rows sit at the bottom.
pub fn hnf(m: &IntMat) -> (IntMat, IntMat) {
    let rows = m.rows();
    let mut h = m.clone();
    let mut u = IntMat::identity(rows);
    let mut p = 0;
    for j in 0..m.cols() {
        if p == rows {
            break;
        }
        for i in p + 1..rows {
            if h.get(i, j).is_zero() {
                continue;
            }
            if h.get(p, j).is_zero() {
                h.swap_rows(p, i);
                u.swap_rows(p, i);
                continue;
            }
            let a = h.get(p, j).clone();
            let b = h.get(i, j).clone();
            let (g, x, y) = ext_gcd(&a, &b);
            let r = -(&b / &g);
            let s = &a / &g;
            h.combine_rows(p, i, &x, &y, &r, &s);
            u.combine_rows(p, i, &x, &y, &r, &s);
        }
        if h.get(p, j).is_zero() {
            continue;
        }
        if h.get(p, j).is_negative() {
            h.negate_row(p);
            u.negate_row(p);
        }
        let piv = h.get(p, j).clone();
        for i in 0..p {
            let q = h.get(i, j).div_floor(&piv);
            if !q.is_zero() {
                let k = -q;
                h.add_row_multiple(i, p, &k);
                u.add_row_multiple(i, p, &k);
            }
        }
        p += 1;
    }
    (h, u)
}

/// Nonzero rows of the row Hermite normal form of `m`, without the transform.
///
/// Rows are absorbed one at a time so the working matrix never exceeds `cols + 1` rows.
pub fn hnf_rows(m: &IntMat) -> IntMat {
    let cols = m.cols();
    let mut basis = IntMat::zeros(0, cols);
    for i in 0..m.rows() {
        if m.row(i).iter().all(|x| x.is_zero()) {
            continue;
        }
        let stacked = basis.stack(&IntMat::from_rows(vec![m.row_vec(i)], cols));
        let h = hermite_in_place(stacked);
        let nz: Vec<Vec<BigInt>> = (0..h.rows()).filter(|&r| h.row(r).iter().any(|x| !x.is_zero())).map(|r| h.row_vec(r)).collect();
        basis = IntMat::from_rows(nz, cols);
    }
    basis
}

fn hermite_in_place(mut h: IntMat) -> IntMat {
    let rows = h.rows();
    let mut p = 0;
    for j in 0..h.cols() {
        if p == rows {
            break;
        }
        for i in p + 1..rows {
            if h.get(i, j).is_zero() {
                continue;
            }
            if h.get(p, j).is_zero() {
                h.swap_rows(p, i);
                continue;
            }
            let a = h.get(p, j).clone();
            let b = h.get(i, j).clone();
            let (g, x, y) = ext_gcd(&a, &b);
            let r = -(&b / &g);
            let s = &a / &g;
            h.combine_rows(p, i, &x, &y, &r, &s);
        }
        if h.get(p, j).is_zero() {
            continue;
        }
        if h.get(p, j).is_negative() {
            h.negate_row(p);
        }
        let piv = h.get(p, j).clone();
        for i in 0..p {
            let q = h.get(i, j).div_floor(&piv);
            if !q.is_zero() {
                h.add_row_multiple(i, p, &(-q));
            }
        }
        p += 1;
    }
    h
}

/// Smith normal form `s = u * m * v` with `u`, `v` unimodular and `d_i | d_{i+1}`, `d_i >= 0`.
pub fn snf(m: &IntMat) -> (IntMat, IntMat, IntMat) {
    let (rows, cols) = (m.rows(), m.cols());
    let mut s = m.clone();
    let mut u = IntMat::identity(rows);
    let mut v = IntMat::identity(cols);
    for t in 0..rows.min(cols) {
        // smallest nonzero entry of the trailing block becomes the pivot
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                let x = s.get(i, j);
                if !x.is_zero() && best.is_none_or(|(bi, bj)| x.abs() < s.get(bi, bj).abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((bi, bj)) = best else { break };
        s.swap_rows(t, bi);
        u.swap_rows(t, bi);
        s.swap_cols(t, bj);
        v.swap_cols(t, bj);
        loop {
            let mut dirty = false;
            for i in t + 1..rows {
                if s.get(i, t).is_zero() {
                    continue;
                }
                let a = s.get(t, t).clone();
                let b = s.get(i, t).clone();
                if b.is_multiple_of(&a) {
                    let k = -(&b / &a);
                    s.add_row_multiple(i, t, &k);
                    u.add_row_multiple(i, t, &k);
                    continue;
                }
                let (g, x, y) = ext_gcd(&a, &b);
                let r = -(&b / &g);
                let q = &a / &g;
                s.combine_rows(t, i, &x, &y, &r, &q);
                u.combine_rows(t, i, &x, &y, &r, &q);
                dirty = true;
            }
            for j in t + 1..cols {
                if s.get(t, j).is_zero() {
                    continue;
                }
                let a = s.get(t, t).clone();
                let b = s.get(t, j).clone();
                if b.is_multiple_of(&a) {
                    let k = -(&b / &a);
                    s.add_col_multiple(j, t, &k);
                    v.add_col_multiple(j, t, &k);
                    continue;
                }
                let (g, x, y) = ext_gcd(&a, &b);
                let r = -(&b / &g);
                let q = &a / &g;
                s.combine_cols(t, j, &x, &y, &r, &q);
                v.combine_cols(t, j, &x, &y, &r, &q);
                dirty = true;
            }
            if dirty {
                continue;
            }
            let piv = s.get(t, t).clone();
            let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !s.get(i, j).is_multiple_of(&piv)));
            match bad {
                Some(i) => {
                    let one = BigInt::one();
                    s.add_row_multiple(t, i, &one);
                    u.add_row_multiple(t, i, &one);
                }
                None => break,
            }
        }
        if s.get(t, t).is_negative() {
            s.negate_row(t);
            u.negate_row(t);
        }
    }
    (s, u, v)
}

/// Diagonal of a Smith form (length min(rows, cols)).
pub fn invariant_factors(m: &IntMat) -> Vec<BigInt> {
    let (s, _, _) = snf(m);
    (0..m.rows().min(m.cols())).map(|i| s.get(i, i).clone()).collect()
}

/// Integer inverse of a unimodular matrix.
pub fn unimodular_inverse(m: &IntMat) -> IntMat {
    let (h, u) = hnf(m);
    assert_eq!(h, IntMat::identity(m.rows()), "matrix is not unimodular");
    u
}

/// Saturated integer basis (rows) of the rational right kernel `{x : m x = 0}`.
pub fn kernel_basis(m: &IntMat) -> IntMat {
    let (h, u) = hnf(&m.transpose());
    let zero_rows: Vec<Vec<BigInt>> =
        (0..h.rows()).filter(|&i| h.row(i).iter().all(|x| x.is_zero())).map(|i| u.row_vec(i)).collect();
    IntMat::from_rows(zero_rows, m.cols())
}

/// Rank over Q.
pub fn rank(m: &IntMat) -> usize {
    hnf_rows(m).rows()
}
