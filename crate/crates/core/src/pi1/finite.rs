use std::collections::{BTreeSet, VecDeque};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::ratlin::{hnf_rows, invariant_factors, IntMat};

/// A finite group given by its multiplication table.
#[derive(Clone, Debug)]
pub struct FiniteGroup {
    table: Vec<Vec<usize>>,
    identity: usize,
}

impl FiniteGroup {
    pub fn from_table(table: Vec<Vec<usize>>, identity: usize) -> FiniteGroup {
        FiniteGroup { table, identity }
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.order();
        (0..n).all(|a| (0..n).all(|b| self.table[a][b] == self.table[b][a]))
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != self.identity {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    /// Invariant factors (> 1) of the abelianization.
    pub fn abelian_invariants(&self) -> Vec<BigInt> {
        let gens: Vec<usize> = (0..self.order()).filter(|&g| g != self.identity).collect();
        let rows = tree_relations(self.order(), self.identity, &gens, |p, g| (self.mul(p, g), vec![]), 0);
        torsion_of(&rows, gens.len()).1
    }

    /// Name of the group when it is determined by the data at hand, never a guess.
    pub fn label(&self) -> Option<String> {
        if self.is_abelian() {
            return Some(abelian_label(0, &self.abelian_invariants()));
        }
        if self.order() == 8 {
            let involutions = (0..8).filter(|&a| self.element_order(a) == 2).count();
            return match involutions {
                5 => Some("D4".into()),
                1 => Some("Q8".into()),
                _ => None,
            };
        }
        None
    }
}

/// Relations of the abelianization of an extension read off a spanning tree of its Cayley graph.
///
/// `step(p, g)` returns the product p·g and the lattice correction λ with c_p c_g = τ(λ) c_{pg}.
/// Columns are the generators followed by `lattice_dim` lattice coordinates. Returns the
/// relation rows, and each element's word in the generators is stored in the first `n` rows of
/// the second component.
pub(crate) fn tree_relations(
    n: usize,
    identity: usize,
    gens: &[usize],
    step: impl Fn(usize, usize) -> (usize, Vec<BigInt>),
    lattice_dim: usize,
) -> Vec<Vec<BigInt>> {
    spanning_words(n, identity, gens, step, lattice_dim).1
}

pub(crate) fn spanning_words(
    n: usize,
    identity: usize,
    gens: &[usize],
    step: impl Fn(usize, usize) -> (usize, Vec<BigInt>),
    lattice_dim: usize,
) -> (Vec<Vec<BigInt>>, Vec<Vec<BigInt>>) {
    let cols = gens.len() + lattice_dim;
    let mut word: Vec<Option<Vec<BigInt>>> = vec![None; n];
    word[identity] = Some(vec![BigInt::zero(); cols]);
    let mut queue = VecDeque::from([identity]);
    let mut rows = Vec::new();
    while let Some(p) = queue.pop_front() {
        for (j, &g) in gens.iter().enumerate() {
            let (pg, lam) = step(p, g);
            let mut cand = word[p].clone().expect("visited");
            cand[j] += BigInt::one();
            for (i, l) in lam.iter().enumerate() {
                cand[gens.len() + i] -= l;
            }
            match &word[pg] {
                None => {
                    word[pg] = Some(cand);
                    queue.push_back(pg);
                }
                Some(w) => {
                    let rel: Vec<BigInt> = cand.iter().zip(w).map(|(a, b)| a - b).collect();
                    if rel.iter().any(|x| !x.is_zero()) {
                        rows.push(rel);
                    }
                }
            }
        }
    }
    (word.into_iter().map(|w| w.expect("generators span the group")).collect(), rows)
}

/// (free rank, invariant factors > 1) of Z^cols / ⟨rows⟩.
pub(crate) fn torsion_of(rows: &[Vec<BigInt>], cols: usize) -> (usize, Vec<BigInt>) {
    if rows.is_empty() {
        return (cols, vec![]);
    }
    let h = hnf_rows(&IntMat::from_rows(rows.to_vec(), cols));
    if h.rows() == 0 {
        return (cols, vec![]);
    }
    let r = h.rows();
    let d = invariant_factors(&h);
    (cols - r, d.into_iter().filter(|x| !x.is_one() && !x.is_zero()).collect())
}

/// "{0}", "Z/2", "Z/2×Z/4", "Z^2×Z/2", ...
pub fn abelian_label(free_rank: usize, torsion: &[BigInt]) -> String {
    let mut parts: Vec<String> = Vec::new();
    if free_rank > 0 {
        parts.push(if free_rank == 1 { "Z".into() } else { format!("Z^{free_rank}") });
    }
    parts.extend(torsion.iter().map(|d| format!("Z/{d}")));
    if parts.is_empty() {
        "{0}".into()
    } else {
        parts.join("×")
    }
}

/// Closure of a set of elements under multiplication.
pub(crate) fn generated(n_identity: usize, gens: &[usize], mul: impl Fn(usize, usize) -> usize) -> BTreeSet<usize> {
    let mut set = BTreeSet::from([n_identity]);
    let mut queue: VecDeque<usize> = VecDeque::from([n_identity]);
    while let Some(x) = queue.pop_front() {
        for &g in gens {
            let y = mul(x, g);
            if set.insert(y) {
                queue.push_back(y);
            }
        }
    }
    set
}
