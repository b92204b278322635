use std::collections::{BTreeSet, HashMap, VecDeque};

use num_bigint::BigInt;
use num_traits::Zero;

use crate::ratlin::{integer_solution, kernel_basis, IntMat, Rat, Sublattice};

use super::crystal::{AffineElement, CrystalGroup};
use super::Pi1Error;

/// A coset of Z^m in Γ that contains elements with fixed points.
#[derive(Clone, Debug)]
pub struct FixedCoset {
    pub position: usize,
    /// λ₀ with (M_q, v_q + λ₀) fixing a point.
    pub shift: Vec<BigInt>,
    /// Saturated lattice Z^m ∩ Im(M_q − I): the other fixed-point elements of the coset differ by these.
    pub directions: Sublattice,
}

/// F_Γ, the subgroup generated by the elements of Γ with fixed points.
#[derive(Clone, Debug)]
pub struct FGamma {
    /// F_Γ ∩ Z^m.
    pub lattice: Sublattice,
    /// Image of F_Γ in Q = Γ / Z^m (sorted positions).
    pub point_image: Vec<usize>,
    pub certificates: Vec<FixedCoset>,
}

impl FGamma {
    pub fn is_trivial(&self) -> bool {
        self.certificates.is_empty()
    }
}

/// The fixed-point elements of a coset τ(Z^m) c_q, if any.
fn fixed_coset(position: usize, rep: &AffineElement) -> Option<FixedCoset> {
    let m = rep.linear.rows();
    let a = rep.linear.sub(&IntMat::identity(m));
    // rows of y span the integer left kernel of A; v + λ ∈ Im A iff y (v + λ) = 0
    let y = kernel_basis(&a.transpose());
    if y.rows() == 0 {
        return Some(FixedCoset { position, shift: vec![BigInt::zero(); m], directions: Sublattice::full(m) });
    }
    let yv = y.mul_rat_vec(&rep.translation);
    if yv.iter().any(|x| !x.is_integer()) {
        return None;
    }
    let rhs: Vec<BigInt> = yv.iter().map(|x| -x.to_integer().expect("integral")).collect();
    let shift = integer_solution(&y, &rhs)?;
    let k = kernel_basis(&y);
    let directions = Sublattice::from_generators(m, &k).expect("ambient").saturation();
    Some(FixedCoset { position, shift, directions })
}

fn translate(e: &AffineElement, lam: &[BigInt]) -> AffineElement {
    let t = e.translation.iter().zip(lam).map(|(x, l)| x + &Rat::int(l.clone())).collect();
    AffineElement { linear: e.linear.clone(), translation: t }
}

/// Computes F_Γ ∩ Z^m and the image of F_Γ in Γ / Z^m.
///
/// F_Γ is generated by g_q = τ(λ₀) c_q and the lattices Z^m ∩ Im(M_q − I), q ranging over
/// fixed-point cosets; F_Γ ∩ Z^m then comes from the Schreier generators of a spanning tree of
/// the image.
pub fn f_gamma(gamma: &CrystalGroup) -> Result<FGamma, Pi1Error> {
    let m = gamma.dim();
    let id = gamma.identity_position();
    let certificates: Vec<FixedCoset> = gamma
        .coset_reps()
        .iter()
        .enumerate()
        .filter(|(q, _)| *q != id)
        .filter_map(|(q, r)| fixed_coset(q, r))
        .collect();
    let gens: Vec<(usize, AffineElement)> =
        certificates.iter().map(|c| (c.position, translate(&gamma.coset_reps()[c.position], &c.shift))).collect();
    // spanning tree of the image in Q, with transversal σ
    let mut sigma: HashMap<usize, AffineElement> = HashMap::from([(id, AffineElement::identity(m))]);
    let mut queue = VecDeque::from([id]);
    while let Some(f) = queue.pop_front() {
        for (q, g) in &gens {
            let fq = gamma.multiply(f, *q);
            if !sigma.contains_key(&fq) {
                let s = sigma[&f].compose(g);
                sigma.insert(fq, s);
                queue.push_back(fq);
            }
        }
    }
    let mut vectors: Vec<Vec<BigInt>> = Vec::new();
    let to_int = |v: &[Rat]| -> Result<Vec<BigInt>, Pi1Error> {
        v.iter()
            .map(|x| x.to_integer().ok_or_else(|| Pi1Error::Consistency("Schreier generator is not a lattice vector".into())))
            .collect()
    };
    for (f, sf) in &sigma {
        for (q, g) in &gens {
            let fq = gamma.multiply(*f, *q);
            let s = sf.compose(g).compose(&sigma[&fq].inverse());
            if !s.is_translation() {
                return Err(Pi1Error::Consistency("Schreier generator has a nontrivial linear part".into()));
            }
            vectors.push(to_int(&s.translation)?);
        }
        for c in &certificates {
            for i in 0..c.directions.rank() {
                vectors.push(sf.linear.mul_vec(c.directions.basis().row(i)));
            }
        }
    }
    let lattice = Sublattice::from_vectors(m, &vectors).map_err(|e| Pi1Error::Consistency(e.to_string()))?;
    // normality of F_Γ ∩ Z^m in Γ
    for r in gamma.coset_reps() {
        if !lattice.contains_lattice(&lattice.image(&r.linear)) {
            return Err(Pi1Error::Consistency("F_Γ ∩ Z^m is not invariant under the point group".into()));
        }
    }
    let point_image: BTreeSet<usize> = sigma.keys().copied().collect();
    Ok(FGamma { lattice, point_image: point_image.into_iter().collect(), certificates })
}
