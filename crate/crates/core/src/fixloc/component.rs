use std::cmp::Ordering;

use serde::Serialize;

use crate::ratlin::{coords_in_basis, from_coords, unimodular_inverse, IntMat, Rat, Sublattice};
use crate::torus::{AffineTorusMap, TorusPoint};

/// The pair (α, h) whose equation α(z) = h(z) produced a component.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub alpha: AffineTorusMap,
    pub h: AffineTorusMap,
}

/// A coset x₀ + span_R(D) of a rational subtorus, with D saturated.
#[derive(Clone, Debug, Serialize)]
pub struct FixedComponent {
    direction: Sublattice,
    offset: TorusPoint,
    dim_real: usize,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub witnesses: Vec<Witness>,
}

impl PartialEq for FixedComponent {
    fn eq(&self, o: &Self) -> bool {
        self.direction == o.direction && self.offset == o.offset
    }
}

impl Eq for FixedComponent {}

impl PartialOrd for FixedComponent {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl Ord for FixedComponent {
    fn cmp(&self, o: &Self) -> Ordering {
        (self.dim_real, &self.direction, &self.offset).cmp(&(o.dim_real, &o.direction, &o.offset))
    }
}

impl std::hash::Hash for FixedComponent {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.direction.hash(state);
        self.offset.hash(state);
    }
}

type Frame = (IntMat, IntMat);

/// Unimodular frame whose leading rows span the direction lattice, with its inverse.
fn frame(direction: &Sublattice) -> Frame {
    let w = direction.complete_basis();
    let w_inv = unimodular_inverse(&w);
    (w, w_inv)
}

impl FixedComponent {
    /// The coset through `point` with the given direction, offset reduced to its canonical form.
    pub fn new(direction: Sublattice, point: &[Rat]) -> FixedComponent {
        let direction = direction.saturation();
        let k = direction.rank();
        let f = frame(&direction);
        let mut y = coords_in_basis(&f.1, point);
        for (i, yi) in y.iter_mut().enumerate() {
            *yi = if i < k { Rat::zero() } else { yi.frac_part() };
        }
        let offset = TorusPoint::new(from_coords(&f.0, &y));
        FixedComponent { direction, offset, dim_real: k, witnesses: Vec::new() }
    }

    pub fn with_witness(mut self, w: Witness) -> FixedComponent {
        self.witnesses.push(w);
        self
    }

    pub fn direction(&self) -> &Sublattice {
        &self.direction
    }

    pub fn offset(&self) -> &TorusPoint {
        &self.offset
    }

    pub fn dim_real(&self) -> usize {
        self.dim_real
    }

    pub fn dim_complex(&self) -> usize {
        self.dim_real / 2
    }

    /// Coordinates transverse to the direction, in [0, 1).
    pub fn transverse_coords(&self) -> Vec<Rat> {
        let f = frame(&self.direction);
        coords_in_basis(&f.1, self.offset.coords())[self.dim_real..].iter().map(|x| x.frac_part()).collect()
    }

    pub fn frame(&self) -> (IntMat, IntMat) {
        frame(&self.direction)
    }

    pub fn contains_point(&self, x: &[Rat]) -> bool {
        let f = frame(&self.direction);
        let d: Vec<Rat> = x.iter().zip(self.offset.coords()).map(|(a, b)| a - b).collect();
        coords_in_basis(&f.1, &d)[self.dim_real..].iter().all(|v| v.is_integer())
    }

    /// g(C) = { g(x) : x ∈ C }.
    pub fn image(&self, g: &AffineTorusMap) -> FixedComponent {
        let dir = self.direction.image(g.real_linear());
        let p = g.apply(self.offset.coords());
        FixedComponent::new(dir, p.coords())
    }
}
