use std::collections::{BTreeSet, HashMap, VecDeque};

use serde::{Deserialize, Serialize};

use super::map::AffineTorusMap;
use super::point::TorusShape;
use super::TorusError;

/// A finite group of affine torus maps, elements kept in sorted canonical order.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FiniteAffineGroup {
    shape: TorusShape,
    elements: Vec<AffineTorusMap>,
    generators: Vec<AffineTorusMap>,
    labels: Vec<String>,
    #[serde(skip)]
    index: HashMap<AffineTorusMap, usize>,
}

impl PartialEq for FiniteAffineGroup {
    fn eq(&self, o: &Self) -> bool {
        self.elements == o.elements
    }
}

impl Eq for FiniteAffineGroup {}

impl FiniteAffineGroup {
    /// Closure of `gens` under composition. Fails once more than `cap` elements appear.
    pub fn generate(shape: &TorusShape, gens: &[AffineTorusMap], cap: usize) -> Result<FiniteAffineGroup, TorusError> {
        let labels = (0..gens.len()).map(|i| format!("g{}", i + 1)).collect();
        FiniteAffineGroup::generate_labeled(shape, gens, labels, cap)
    }

    pub fn generate_labeled(
        shape: &TorusShape,
        gens: &[AffineTorusMap],
        labels: Vec<String>,
        cap: usize,
    ) -> Result<FiniteAffineGroup, TorusError> {
        for g in gens {
            if g.real_dim() != shape.real_dim() {
                return Err(TorusError::ShapeMismatch("generator dimension differs from the shape".into()));
            }
        }
        let id = AffineTorusMap::identity(shape);
        let mut seen: BTreeSet<AffineTorusMap> = BTreeSet::new();
        seen.insert(id.clone());
        let mut queue = VecDeque::from([id]);
        // for a finite group, closure under right multiplication by generators is enough
        while let Some(x) = queue.pop_front() {
            for g in gens {
                let y = x.compose(g);
                if seen.insert(y.clone()) {
                    if seen.len() > cap {
                        return Err(TorusError::NotFiniteUnderCap { cap });
                    }
                    queue.push_back(y);
                }
            }
        }
        Ok(FiniteAffineGroup::from_sorted(shape.clone(), seen.into_iter().collect(), gens.to_vec(), labels))
    }

    fn from_sorted(shape: TorusShape, elements: Vec<AffineTorusMap>, generators: Vec<AffineTorusMap>, labels: Vec<String>) -> Self {
        let index = elements.iter().cloned().enumerate().map(|(i, e)| (e, i)).collect();
        FiniteAffineGroup { shape, elements, generators, labels, index }
    }

    pub fn trivial(shape: &TorusShape) -> FiniteAffineGroup {
        FiniteAffineGroup::from_sorted(shape.clone(), vec![AffineTorusMap::identity(shape)], vec![], vec![])
    }

    pub fn shape(&self) -> &TorusShape {
        &self.shape
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[AffineTorusMap] {
        &self.elements
    }

    pub fn generators(&self) -> &[AffineTorusMap] {
        &self.generators
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn contains(&self, f: &AffineTorusMap) -> bool {
        self.position(f).is_some()
    }

    pub fn position(&self, f: &AffineTorusMap) -> Option<usize> {
        if self.index.is_empty() {
            return self.elements.binary_search(f).ok();
        }
        self.index.get(f).copied()
    }

    /// Whether `g` maps the group to itself under conjugation (checked on generators).
    pub fn normalized_by(&self, g: &AffineTorusMap) -> bool {
        let gens: &[AffineTorusMap] = if self.generators.is_empty() { &self.elements } else { &self.generators };
        gens.iter().all(|h| self.contains(&h.conjugate_by(g)))
    }

    pub fn translations(&self) -> Vec<&AffineTorusMap> {
        self.elements.iter().filter(|e| e.is_translation()).collect()
    }

    pub fn is_subgroup_closed(&self) -> bool {
        self.elements.iter().all(|a| self.contains(&a.inverse()) && self.elements.iter().all(|b| self.contains(&a.compose(b))))
    }
}
