use std::collections::{BTreeSet, HashSet};

use serde::Serialize;

use crate::torus::AffineTorusMap;

use super::{AutGroupDescription, FamilyError, FamilySetup};

/// A subgroup Υ of Aut(X), as indices into `AutGroupDescription::classes`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct AutSubgroup {
    /// Sorted.
    pub elements: Vec<usize>,
    /// Greedy generating set: each generator is the least class outside the span of the previous ones.
    pub generators: Vec<usize>,
}

impl AutSubgroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, class: usize) -> bool {
        self.elements.binary_search(&class).is_ok()
    }

    /// Canonical lifts of the generators to automorphisms of the torus.
    pub fn lifts(&self, aut: &AutGroupDescription) -> Vec<AffineTorusMap> {
        self.generators.iter().map(|&i| aut.classes[i].rep.clone()).collect()
    }

    pub fn nontrivial<'a>(&'a self, aut: &'a AutGroupDescription) -> impl Iterator<Item = usize> + 'a {
        let e = aut.identity();
        self.elements.iter().copied().filter(move |&i| i != e)
    }

    pub fn volume_preserving(&self, aut: &AutGroupDescription) -> bool {
        self.elements.iter().all(|&i| aut.classes[i].volume_preserving)
    }

    pub fn describe(&self, aut: &AutGroupDescription, setup: &FamilySetup) -> Vec<String> {
        self.generators.iter().map(|&i| crate::fixloc::class_label(&aut.classes[i].rep, setup)).collect()
    }
}

fn closure(aut: &AutGroupDescription, gens: &[usize]) -> BTreeSet<usize> {
    let mut set = BTreeSet::from([aut.identity()]);
    let mut frontier: Vec<usize> = set.iter().copied().collect();
    while let Some(x) = frontier.pop() {
        for &g in gens {
            let y = aut.multiply(x, g);
            if set.insert(y) {
                frontier.push(y);
            }
        }
    }
    set
}

fn canonical_generators(aut: &AutGroupDescription, elements: &BTreeSet<usize>) -> Vec<usize> {
    let mut gens = Vec::new();
    let mut span = BTreeSet::from([aut.identity()]);
    for &x in elements {
        if !span.contains(&x) {
            gens.push(x);
            span = closure(aut, &gens);
        }
    }
    gens
}

impl AutGroupDescription {
    /// ⟨gens⟩ ≤ Aut(X).
    pub fn subgroup(&self, gens: &[usize]) -> AutSubgroup {
        let elements = closure(self, gens);
        AutSubgroup { generators: canonical_generators(self, &elements), elements: elements.into_iter().collect() }
    }

    /// The subgroup generated by the classes of the given torus automorphisms.
    pub fn subgroup_of_maps(&self, maps: &[AffineTorusMap]) -> Result<AutSubgroup, FamilyError> {
        let idx = maps
            .iter()
            .map(|m| self.class_of(m).ok_or_else(|| FamilyError::InvalidParameters("map does not normalize the covering group".into())))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(self.subgroup(&idx))
    }

    pub fn whole(&self) -> AutSubgroup {
        let all: Vec<usize> = (0..self.classes.len()).collect();
        self.subgroup(&all)
    }

    /// All subgroups of order at most `max_order`, ordered by order and then by generator tuple.
    pub fn subgroups(&self, max_order: usize) -> Vec<AutSubgroup> {
        let trivial = self.subgroup(&[]);
        let mut seen: HashSet<Vec<usize>> = HashSet::from([trivial.elements.clone()]);
        let mut layer = vec![trivial];
        let mut out = layer.clone();
        while !layer.is_empty() {
            let mut next = Vec::new();
            for s in &layer {
                for c in 0..self.classes.len() {
                    if s.contains(c) {
                        continue;
                    }
                    let mut gens = s.generators.clone();
                    gens.push(c);
                    let t = self.subgroup(&gens);
                    if t.order() <= max_order && seen.insert(t.elements.clone()) {
                        next.push(t);
                    }
                }
            }
            out.extend(next.iter().cloned());
            layer = next;
        }
        out.sort_by(|a, b| (a.order(), &a.generators).cmp(&(b.order(), &b.generators)));
        out
    }
}
