use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use crate::ratlin::SolutionSet;
use crate::torus::{AffineTorusMap, FiniteAffineGroup};

use super::component::{FixedComponent, Witness};
use super::FixlocError;

/// { z : α(z) = h(z) for some h in the covering group }, split into canonical components.
pub fn fixed_locus_upstairs(alpha: &AffineTorusMap, covering: &FiniteAffineGroup) -> Vec<FixedComponent> {
    let mut found: BTreeMap<FixedComponent, Vec<Witness>> = BTreeMap::new();
    for h in covering.elements() {
        let f = h.inverse().compose(alpha);
        if let SolutionSet::Cosets { offsets, direction } = f.fixed_points() {
            for o in offsets {
                let c = FixedComponent::new(direction.clone(), &o);
                found.entry(c).or_default().push(Witness { alpha: alpha.clone(), h: h.clone() });
            }
        }
    }
    found
        .into_iter()
        .map(|(mut c, w)| {
            c.witnesses = w;
            c
        })
        .collect()
}

/// An orbit of components under a group, given by indices into the component list.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Orbit {
    pub members: Vec<usize>,
}

impl Orbit {
    /// The smallest member in canonical component order.
    pub fn rep(&self) -> usize {
        self.members[0]
    }
}

/// Partitions `components` into orbits of the group generated by `generators`.
///
/// Fails when some generator maps a component outside the list.
pub fn identify_under_group(components: &[FixedComponent], generators: &[AffineTorusMap]) -> Result<Vec<Orbit>, FixlocError> {
    let index: HashMap<&FixedComponent, usize> = components.iter().enumerate().map(|(i, c)| (c, i)).collect();
    let mut parent: Vec<usize> = (0..components.len()).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for (i, c) in components.iter().enumerate() {
        for g in generators {
            let img = c.image(g);
            let j = *index.get(&img).ok_or_else(|| {
                FixlocError::Consistency(format!("a group element maps the component through {:?} outside the fixed locus", c.offset()))
            })?;
            let (a, b) = (find(&mut parent, i), find(&mut parent, j));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for i in 0..components.len() {
        let r = find(&mut parent, i);
        groups.entry(r).or_default().push(i);
    }
    let mut orbits: Vec<Orbit> = groups.into_values().map(|members| Orbit { members }).collect();
    orbits.sort_by_key(|o| o.rep());
    Ok(orbits)
}
