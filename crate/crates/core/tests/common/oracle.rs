//! Brute-force π₁ oracle: rebuilds Γ / NZ^m from the torus maps with machine integers,
//! marks every coset that contains an element of finite order (those are exactly the
//! elements with fixed points) and reports the quotient Γ / (F_Γ · NZ^m).

use std::collections::{HashMap, HashSet, VecDeque};

use cyquot::families::{AutGroupDescription, AutSubgroup, FamilySetup};
use cyquot::ratlin::{IntMat, Sublattice};
use cyquot::torus::AffineTorusMap;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

#[derive(Clone, PartialEq, Eq, Hash)]
struct Elt {
    m: Vec<i64>,
    v: Vec<i64>,
}

struct Ctx {
    dim: usize,
    scale: i64,
    modulus: i64,
}

impl Ctx {
    fn mul(&self, a: &Elt, b: &Elt) -> Elt {
        let d = self.dim;
        let mut m = vec![0; d * d];
        let mut v = a.v.clone();
        for i in 0..d {
            for j in 0..d {
                let x = a.m[i * d + j];
                if x == 0 {
                    continue;
                }
                for k in 0..d {
                    m[i * d + k] += x * b.m[j * d + k];
                }
                v[i] += x * b.v[j];
            }
        }
        for x in &mut v {
            *x = x.rem_euclid(self.modulus);
        }
        Elt { m, v }
    }

    fn of_map(&self, f: &AffineTorusMap) -> Elt {
        let l = f.real_linear();
        let m = (0..self.dim).flat_map(|i| (0..self.dim).map(move |j| (i, j))).map(|(i, j)| l.get(i, j).to_i64().unwrap()).collect();
        let v = f
            .translation_part()
            .coords()
            .iter()
            .map(|x| (x.numer() * BigInt::from(self.scale) / x.denom()).to_i64().unwrap().rem_euclid(self.modulus))
            .collect();
        Elt { m, v }
    }

    fn has_torsion_lift(&self, e: &Elt, cache: &mut HashMap<Vec<i64>, (Vec<i64>, Sublattice)>) -> bool {
        let d = self.dim;
        if let Some((sum, image)) = cache.get(&e.m) {
            let sv: Vec<BigInt> = (0..d).map(|i| BigInt::from((0..d).map(|j| sum[i * d + j] * e.v[j]).sum::<i64>())).collect();
            return image.contains(&sv);
        }
        let id: Vec<i64> = (0..d * d).map(|k| i64::from(k / d == k % d)).collect();
        let mut sum = id.clone();
        let mut p = e.m.clone();
        while p != id {
            for k in 0..d * d {
                sum[k] += p[k];
            }
            p = self.mul(&Elt { m: p, v: vec![0; d] }, &Elt { m: e.m.clone(), v: vec![0; d] }).m;
        }
        // S(v + Nλ) = 0 for some integral λ, all in units of 1/scale
        let cols: Vec<Vec<BigInt>> = (0..d).map(|j| (0..d).map(|i| BigInt::from(sum[i * d + j] * self.modulus)).collect()).collect();
        let image = Sublattice::from_generators(d, &IntMat::from_rows(cols, d)).unwrap();
        cache.insert(e.m.clone(), (sum, image));
        self.has_torsion_lift(e, cache)
    }
}

fn closure(ctx: &Ctx, gens: &[Elt], start: Elt) -> Vec<Elt> {
    let mut seen = HashSet::from([start.clone()]);
    let mut out = vec![start.clone()];
    let mut queue = VecDeque::from([start]);
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y = ctx.mul(&x, g);
            if seen.insert(y.clone()) {
                out.push(y.clone());
                queue.push_back(y);
            }
        }
    }
    out
}

/// Subgroup generated by `elts`, adding a generator only when it is not already inside.
fn subgroup_generated(ctx: &Ctx, elts: &[Elt], identity: Elt) -> Vec<Elt> {
    let mut set = HashSet::from([identity.clone()]);
    let mut members = vec![identity];
    let mut chosen: Vec<Elt> = Vec::new();
    for t in elts {
        if set.contains(t) {
            continue;
        }
        chosen.push(t.clone());
        let mut queue: VecDeque<Elt> = members.iter().cloned().collect();
        while let Some(x) = queue.pop_front() {
            for g in &chosen {
                let y = ctx.mul(&x, g);
                if set.insert(y.clone()) {
                    members.push(y.clone());
                    queue.push_back(y);
                }
            }
        }
    }
    members
}

/// The finite group Γ / (F_Γ · NZ^m).
pub struct OracleGroup {
    pub order: usize,
    pub abelian: bool,
    /// Sorted multiset of element orders.
    pub element_orders: Vec<usize>,
}

pub fn pi1_mod(setup: &FamilySetup, aut: &AutGroupDescription, upsilon: &AutSubgroup, n: i64) -> OracleGroup {
    let dim = setup.shape.real_dim();
    let mut maps: Vec<AffineTorusMap> = setup.covering.generators().to_vec();
    maps.extend(upsilon.lifts(aut));
    let scale = maps
        .iter()
        .flat_map(|f| f.translation_part().coords().iter().map(|x| x.denom().to_i64().unwrap()))
        .fold(1i64, |a, b| a.lcm(&b));
    let ctx = Ctx { dim, scale, modulus: n * scale };
    let mut gens: Vec<Elt> = maps.iter().map(|f| ctx.of_map(f)).collect();
    for i in 0..dim {
        let mut v = vec![0; dim];
        v[i] = scale;
        gens.push(Elt { m: (0..dim * dim).map(|k| i64::from(k / dim == k % dim)).collect(), v });
    }
    let identity = Elt { m: (0..dim * dim).map(|k| i64::from(k / dim == k % dim)).collect(), v: vec![0; dim] };
    let all = closure(&ctx, &gens, identity.clone());
    let mut cache = HashMap::new();
    let fixers: Vec<Elt> = all.iter().filter(|e| ctx.has_torsion_lift(e, &mut cache)).cloned().collect();
    let normal = subgroup_generated(&ctx, &fixers, identity.clone());

    let mut coset: HashMap<Elt, usize> = HashMap::new();
    let mut reps = Vec::new();
    for x in &all {
        if coset.contains_key(x) {
            continue;
        }
        let id = reps.len();
        reps.push(x.clone());
        for f in &normal {
            coset.insert(ctx.mul(x, f), id);
        }
    }
    let k = reps.len();
    let table: Vec<Vec<usize>> = reps.iter().map(|a| reps.iter().map(|b| coset[&ctx.mul(a, b)]).collect()).collect();
    let e = coset[&identity];
    let abelian = (0..k).all(|a| (0..k).all(|b| table[a][b] == table[b][a]));
    let mut element_orders: Vec<usize> = (0..k)
        .map(|a| {
            let (mut x, mut o) = (a, 1);
            while x != e {
                x = table[x][a];
                o += 1;
            }
            o
        })
        .collect();
    element_orders.sort_unstable();
    OracleGroup { order: k, abelian, element_orders }
}

/// Sorted element orders of Z/d1 × ... × Z/dk.
pub fn abelian_element_orders(invariants: &[u64]) -> Vec<usize> {
    let mut orders = vec![1usize];
    for &d in invariants {
        let d = d as usize;
        orders = orders.iter().flat_map(|&o| (0..d).map(move |j| o.lcm(&(d / d.gcd(&j))))).collect();
    }
    orders.sort_unstable();
    orders
}
