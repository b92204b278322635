use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::ratlin::{common_denominator, coords_in_basis, unimodular_inverse, IntMat, Rat, Sublattice};

use super::crystal::CrystalGroup;
use super::fgamma::FGamma;
use super::finite::{abelian_label, generated, spanning_words, torsion_of, FiniteGroup};
use super::Pi1Error;

/// Universal cover type of a quotient, read off its fundamental group.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum CoverClass {
    TypeA,
    TypeK,
    Finite,
    Unclassified,
}

/// Structure of π₁ of an orbifold quotient Γ / F_Γ.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Pi1Descriptor {
    pub finite: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub order: Option<u64>,
    /// Torsion invariant factors of the abelianization.
    pub abelian_invariants: Vec<u64>,
    pub abelian_free_rank: usize,
    /// Rank of the translation lattice of Γ / F_Γ.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub lattice_rank: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub lattice_label: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub point_quotient: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub point_quotient_order: Option<usize>,
    pub cover_class: CoverClass,
    /// "{0}", "Z/2×Z/4", "0→Λ3‴→π₁→Z/2×Z/2→0", or a presentation summary for non-abelian groups.
    pub label: String,
}

/// Abelian invariants (free rank, torsion) of the abelianization of Γ, or of Γ / F_Γ when given.
pub fn abelianization(gamma: &CrystalGroup, fg: Option<&FGamma>) -> (usize, Vec<BigInt>) {
    let m = gamma.dim();
    let gens = gamma.generator_positions().to_vec();
    let k = gens.len();
    let (words, mut rows) = spanning_words(gamma.coset_count(), gamma.identity_position(), &gens, |p, g| gamma.cocycle(p, g).clone(), m);
    let cols = k + m;
    for &g in &gens {
        let a = gamma.coset_reps()[g].linear.sub(&IntMat::identity(m));
        for i in 0..m {
            let mut r = vec![BigInt::zero(); cols];
            for j in 0..m {
                r[k + j] = a.get(j, i).clone();
            }
            rows.push(r);
        }
    }
    if let Some(fg) = fg {
        for c in &fg.certificates {
            let mut r = words[c.position].clone();
            for (j, l) in c.shift.iter().enumerate() {
                r[k + j] += l;
            }
            rows.push(r);
        }
        for i in 0..fg.lattice.rank() {
            let mut r = vec![BigInt::zero(); cols];
            for (j, x) in fg.lattice.basis().row(i).iter().enumerate() {
                r[k + j] = x.clone();
            }
            rows.push(r);
        }
    }
    torsion_of(&rows, cols)
}

/// Q / N for a normal subgroup N of Q = Γ / Z^m, as a multiplication table on cosets.
fn quotient_group(gamma: &CrystalGroup, normal: &BTreeSet<usize>) -> FiniteGroup {
    let n = gamma.coset_count();
    let mut coset_of = vec![usize::MAX; n];
    let mut reps = Vec::new();
    for q in 0..n {
        if coset_of[q] != usize::MAX {
            continue;
        }
        let idx = reps.len();
        reps.push(q);
        for &x in normal {
            coset_of[gamma.multiply(q, x)] = idx;
        }
    }
    let table = reps.iter().map(|&a| reps.iter().map(|&b| coset_of[gamma.multiply(a, b)]).collect()).collect();
    FiniteGroup::from_table(table, coset_of[gamma.identity_position()])
}

fn group_name(g: &FiniteGroup) -> String {
    g.label().unwrap_or_else(|| format!("nonabelian group of order {}", g.order()))
}

fn to_u64(v: &[BigInt]) -> Vec<u64> {
    v.iter().map(|x| x.to_u64().expect("small invariant")).collect()
}

fn scaled_integer_rows(vs: &[Vec<Rat>]) -> Vec<Vec<BigInt>> {
    let all: Vec<Rat> = vs.iter().flatten().cloned().collect();
    let d = common_denominator(&all);
    vs.iter().map(|v| v.iter().map(|x| x.mul_int(&d).to_integer().expect("cleared")).collect()).collect()
}

/// Name of a rank-2 lattice in the plane of complex factor `factor` (0-based), up to homothety.
fn name_plane_lattice(factor: usize, gens: &[Vec<BigInt>]) -> String {
    let content = gens.iter().flatten().fold(BigInt::zero(), |g, x| g.gcd(x));
    let rows: Vec<Vec<BigInt>> = gens.iter().map(|v| v.iter().map(|x| x / &content).collect()).collect();
    let l = Sublattice::from_vectors(2, &rows).expect("plane");
    let lat = |v: &[[i64; 2]]| {
        Sublattice::from_vectors(2, &v.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect::<Vec<_>>()).expect("plane")
    };
    let base = format!("Λ{}", factor + 1);
    if l == lat(&[[1, 0], [0, 1]]) {
        return base;
    }
    if factor == 2 {
        for (marks, v) in [("′", [[2, 0], [0, 1]]), ("″", [[2, 0], [1, 1]]), ("‴", [[1, 0], [0, 2]])] {
            if l == lat(&v) {
                return format!("{base}{marks}");
            }
        }
    }
    let b = l.basis();
    format!("{base}[{}]", (0..b.rows()).map(|i| format!("({},{})", b.get(i, 0), b.get(i, 1))).collect::<Vec<_>>().join(","))
}

/// Translation lattice of Γ / F_Γ, projected to the directions not killed by F_Γ, named factor by factor.
fn surviving_lattice(gamma: &CrystalGroup, fg: &FGamma) -> String {
    let m = gamma.dim();
    let w = fg.lattice.complete_basis();
    let r = fg.lattice.saturation().rank();
    let winv = unimodular_inverse(&w);
    // ambient coordinate carried by each surviving row, when the row is a unit vector
    let ambient_of: Vec<Option<usize>> = (r..m)
        .map(|i| {
            let row = w.row(i);
            let nz: Vec<usize> = (0..m).filter(|&j| !row[j].is_zero()).collect();
            (nz.len() == 1 && row[nz[0]].is_one()).then_some(nz[0])
        })
        .collect();
    let s = m - r;
    let mut gens: Vec<Vec<Rat>> = (0..s).map(|i| (0..s).map(|j| if i == j { Rat::one() } else { Rat::zero() }).collect()).collect();
    for q in gamma.translation_positions() {
        gens.push(coords_in_basis(&winv, &gamma.coset_reps()[q].translation)[r..].to_vec());
    }
    let int_rows = scaled_integer_rows(&gens);
    let lattice = Sublattice::from_vectors(s, &int_rows).expect("surviving");
    let mut names = Vec::new();
    let mut covered = 0;
    for f in 0..m / 2 {
        let (Some(i), Some(j)) = (ambient_of.iter().position(|a| *a == Some(2 * f)), ambient_of.iter().position(|a| *a == Some(2 * f + 1)))
        else {
            continue;
        };
        let plane: Vec<Vec<BigInt>> = [i, j]
            .iter()
            .map(|&c| (0..s).map(|k| if k == c { BigInt::one() } else { BigInt::zero() }).collect())
            .collect();
        let cut = lattice.intersection(&Sublattice::from_vectors(s, &plane).expect("plane")).expect("same ambient");
        let b = cut.basis();
        let two: Vec<Vec<BigInt>> = (0..b.rows()).map(|k| vec![b.get(k, i).clone(), b.get(k, j).clone()]).collect();
        names.push(name_plane_lattice(f, &two));
        covered += 2;
    }
    if covered == s {
        names.join("⊕")
    } else {
        format!("rank {s} lattice")
    }
}

/// π₁ of the quotient: the group Γ / F_Γ.
pub fn pi1_quotient(gamma: &CrystalGroup, fg: &FGamma) -> Result<Pi1Descriptor, Pi1Error> {
    let m = gamma.dim();
    let (free, torsion) = abelianization(gamma, Some(fg));
    let image: BTreeSet<usize> = fg.point_image.iter().copied().collect();
    let point_order = gamma.coset_count() / image.len();
    if fg.lattice.rank() == m {
        let index = fg.lattice.index().expect("full rank");
        let order = index * BigInt::from(point_order);
        let ab_order: BigInt = torsion.iter().product();
        if free != 0 || ab_order > order {
            return Err(Pi1Error::Consistency("abelianization larger than the group".into()));
        }
        let label = if ab_order == order {
            abelian_label(0, &torsion)
        } else {
            format!("nonabelian group of order {order}, abelianization {}", abelian_label(0, &torsion))
        };
        return Ok(Pi1Descriptor {
            finite: true,
            order: order.to_u64(),
            abelian_invariants: to_u64(&torsion),
            abelian_free_rank: 0,
            lattice_rank: None,
            lattice_label: None,
            point_quotient: None,
            point_quotient_order: None,
            cover_class: CoverClass::Finite,
            label,
        });
    }
    let rank = m - fg.lattice.rank();
    let mut kernel: Vec<usize> = image.iter().copied().collect();
    kernel.extend(gamma.translation_positions());
    let normal = generated(gamma.identity_position(), &kernel, |a, b| gamma.multiply(a, b));
    let pq = quotient_group(gamma, &normal);
    let pq_name = group_name(&pq);
    let lattice_label = surviving_lattice(gamma, fg);
    let mut d = Pi1Descriptor {
        finite: false,
        order: None,
        abelian_invariants: to_u64(&torsion),
        abelian_free_rank: free,
        lattice_rank: Some(rank),
        lattice_label: Some(lattice_label.clone()),
        point_quotient: Some(pq_name.clone()),
        point_quotient_order: Some(pq.order()),
        cover_class: CoverClass::Unclassified,
        label: if pq.order() == 1 { lattice_label } else { format!("0→{lattice_label}→π₁→{pq_name}→0") },
    };
    d.cover_class = classify_universal_cover(&d);
    Ok(d)
}

pub fn classify_universal_cover(d: &Pi1Descriptor) -> CoverClass {
    if d.finite {
        return CoverClass::Finite;
    }
    match d.lattice_rank {
        Some(6) => CoverClass::TypeA,
        Some(2) => CoverClass::TypeK,
        _ => CoverClass::Unclassified,
    }
}

/// Invariant factors as plain integers, for comparisons in tests and reports.
pub fn abelian_invariants_u64(gamma: &CrystalGroup, fg: Option<&FGamma>) -> (usize, Vec<u64>) {
    let (f, t) = abelianization(gamma, fg);
    (f, t.iter().map(|x| x.abs().to_u64().expect("small")).collect())
}
