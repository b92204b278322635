use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::families::{automorphism_group, default_d4, default_z2, free_automorphisms, AutGroupDescription, FamilySetup};
use crate::fixloc::{class_label, fixed_locus_table, fixed_locus_upstairs, is_free, verify_against_grid, FixlocError};
use crate::invariants::{classify_quotient, invariant_hodge, orbifold_hodge, picard_structure, quotient_class, QuotientClass};
use crate::pi1::{build_gamma, f_gamma};
use crate::ratlin::{hnf, snf, IntMat};

use super::config::RunConfig;
use super::render::{CheckLine, Report};
use super::ReportError;

fn line(name: &str, passed: bool, detail: impl Into<String>) -> CheckLine {
    CheckLine { name: name.into(), passed, detail: detail.into() }
}

fn fixtable_counts(d4: &FamilySetup, aut: &AutGroupDescription) -> CheckLine {
    match fixed_locus_table(d4, aut) {
        Ok(rows) => {
            let counts: Vec<usize> = rows.iter().map(|r| r.count).collect();
            line("fixed-locus table counts", counts == [0, 0, 5, 4, 2, 6, 4, 4, 2], format!("{counts:?}"))
        }
        Err(e) => line("fixed-locus table counts", false, e.to_string()),
    }
}

fn aut_groups(d4: &AutGroupDescription, z2: &AutGroupDescription) -> CheckLine {
    let ok = d4.classes.len() == 16 && d4.exponent == 2 && z2.classes.len() == 128 && !z2.lower_bound;
    line("automorphism groups", ok, format!("|Aut| = {} (exponent {}), {}", d4.classes.len(), d4.exponent, z2.classes.len()))
}

fn free_counts(fams: &[(&FamilySetup, &AutGroupDescription)]) -> CheckLine {
    let counts: Vec<usize> = fams.iter().map(|(_, a)| free_automorphisms(a).len()).collect();
    let agree = fams.iter().all(|(f, a)| {
        a.classes.iter().all(|c| is_free(&c.rep, f) == c.free && fixed_locus_upstairs(&c.rep, &f.covering).is_empty() == c.free)
    });
    line("free automorphisms", counts == [2, 26] && agree, format!("{counts:?}, engine agrees: {agree}"))
}

fn grid_oracle(fams: &[(&FamilySetup, &AutGroupDescription)], n: i64) -> Result<CheckLine, ReportError> {
    let mut total = 0;
    let mut bad = Vec::new();
    for (f, a) in fams {
        let results: Vec<(String, Result<bool, FixlocError>)> = a
            .classes
            .par_iter()
            .map(|c| {
                let comps = fixed_locus_upstairs(&c.rep, &f.covering);
                (class_label(&c.rep, f), verify_against_grid(&c.rep, &f.covering, &comps, n).map(|g| g.agree))
            })
            .collect();
        total += results.len();
        for (l, r) in results {
            match r {
                Ok(true) => {}
                Ok(false) => bad.push(format!("{l}: disagrees")),
                Err(FixlocError::BadGrid(m)) => return Err(ReportError::Usage(m)),
                Err(e) => bad.push(format!("{l}: {e}")),
            }
        }
    }
    let detail = if bad.is_empty() { format!("{total} classes") } else { bad.join("; ") };
    Ok(line(&format!("grid oracle N={n}"), bad.is_empty(), detail))
}

fn hodge_and_picard(d4: &FamilySetup, z2: &FamilySetup) -> Vec<CheckLine> {
    let h = |f: &FamilySetup| (invariant_hodge(&f.covering, 1, 1).ok(), invariant_hodge(&f.covering, 2, 1).ok());
    let (a, b) = (h(d4), h(z2));
    let hodge = line("invariant Hodge numbers", a == (Some(2), Some(2)) && b == (Some(3), Some(3)), format!("{a:?} {b:?}"));
    let pic = match picard_structure(d4) {
        Ok(p) => line("Picard structure", p.rank == 2 && p.torsion == [2, 4, 4], format!("({}, {:?})", p.rank, p.torsion)),
        Err(e) => line("Picard structure", false, e.to_string()),
    };
    vec![hodge, pic]
}

/// h¹¹(X/⟨α⟩) = 2 + (number of fixed components of α_X) for the order-2 subgroups of the D4 family.
fn cross_consistency(d4: &FamilySetup, aut: &AutGroupDescription) -> CheckLine {
    let rows = match fixed_locus_table(d4, aut) {
        Ok(r) => r,
        Err(e) => return line("order-2 cross-consistency", false, e.to_string()),
    };
    let count: HashMap<&str, usize> = rows.iter().flat_map(|r| r.classes.iter().map(move |c| (c.as_str(), r.count))).collect();
    let mut bad = Vec::new();
    let subs: Vec<_> = aut.subgroups(2).into_iter().filter(|u| u.order() == 2).collect();
    for u in &subs {
        let label = class_label(&aut.classes[u.generators[0]].rep, d4);
        let h11 = orbifold_hodge(d4, aut, u).map(|o| o.hodge.h11);
        if h11 != Ok(2 + count[label.as_str()] as i64) {
            bad.push(format!("{label}: {h11:?}"));
        }
    }
    line("order-2 cross-consistency", bad.is_empty(), if bad.is_empty() { format!("{} subgroups", subs.len()) } else { bad.join("; ") })
}

fn random_matrix(rng: &mut ChaCha8Rng) -> IntMat {
    let (r, c) = (rng.gen_range(1..=12), rng.gen_range(1..=12));
    IntMat::from_rows((0..r).map(|_| (0..c).map(|_| BigInt::from(rng.gen_range(-20..=20))).collect()).collect(), c)
}

fn is_hermite(h: &IntMat) -> bool {
    let mut last: Option<usize> = None;
    for i in 0..h.rows() {
        let Some(p) = (0..h.cols()).find(|&j| !h.get(i, j).is_zero()) else {
            return (i..h.rows()).all(|k| h.row(k).iter().all(Zero::is_zero));
        };
        if last.is_some_and(|l| p <= l) || h.get(i, p) <= &BigInt::zero() {
            return false;
        }
        if (0..i).any(|k| h.get(k, p) < &BigInt::zero() || h.get(k, p) >= h.get(i, p)) {
            return false;
        }
        last = Some(p);
    }
    true
}

fn is_smith(s: &IntMat) -> bool {
    let n = s.rows().min(s.cols());
    let off = (0..s.rows()).all(|i| (0..s.cols()).all(|j| i == j || s.get(i, j).is_zero()));
    let chain = (1..n).all(|i| {
        let (a, b) = (s.get(i - 1, i - 1), s.get(i, i));
        if a.is_zero() {
            b.is_zero()
        } else {
            (b % a).is_zero()
        }
    });
    off && chain && (0..n).all(|i| s.get(i, i) >= &BigInt::zero())
}

fn unimodular(u: &IntMat) -> bool {
    let d = u.det();
    d.is_one() || (-d).is_one()
}

/// Reconstruction identities for HNF and SNF on seeded random matrices.
pub fn normal_form_check(count: usize, seed: u64) -> CheckLine {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mats: Vec<IntMat> = (0..count).map(|_| random_matrix(&mut rng)).collect();
    let bad = mats
        .par_iter()
        .filter(|m| {
            let (h, u) = hnf(m);
            let (s, p, q) = snf(m);
            !(u.dot(m) == h && unimodular(&u) && is_hermite(&h) && p.dot(m).dot(&q) == s && unimodular(&p) && unimodular(&q) && is_smith(&s))
        })
        .count();
    line("HNF/SNF reconstruction", bad == 0, format!("{count} matrices, {bad} failures"))
}

fn closure_and_homomorphism(fams: &[(&FamilySetup, &AutGroupDescription)]) -> CheckLine {
    let mut bad = Vec::new();
    for (f, a) in fams {
        if !f.covering.is_subgroup_closed() {
            bad.push(format!("{}: covering group not closed", f.tag));
        }
        let n = a.classes.len();
        let e = a.identity();
        // the class of a composite of representatives, looked up independently of `multiply`
        let table: Vec<Vec<Option<usize>>> =
            (0..n).into_par_iter().map(|i| (0..n).map(|j| a.class_of(&a.classes[i].rep.compose(&a.classes[j].rep))).collect()).collect();
        if table.iter().flatten().any(Option::is_none) {
            bad.push(format!("{}: product of classes outside Aut", f.tag));
            continue;
        }
        let t = |x: usize, y: usize| table[x][y].expect("checked");
        if (0..n).any(|i| (0..n).any(|j| t(i, j) != a.multiply(i, j))) {
            bad.push(format!("{}: multiply disagrees with composition", f.tag));
        }
        let assoc = (0..n).all(|x| (0..n).all(|y| (0..n).all(|z| t(t(x, y), z) == t(x, t(y, z)))));
        let unit = (0..n).all(|x| t(x, e) == x && t(e, x) == x);
        let inverses = (0..n).all(|x| (0..n).any(|y| t(x, y) == e));
        if !(assoc && unit && inverses) {
            bad.push(format!("{}: multiplication table is not a group", f.tag));
        }
        if n <= 16 {
            for u in a.subgroups(n) {
                if u.elements.iter().any(|&x| u.elements.iter().any(|&y| !u.contains(a.multiply(x, y)))) {
                    bad.push(format!("{}: subgroup {:?} not closed", f.tag, u.generators));
                }
            }
        }
    }
    line("group closure and homomorphism", bad.is_empty(), if bad.is_empty() { "ok".into() } else { bad.join("; ") })
}

/// F_Γ is trivial exactly when Υ acts freely on X.
fn freeness_consistency(d4: &FamilySetup, aut: &AutGroupDescription) -> CheckLine {
    let subs = aut.subgroups(16);
    let bad: Vec<String> = subs
        .par_iter()
        .filter_map(|u| {
            let free = u.nontrivial(aut).all(|i| aut.classes[i].free);
            let trivial = build_gamma(d4, aut, u).and_then(|g| f_gamma(&g)).map(|fg| fg.is_trivial());
            (trivial != Ok(free)).then(|| format!("{:?}: free {free}, F trivial {trivial:?}", u.describe(aut, d4)))
        })
        .collect();
    line("freeness vs F_Γ", bad.is_empty(), if bad.is_empty() { format!("{} subgroups", subs.len()) } else { bad.join("; ") })
}

fn kodaira(d4: &FamilySetup, d4aut: &AutGroupDescription, z2: &FamilySetup, z2aut: &AutGroupDescription) -> Vec<CheckLine> {
    let d4_ok = d4aut
        .subgroups(16)
        .iter()
        .all(|u| matches!(quotient_class(d4, d4aut, u), QuotientClass::CrepantCalabiYau | QuotientClass::SmoothFreeQuotient));
    let mut seen = Vec::new();
    let mut point_only_ok = true;
    for u in z2aut.subgroups(2).iter().filter(|u| u.order() == 2) {
        let class = quotient_class(z2, z2aut, u);
        if !seen.contains(&class) {
            seen.push(class);
        }
        if class == QuotientClass::ZeroKodairaNontrivialCanonical {
            match classify_quotient(z2, z2aut, u) {
                Ok(q) => point_only_ok &= q.euler == 8 && q.hodge.h11 - q.hodge.h21 == 3 && q.isolated_points == Some(16),
                Err(_) => point_only_ok = false,
            }
        }
    }
    let three = [QuotientClass::CrepantCalabiYau, QuotientClass::NegativeKodaira, QuotientClass::ZeroKodairaNontrivialCanonical]
        .iter()
        .all(|c| seen.contains(c));
    vec![
        line("D4 quotients are Calabi-Yau", d4_ok, ""),
        line("(Z/2)² Kodaira trichotomy", three && point_only_ok, format!("classes seen: {seen:?}")),
    ]
}

/// Runs the invariant suite on the default members of both families.
pub fn cmd_selfcheck(config: &RunConfig) -> Result<Report, ReportError> {
    let d4 = default_d4();
    let z2 = default_z2();
    let (a4, a2) = rayon::join(|| automorphism_group(&d4), || automorphism_group(&z2));
    let fams = [(&d4, &a4), (&z2, &a2)];
    let mut out = vec![fixtable_counts(&d4, &a4), aut_groups(&a4, &a2), free_counts(&fams), grid_oracle(&fams, config.grid)?];
    out.extend(hodge_and_picard(&d4, &z2));
    out.push(cross_consistency(&d4, &a4));
    out.push(normal_form_check(1000, 0x5eed));
    out.push(closure_and_homomorphism(&fams));
    out.push(freeness_consistency(&d4, &a4));
    out.extend(kodaira(&d4, &a4, &z2, &a2));
    Ok(Report::Selfcheck(out))
}
