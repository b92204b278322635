//! One PASS/FAIL line per acceptance criterion.
//!
//! Criteria 4 and 7 compare against printed table entries that disagree with the computation on
//! the rows in `common::DISAGREEMENTS`. Those criteria are reported as FAIL; the process exits
//! nonzero only if a criterion fails for any other reason.

mod common;

use std::collections::BTreeSet;
use std::time::Instant;

use common::{all_tables, d4, disagreement, upsilon, FIXLOC_COUNTS, ORDER2_ROWS};
use cyquot::families::{automorphism_group, default_z2, free_automorphisms, AutGroupDescription, FamilySetup};
use cyquot::fixloc::{brute_force_fixed_grid, class_label, fixed_locus_in_quotient, fixed_locus_table, surface_fixing_profile};
use cyquot::invariants::{classify_quotient, invariant_hodge, orbifold_hodge, picard_structure, quotient_class, QuotientClass};
use cyquot::pi1::{pi1_of_quotient, CoverClass};
use cyquot::ratlin::{rank, IntMat};
use cyquot::report::{cmd_selfcheck, RunConfig};

struct Outcome {
    passed: bool,
    detail: String,
    /// Failures explained entirely by recorded disagreements with print.
    known: bool,
}

fn gens(g: &[&str]) -> String {
    format!("⟨{}⟩", g.join("; "))
}

fn judge(ok: bool, detail: impl Into<String>) -> Outcome {
    Outcome { passed: ok, detail: detail.into(), known: false }
}

/// Rows of the fixed-locus table as printed, components in print order.
const FIXLOC_ROWS: [(&str, &str, &str, &[&str]); 9] = [
    ("0", "0", "τ′/2", &[]),
    ("0", "0", "(τ′+1)/2", &[]),
    ("0", "0", "1/2", &["C^{1}_{0,0}", "C^{1}_{τ/2,τ/2}", "C^{1}_{0,τ/2}", "C^{2}_{1/4,1/4}", "C^{2}_{1/4,1/4+τ/2}"]),
    ("τ/2", "τ/2", "1/2", &["C^{1}_{τ/4,τ/4}", "C^{2}_{(τ+1)/4,(τ+1)/4}", "C^{3}_{1/4,3/8}", "C^{3}_{1/4,3/8+τ′/2}"]),
    ("τ/2", "τ/2", "≠1/2", &["C^{3}_{1/4,β}", "C^{3}_{1/4,β+τ′/2}"]),
    (
        "τ/2",
        "(τ+1)/2",
        "1/2",
        &["C^{1}_{τ/4,(τ+1)/4}", "C^{1}_{τ/4,(3τ+1)/4}", "C^{9}_{0,3/8}", "C^{9}_{0,3/8+τ′/2}", "C^{5,τ/2}_{0}", "C^{5,τ/2}_{τ′/2}"],
    ),
    ("τ/2", "(τ+1)/2", "≠1/2", &["C^{9}_{0,β}", "C^{9}_{0,β+τ′/2}", "C^{5,τ/2}_{γ}", "C^{5,τ/2}_{γ+τ′/2}"]),
    ("0", "1/2", "1/2", &["C^{1}_{0,1/4}", "C^{1}_{0,1/4+τ/2}", "C^{5,0}_{0}", "C^{5,0}_{τ′/2}"]),
    ("0", "1/2", "≠1/2", &["C^{5,0}_{γ}", "C^{5,0}_{γ+τ′/2}"]),
];

fn c1_fixed_loci(setup: &FamilySetup, aut: &AutGroupDescription) -> Outcome {
    let start = Instant::now();
    let rows = fixed_locus_table(setup, aut).expect("fixed loci");
    let elapsed = start.elapsed();
    let counts: Vec<usize> = rows.iter().map(|r| r.count).collect();
    let mut bad = Vec::new();
    if rows.len() != FIXLOC_ROWS.len() {
        bad.push(format!("{} rows", rows.len()));
    }
    for (r, (t1, t2, t3, comps)) in rows.iter().zip(FIXLOC_ROWS) {
        let got: BTreeSet<&str> = r.components.iter().map(String::as_str).collect();
        let want: BTreeSet<&str> = comps.iter().copied().collect();
        if (r.t1.as_str(), r.t2.as_str(), r.t3.as_str()) != (t1, t2, t3) || got != want || r.components.len() != comps.len() || r.flagged {
            bad.push(format!("({t1}, {t2}, {t3})"));
        }
    }
    let ok = bad.is_empty() && counts == FIXLOC_COUNTS && elapsed.as_secs_f64() < 1.0;
    judge(ok, format!("counts {counts:?}, label mismatches {bad:?}, {:.2} s", elapsed.as_secs_f64()))
}

fn c2_aut(d4aut: &AutGroupDescription, z2aut: &AutGroupDescription) -> Outcome {
    let exp2 = d4aut.classes.iter().all(|c| c.order <= 2);
    let ok = d4aut.classes.len() == 16 && exp2 && z2aut.classes.len() == 128 && !z2aut.lower_bound;
    judge(ok, format!("|Aut| = {} (exponent 2: {exp2}) and {}", d4aut.classes.len(), z2aut.classes.len()))
}

fn c3_free(fams: &[(&FamilySetup, &AutGroupDescription)]) -> Outcome {
    let mut counts = Vec::new();
    let mut nonempty = Vec::new();
    for (f, a) in fams {
        let free = free_automorphisms(a);
        counts.push(free.len());
        for c in free {
            if !brute_force_fixed_grid(&c.rep, &f.covering, 16).expect("grid").is_empty() {
                nonempty.push(class_label(&c.rep, f));
            }
        }
    }
    judge(counts == [2, 26] && nonempty.is_empty(), format!("free classes {counts:?}, nonempty on the 1/16 grid: {nonempty:?}"))
}

fn c4_hodge(setup: &FamilySetup, aut: &AutGroupDescription, z2: &FamilySetup) -> Outcome {
    let base = |f: &FamilySetup| (invariant_hodge(&f.covering, 1, 1).unwrap(), invariant_hodge(&f.covering, 2, 1).unwrap());
    let bases = [base(setup), base(z2)];
    let mut per_table = std::collections::BTreeMap::<&str, usize>::new();
    let mut wrong = Vec::new();
    let mut unexplained = Vec::new();
    for (name, _, r) in all_tables() {
        *per_table.entry(name).or_default() += 1;
        let h = orbifold_hodge(setup, aut, &upsilon(setup, aut, r)).expect("hodge").hodge;
        if h.h11 != r.h11 {
            wrong.push(format!("{name} {}: {} (printed {})", gens(r.gens), h.h11, r.h11));
            if disagreement(r.gens).map(|d| d.h11) != Some(h.h11) {
                unexplained.push(r.gens);
            }
        }
    }
    let bases_ok = bases == [(2, 2), (3, 3)];
    Outcome {
        passed: bases_ok && wrong.is_empty(),
        detail: format!("base {bases:?}; rows {per_table:?}; differs from print: [{}]", wrong.join(", ")),
        known: bases_ok && unexplained.is_empty(),
    }
}

fn c5_cross(setup: &FamilySetup, aut: &AutGroupDescription) -> Outcome {
    let rows = fixed_locus_table(setup, aut).expect("fixed loci");
    let mut bad = Vec::new();
    let mut checked = 0;
    for (i, c) in aut.classes.iter().enumerate().filter(|(_, c)| !c.is_identity()) {
        let label = class_label(&c.rep, setup);
        let row = rows.iter().find(|r| r.classes.contains(&label)).expect("every class has a row");
        let h11 = orbifold_hodge(setup, aut, &aut.subgroup(&[i])).expect("hodge").hodge.h11;
        checked += 1;
        if h11 != 2 + row.count as i64 {
            bad.push(label);
        }
    }
    judge(bad.is_empty() && checked == 15 && ORDER2_ROWS.len() == 9, format!("{checked} order-2 subgroups over 9 rows, mismatches {bad:?}"))
}

fn c6_abelianization(setup: &FamilySetup, aut: &AutGroupDescription) -> Outcome {
    let p = pi1_of_quotient(setup, aut, &aut.subgroup(&[])).expect("π₁(X)");
    let pic = picard_structure(setup).expect("Picard");
    let ok = p.abelian_invariants == [2, 4, 4] && p.abelian_free_rank == 0 && pic.rank == 2 && pic.torsion == [2, 4, 4];
    judge(ok, format!("Ab(π₁(X)) torsion {:?} free rank {}; Pic ({}, {:?})", p.abelian_invariants, p.abelian_free_rank, pic.rank, pic.torsion))
}

fn expected_cover(label: &str) -> (CoverClass, Option<&str>) {
    if label.ends_with("→D4→0") {
        (CoverClass::TypeA, Some("D4"))
    } else if label.ends_with("→Z/2×Z/2→0") {
        (CoverClass::TypeK, Some("Z/2×Z/2"))
    } else {
        (CoverClass::Finite, None)
    }
}

fn c7_pi1(setup: &FamilySetup, aut: &AutGroupDescription) -> Outcome {
    let mut wrong = Vec::new();
    let mut unexplained = Vec::new();
    let mut cover_bad = Vec::new();
    let mut n = 0;
    for (name, _, r) in all_tables() {
        n += 1;
        let p = pi1_of_quotient(setup, aut, &upsilon(setup, aut, r)).expect("π₁");
        let (cover, pq) = expected_cover(&p.label);
        if p.cover_class != cover || p.point_quotient.as_deref() != pq {
            cover_bad.push(r.gens);
        }
        if p.label != r.pi1 {
            wrong.push(format!("{name} {}: {} (printed {})", gens(r.gens), p.label, r.pi1));
            if disagreement(r.gens).map(|d| d.pi1) != Some(p.label.as_str()) {
                unexplained.push(r.gens);
            }
        }
    }
    Outcome {
        passed: wrong.is_empty() && cover_bad.is_empty(),
        detail: format!("{n} rows; cover class mismatches {cover_bad:?}; differs from print: [{}]", wrong.join(", ")),
        known: cover_bad.is_empty() && unexplained.is_empty(),
    }
}

fn c8_z2z2(z2: &FamilySetup, aut: &AutGroupDescription) -> Outcome {
    let mut bad = Vec::new();
    let (mut vp, mut point_only) = (0, 0);
    for u in aut.subgroups(2).iter().filter(|u| u.order() == 2) {
        let q = classify_quotient(z2, aut, u).expect("invariants");
        let i = u.nontrivial(aut).next().expect("order 2");
        let alpha = &aut.classes[i].rep;
        if aut.classes[i].volume_preserving {
            vp += 1;
            let fix = fixed_locus_in_quotient(alpha, z2, &u.lifts(aut)).expect("fixed locus").upsilon_orbit_count as i64;
            if q.euler != 0 || q.hodge.h11 != 3 + fix || q.hodge.h21 != 3 + fix {
                bad.push(class_label(alpha, z2));
            }
        } else {
            let prof = surface_fixing_profile(alpha, z2);
            if prof.fixes_points && !prof.fixes_curves && !prof.fixes_surfaces {
                point_only += 1;
                if q.hodge.h11 - q.hodge.h21 != 3 || q.euler != 8 || q.isolated_points != Some(16) {
                    bad.push(class_label(alpha, z2));
                }
            }
        }
    }
    judge(bad.is_empty() && vp > 0 && point_only > 0, format!("{vp} volume-preserving, {point_only} point-only; failures {bad:?}"))
}

/// Largest complex dimension of a fixed component of any lift of the class, from ker(L − 1).
fn max_fixed_dim(aut: &AutGroupDescription, i: usize) -> Option<usize> {
    aut.classes[i]
        .members
        .iter()
        .filter(|m| m.has_fixed_point())
        .map(|m| {
            let l = m.complex_linear();
            l.rows() - rank(&l.sub(&IntMat::identity(l.rows())))
        })
        .max()
}

fn c9_kodaira(setup: &FamilySetup, aut: &AutGroupDescription, z2: &FamilySetup, z2aut: &AutGroupDescription) -> Outcome {
    let subs = aut.subgroups(16);
    let d4_bad = subs
        .iter()
        .filter(|u| !matches!(classify_quotient(setup, aut, u).map(|q| q.class), Ok(QuotientClass::CrepantCalabiYau | QuotientClass::SmoothFreeQuotient)))
        .count();
    let mut seen = BTreeSet::new();
    let mut mismatched = Vec::new();
    for u in z2aut.subgroups(2).iter().filter(|u| u.order() == 2) {
        let i = u.nontrivial(z2aut).next().expect("order 2");
        let c = &z2aut.classes[i];
        let want = if c.free {
            QuotientClass::SmoothFreeQuotient
        } else if c.volume_preserving {
            QuotientClass::CrepantCalabiYau
        } else if max_fixed_dim(z2aut, i) == Some(2) {
            QuotientClass::NegativeKodaira
        } else {
            QuotientClass::ZeroKodairaNontrivialCanonical
        };
        let got = quotient_class(z2, z2aut, u);
        seen.insert(format!("{got:?}"));
        if got != want {
            mismatched.push(class_label(&c.rep, z2));
        }
    }
    let three = ["CrepantCalabiYau", "NegativeKodaira", "ZeroKodairaNontrivialCanonical"].iter().all(|c| seen.contains(*c));
    judge(
        d4_bad == 0 && three && mismatched.is_empty(),
        format!("{} D4 subgroups, {d4_bad} not Calabi-Yau; Z2Z2 classes {seen:?}; mismatches {mismatched:?}", subs.len()),
    )
}

fn c10_selfcheck() -> Outcome {
    let start = Instant::now();
    let report = cmd_selfcheck(&RunConfig::default()).expect("default grid is valid");
    let secs = start.elapsed().as_secs_f64();
    let failed: Vec<String> = match &report {
        cyquot::report::Report::Selfcheck(lines) => lines.iter().filter(|l| !l.passed).map(|l| l.name.clone()).collect(),
        _ => vec!["not a selfcheck report".into()],
    };
    judge(report.passed() && secs < 60.0, format!("selfcheck {secs:.1} s, failed checks {failed:?}"))
}

fn main() {
    let (setup, aut) = d4();
    let z2 = default_z2();
    let z2aut = automorphism_group(&z2);
    let fams = [(&setup, &aut), (&z2, &z2aut)];
    let outcomes = [
        ("fixed-locus table", c1_fixed_loci(&setup, &aut)),
        ("automorphism groups", c2_aut(&aut, &z2aut)),
        ("free automorphisms", c3_free(&fams)),
        ("Hodge numbers", c4_hodge(&setup, &aut, &z2)),
        ("cross-consistency", c5_cross(&setup, &aut)),
        ("abelianization and Picard", c6_abelianization(&setup, &aut)),
        ("fundamental groups", c7_pi1(&setup, &aut)),
        ("Z2Z2 quotient invariants", c8_z2z2(&z2, &z2aut)),
        ("Kodaira trichotomy", c9_kodaira(&setup, &aut, &z2, &z2aut)),
        ("property suites", c10_selfcheck()),
    ];
    let mut unexpected = 0;
    for (i, (name, o)) in outcomes.iter().enumerate() {
        let verdict = if o.passed { "PASS" } else { "FAIL" };
        println!("criterion {:>2} {verdict} {name}: {}", i + 1, o.detail);
        if !o.passed && !o.known {
            unexpected += 1;
        }
    }
    if unexpected > 0 {
        println!("{unexpected} criteria failed outside the recorded disagreements");
        std::process::exit(1);
    }
}
