#![allow(dead_code)]

pub mod oracle;

use cyquot::families::{automorphism_group, default_d4, AutGroupDescription, AutSubgroup, FamilySetup};
use cyquot::torus::parse_map;

/// One row of a quotient table: generator translations, h¹¹ = h²¹, π₁ label.
pub struct QuotientRow {
    pub gens: &'static [&'static str],
    pub h11: i64,
    pub pi1: &'static str,
}

const fn row(gens: &'static [&'static str], h11: i64, pi1: &'static str) -> QuotientRow {
    QuotientRow { gens, h11, pi1 }
}

pub const LAMBDA3_PRIME: &str = "0→Λ1⊕Λ2⊕Λ3′→π₁→D4→0";
pub const LAMBDA3_DPRIME: &str = "0→Λ1⊕Λ2⊕Λ3″→π₁→D4→0";
pub const LAMBDA3_TPRIME: &str = "0→Λ3‴→π₁→Z/2×Z/2→0";
pub const LAMBDA3: &str = "0→Λ3→π₁→Z/2×Z/2→0";

/// Order-2 quotients; the rows marked ≠1/2 in print use t₃ = 0.
pub const ORDER2_ROWS: &[QuotientRow] = &[
    row(&["(0, 0, τ′/2)"], 2, LAMBDA3_PRIME),
    row(&["(0, 0, (τ′+1)/2)"], 2, LAMBDA3_DPRIME),
    row(&["(0, 0, 1/2)"], 7, LAMBDA3_TPRIME),
    row(&["(τ/2, τ/2, 1/2)"], 6, "Z/2"),
    row(&["(τ/2, τ/2, 0)"], 4, "Z/2×Z/4"),
    row(&["(τ/2, (τ+1)/2, 1/2)"], 8, "{0}"),
    row(&["(τ/2, (τ+1)/2, 0)"], 6, "Z/2"),
    row(&["(0, 1/2, 1/2)"], 6, "Z/2"),
    row(&["(0, 1/2, 0)"], 4, "Z/2×Z/2"),
];

pub const ORDER4_ROWS: &[QuotientRow] = &[
    row(&["(0, 0, τ′/2)", "(0, 0, (τ′+1)/2)"], 7, LAMBDA3),
    row(&["(0, 0, τ′/2)", "(τ/2, τ/2, 1/2)"], 6, "Z/2"),
    row(&["(0, 0, τ′/2)", "(τ/2, τ/2, 0)"], 4, "Z/2×Z/4"),
    row(&["(0, 0, τ′/2)", "(τ/2, (τ+1)/2, 1/2)"], 8, "{0}"),
    row(&["(0, 0, τ′/2)", "(τ/2, (τ+1)/2, 0)"], 6, "Z/2"),
    row(&["(0, 0, τ′/2)", "(0, 1/2, 1/2)"], 6, "Z/2"),
    row(&["(0, 0, τ′/2)", "(0, 1/2, 0)"], 4, "Z/2×Z/2"),
    row(&["(0, 0, (τ′+1)/2)", "(τ/2, τ/2, 1/2)"], 6, "Z/2"),
    row(&["(0, 0, (τ′+1)/2)", "(τ/2, τ/2, 0)"], 4, "Z/2×Z/4"),
    row(&["(0, 0, (τ′+1)/2)", "(τ/2, (τ+1)/2, 1/2)"], 8, "{0}"),
    row(&["(0, 0, (τ′+1)/2)", "(τ/2, (τ+1)/2, 0)"], 6, "Z/2"),
    row(&["(0, 0, (τ′+1)/2)", "(0, 1/2, 1/2)"], 6, "Z/2"),
    row(&["(0, 0, (τ′+1)/2)", "(0, 1/2, 0)"], 4, "Z/2×Z/2"),
    row(&["(0, 0, 1/2)", "(τ/2, τ/2, 1/2)"], 12, "Z/2"),
    row(&["(0, 0, 1/2)", "(τ/2, τ/2, τ′/2)"], 10, "Z/2"),
    row(&["(0, 0, 1/2)", "(0, 1/2, 1/2)"], 12, "Z/2"),
    row(&["(0, 0, 1/2)", "(0, 1/2, τ′/2)"], 10, "Z/2"),
    row(&["(τ/2, τ/2, 1/2)", "(τ/2, (τ+1)/2, 1/2)"], 13, "{0}"),
    row(&["(τ/2, τ/2, 1/2)", "(τ/2, (τ+1)/2, τ′/2)"], 10, "{0}"),
    row(&["(τ/2, τ/2, 1/2)", "(τ/2, (τ+1)/2, (τ′+1)/2)"], 10, "{0}"),
    row(&["(τ/2, τ/2, 1/2)", "(τ/2, (τ+1)/2, 0)"], 14, "{0}"),
    row(&["(τ/2, τ/2, 0)", "(τ/2, (τ+1)/2, 1/2)"], 13, "{0}"),
    row(&["(τ/2, τ/2, 0)", "(τ/2, (τ+1)/2, τ′/2)"], 8, "Z/2"),
    row(&["(τ/2, τ/2, 0)", "(τ/2, (τ+1)/2, (τ′+1)/2)"], 8, "Z/2"),
    row(&["(τ/2, τ/2, 0)", "(τ/2, (τ+1)/2, 0)"], 10, "Z/2"),
    row(&["(τ/2, τ/2, τ′/2)", "(τ/2, (τ+1)/2, τ′/2)"], 8, "Z/2"),
    row(&["(τ/2, τ/2, τ′/2)", "(τ/2, (τ+1)/2, (τ′+1)/2)"], 10, "Z/2"),
    row(&["(τ/2, τ/2, τ′/2)", "(τ/2, (τ+1)/2, 0)"], 6, "Z/2"),
    row(&["(τ/2, τ/2, (τ′+1)/2)", "(τ/2, (τ+1)/2, 1/2)"], 7, "{0}"),
    row(&["(τ/2, τ/2, (τ′+1)/2)", "(τ/2, (τ+1)/2, τ′/2)"], 10, "Z/2"),
    row(&["(τ/2, τ/2, (τ′+1)/2)", "(τ/2, (τ+1)/2, (τ′+1)/2)"], 8, "Z/2"),
    row(&["(τ/2, τ/2, (τ′+1)/2)", "(τ/2, (τ+1)/2, 0)"], 6, "Z/2"),
];

pub const ORDER8_ROWS: &[QuotientRow] = &[
    row(&["(0, 0, τ′/2)", "(0, 0, 1/2)", "(τ/2, τ/2, 1/2)"], 12, "Z/2"),
    row(&["(0, 0, τ′/2)", "(0, 0, 1/2)", "(τ/2, (τ+1)/2, 1/2)"], 17, "{0}"),
    row(&["(0, 0, τ′/2)", "(0, 0, 1/2)", "(0, 1/2, 1/2)"], 12, "Z/2"),
    row(&["(0, 0, τ′/2)", "(τ/2, τ/2, 1/2)", "(τ/2, (τ+1)/2, 1/2)"], 13, "{0}"),
    row(&["(0, 0, τ′/2)", "(τ/2, τ/2, 1/2)", "(τ/2, (τ+1)/2, 0)"], 14, "{0}"),
    row(&["(0, 0, τ′/2)", "(τ/2, τ/2, 0)", "(τ/2, (τ+1)/2, 1/2)"], 13, "{0}"),
    row(&["(0, 0, τ′/2)", "(τ/2, τ/2, 0)", "(τ/2, (τ+1)/2, 0)"], 9, "Z/2"),
    row(&["(0, 0, (τ′+1)/2)", "(τ/2, τ/2, 1/2)", "(τ/2, (τ+1)/2, 1/2)"], 13, "{0}"),
    row(&["(0, 0, (τ′+1)/2)", "(τ/2, τ/2, 1/2)", "(τ/2, (τ+1)/2, 0)"], 14, "{0}"),
    row(&["(0, 0, (τ′+1)/2)", "(τ/2, τ/2, 0)", "(τ/2, (τ+1)/2, 1/2)"], 13, "{0}"),
    row(&["(0, 0, (τ′+1)/2)", "(τ/2, τ/2, 0)", "(τ/2, (τ+1)/2, 0)"], 10, "Z/2"),
    row(&["(0, 0, 1/2)", "(τ/2, τ/2, 1/2)", "(τ/2, (τ+1)/2, 1/2)"], 27, "{0}"),
    row(&["(0, 0, 1/2)", "(τ/2, τ/2, 1/2)", "(τ/2, (τ+1)/2, τ′/2)"], 20, "{0}"),
    row(&["(0, 0, 1/2)", "(τ/2, τ/2, τ′/2)", "(0, 1/2, 0)"], 18, "{0}"),
    row(&["(0, 0, 1/2)", "(τ/2, τ/2, τ′/2)", "(0, 1/2, τ′/2)"], 15, "{0}"),
];

/// Υ = Aut(X).
pub const FULL_AUT_ROW: QuotientRow = row(&[], 27, "{0}");

/// Fixed-locus counts in row order.
pub const FIXLOC_COUNTS: [usize; 9] = [0, 0, 5, 4, 2, 6, 4, 4, 2];

pub fn d4() -> (FamilySetup, AutGroupDescription) {
    let f = default_d4();
    let aut = automorphism_group(&f);
    (f, aut)
}

pub fn subgroup_of(setup: &FamilySetup, aut: &AutGroupDescription, gens: &[&str]) -> AutSubgroup {
    let maps: Vec<_> = gens.iter().map(|g| parse_map(g, &setup.shape).expect("generator parses")).collect();
    aut.subgroup_of_maps(&maps).expect("generators lie in Aut(X)")
}

/// Rows where the computed invariants differ from the printed tables, with the computed values.
/// The π₁ entries are confirmed by the brute-force oracle in `oracle.rs`.
pub const DISAGREEMENTS: &[QuotientRow] = &[
    row(&["(0, 1/2, 0)"], 4, "Z/2×Z/4"),
    row(&["(0, 0, τ′/2)", "(0, 1/2, 0)"], 4, "Z/2×Z/4"),
    row(&["(0, 0, (τ′+1)/2)", "(0, 1/2, 0)"], 4, "Z/2×Z/4"),
    row(&["(0, 0, 1/2)", "(τ/2, τ/2, τ′/2)"], 10, "Z/2×Z/2"),
    row(&["(0, 0, 1/2)", "(0, 1/2, τ′/2)"], 10, "Z/2×Z/2"),
    row(&["(τ/2, τ/2, 0)", "(τ/2, (τ+1)/2, τ′/2)"], 8, "{0}"),
    row(&["(τ/2, τ/2, 0)", "(τ/2, (τ+1)/2, (τ′+1)/2)"], 8, "{0}"),
    row(&["(τ/2, τ/2, 0)", "(τ/2, (τ+1)/2, 0)"], 10, "{0}"),
    row(&["(τ/2, τ/2, τ′/2)", "(τ/2, (τ+1)/2, τ′/2)"], 8, "{0}"),
    row(&["(τ/2, τ/2, τ′/2)", "(τ/2, (τ+1)/2, (τ′+1)/2)"], 10, "{0}"),
    row(&["(τ/2, τ/2, τ′/2)", "(τ/2, (τ+1)/2, 0)"], 6, "{0}"),
    row(&["(τ/2, τ/2, (τ′+1)/2)", "(τ/2, (τ+1)/2, τ′/2)"], 10, "{0}"),
    row(&["(τ/2, τ/2, (τ′+1)/2)", "(τ/2, (τ+1)/2, (τ′+1)/2)"], 8, "{0}"),
    row(&["(τ/2, τ/2, (τ′+1)/2)", "(τ/2, (τ+1)/2, 0)"], 6, "{0}"),
    row(&["(0, 0, τ′/2)", "(τ/2, τ/2, 0)", "(τ/2, (τ+1)/2, 0)"], 10, "{0}"),
    row(&["(0, 0, (τ′+1)/2)", "(τ/2, τ/2, 0)", "(τ/2, (τ+1)/2, 0)"], 10, "{0}"),
    row(&["(0, 0, 1/2)", "(τ/2, τ/2, τ′/2)", "(0, 1/2, 0)"], 20, "{0}"),
];

pub fn disagreement(gens: &[&str]) -> Option<&'static QuotientRow> {
    DISAGREEMENTS.iter().find(|r| r.gens == gens)
}

pub fn all_tables() -> impl Iterator<Item = (&'static str, usize, &'static QuotientRow)> {
    ORDER2_ROWS
        .iter()
        .map(|r| ("order 2", 2, r))
        .chain(ORDER4_ROWS.iter().map(|r| ("order 4", 4, r)))
        .chain(ORDER8_ROWS.iter().map(|r| ("order 8", 8, r)))
        .chain(std::iter::once(("Aut(X)", 16, &FULL_AUT_ROW)))
}

pub fn upsilon(setup: &FamilySetup, aut: &AutGroupDescription, r: &QuotientRow) -> AutSubgroup {
    if r.gens.is_empty() {
        aut.whole()
    } else {
        subgroup_of(setup, aut, r.gens)
    }
}
