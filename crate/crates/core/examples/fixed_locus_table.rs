//! The fixed-locus table for the D4 family, each class checked on the 1/N grid.
//!
//! `cargo run --release --example fixed_locus_table -- 8` picks a different grid.

use cyquot::families::{automorphism_group, default_d4};
use cyquot::fixloc::{class_label, fixed_locus_table, fixed_locus_upstairs, verify_against_grid};

fn main() {
    let n: i64 = std::env::args().nth(1).map(|s| s.parse().expect("grid size")).unwrap_or(16);
    let setup = default_d4();
    let aut = automorphism_group(&setup);
    for row in fixed_locus_table(&setup, &aut).expect("fixed loci") {
        let comps = if row.components.is_empty() { "∅".to_string() } else { row.components.join(" ∪ ") };
        println!("({}, {}, {})  {comps}  [{}]", row.t1, row.t2, row.t3, row.count);
    }
    let mut disagree = 0;
    for c in &aut.classes {
        let comps = fixed_locus_upstairs(&c.rep, &setup.covering);
        let check = verify_against_grid(&c.rep, &setup.covering, &comps, n).expect("grid");
        if !check.agree {
            disagree += 1;
            println!("grid mismatch for {}", class_label(&c.rep, &setup));
        }
    }
    println!("grid 1/{n}: {disagree} of {} classes disagree", aut.classes.len());
}
