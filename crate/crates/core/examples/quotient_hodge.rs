//! Hodge numbers and birational class of X/Υ for Υ given on the command line.
//!
//! `cargo run --release --example quotient_hodge -- d4 "(0,1/2,0)" "(τ/2,τ/2,τ′/2)"`

use cyquot::families::{automorphism_group, default_d4, default_z2};
use cyquot::invariants::classify_quotient;
use cyquot::torus::parse_map;

fn main() {
    let mut args = std::env::args().skip(1);
    let setup = match args.next().as_deref() {
        Some("z2z2") => default_z2(),
        _ => default_d4(),
    };
    let gens: Vec<String> = args.collect();
    let aut = automorphism_group(&setup);
    let maps: Vec<_> = gens.iter().map(|g| parse_map(g, &setup.shape).expect("map literal")).collect();
    let upsilon = aut.subgroup_of_maps(&maps).expect("maps lie in Aut(X)");
    let q = classify_quotient(&setup, &aut, &upsilon).expect("invariants");
    println!("Υ = ⟨{}⟩, |Υ| = {}", upsilon.describe(&aut, &setup).join("; "), upsilon.order());
    println!("{:?}: h11 = {}, h21 = {}, e = {}", q.class, q.hodge.h11, q.hodge.h21, q.euler);
    println!("π₁ = {}", q.pi1.label);
    if let Some(p) = q.isolated_points {
        println!("isolated points: {p}");
    }
}
