//! Sorts the order-2 quotients of the Z2×Z2 family by birational type.

use std::collections::BTreeMap;

use cyquot::families::{automorphism_group, default_z2};
use cyquot::invariants::classify_quotient;

fn main() {
    let setup = default_z2();
    let aut = automorphism_group(&setup);
    let mut by_class = BTreeMap::new();
    for u in aut.subgroups(2).iter().filter(|u| u.order() == 2) {
        let q = classify_quotient(&setup, &aut, u).expect("invariants");
        by_class.entry(format!("{:?}", q.class)).or_insert_with(Vec::new).push((u.describe(&aut, &setup), q));
    }
    for (class, qs) in &by_class {
        println!("{class}: {}", qs.len());
        for (g, q) in qs.iter().take(3) {
            println!("  {}  h11={} h21={} e={}", g.join("; "), q.hodge.h11, q.hodge.h21, q.euler);
        }
    }
}
