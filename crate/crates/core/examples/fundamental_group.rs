//! π₁ of X and of every quotient of the D4 family by a subgroup of order at most 4.

use cyquot::families::{automorphism_group, default_d4};
use cyquot::pi1::pi1_of_quotient;

fn main() {
    let setup = default_d4();
    let aut = automorphism_group(&setup);
    let x = pi1_of_quotient(&setup, &aut, &aut.subgroup(&[])).expect("π₁(X)");
    println!("π₁(X) = {}, abelian invariants {:?}", x.label, x.abelian_invariants);
    for u in aut.subgroups(4).iter().filter(|u| u.order() > 1) {
        let p = pi1_of_quotient(&setup, &aut, u).expect("π₁");
        println!("⟨{}⟩  {}  ({:?})", u.describe(&aut, &setup).join("; "), p.label, p.cover_class);
    }
}
