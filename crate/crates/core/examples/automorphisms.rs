//! Lists Aut(X) for both families and marks the classes acting freely.

use cyquot::families::{automorphism_group, default_d4, default_z2, free_automorphisms};
use cyquot::fixloc::class_label;

fn main() {
    for setup in [default_d4(), default_z2()] {
        let aut = automorphism_group(&setup);
        println!("{:?}: |Aut(X)| = {}, exponent {}", setup.tag, aut.classes.len(), aut.exponent);
        for (i, c) in aut.classes.iter().enumerate() {
            let mark = if c.free { "  free" } else { "" };
            println!("  {i:>3}  order {}  {}{mark}", c.order, class_label(&c.rep, &setup));
        }
        println!("  {} free classes\n", free_automorphisms(&aut).len());
    }
}
