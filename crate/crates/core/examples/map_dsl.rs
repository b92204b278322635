//! Parses maps of the torus, composes them and solves for their fixed points.

use cyquot::families::default_d4;
use cyquot::fixloc::is_free;
use cyquot::torus::parse_map;

fn main() {
    let setup = default_d4();
    let r = parse_map("(z2, -z1, z3 + 1/4)", &setup.shape).expect("r");
    let t = parse_map("(τ/2, 0, τ′/2)", &setup.shape).expect("translation");
    for (name, f) in [("r", r.clone()), ("t", t.clone()), ("r∘t", r.compose(&t)), ("r²", r.pow(2))] {
        println!("{name:>4} = {}  order {:?}", f.to_dsl(&setup.shape), f.order());
        println!("       fixed points on the torus: {}", f.has_fixed_point());
    }
    println!("r acts freely on X: {}", is_free(&r, &setup));
    if let Err(e) = parse_map("(z2, -z1, z3 + 1/)", &setup.shape) {
        println!("error: {e}");
    }
}
