//! Hermite and Smith normal forms of a small integer matrix, and a randomized check.

use cyquot::ratlin::{hnf, invariant_factors, snf, IntMat};
use cyquot::report::normal_form_check;

fn show(name: &str, m: &IntMat) {
    println!("{name}:");
    for r in m.to_rows() {
        println!("  {}", r.iter().map(|x| format!("{x:>4}")).collect::<String>());
    }
}

fn main() {
    let m = IntMat::from_i64(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]);
    show("M", &m);
    let (h, u) = hnf(&m);
    show("H = U·M", &h);
    assert_eq!(u.dot(&m), h);
    let (s, _, _) = snf(&m);
    show("S", &s);
    println!("invariant factors {:?}", invariant_factors(&m));
    let line = normal_form_check(200, 7);
    println!("{}: {}", line.name, line.detail);
}
