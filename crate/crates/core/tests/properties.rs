mod common;

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

use cyquot::families::{automorphism_group, default_d4, default_z2, AutGroupDescription, FamilySetup};
use cyquot::fixloc::{fixed_locus_upstairs, verify_against_grid};
use cyquot::pi1::{abelian_invariants_u64, build_gamma, f_gamma, pi1_of_quotient};
use cyquot::ratlin::{hnf, invariant_factors, snf, IntMat};
use cyquot::report::{cmd_quotients, Format, Report, RunConfig, Selector};
use cyquot::torus::parse_map;

struct Fam {
    setup: FamilySetup,
    aut: AutGroupDescription,
}

fn fams() -> &'static [Fam; 2] {
    static F: OnceLock<[Fam; 2]> = OnceLock::new();
    F.get_or_init(|| {
        [default_d4(), default_z2()].map(|setup| {
            let aut = automorphism_group(&setup);
            Fam { setup, aut }
        })
    })
}

/// Fraction-free determinant.
fn det(m: &IntMat) -> BigInt {
    let n = m.rows();
    let mut a = m.to_rows();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| !a[i][k].is_zero()) else { return BigInt::zero() };
        if p != k {
            a.swap(p, k);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

fn unimodular(m: &IntMat) -> bool {
    m.is_square() && det(m).abs().is_one()
}

fn matrix() -> impl Strategy<Value = IntMat> {
    (1usize..7, 1usize..7).prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(-20i64..=20, c), r).prop_map(|rows| IntMat::from_i64(&rows)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn hermite_form_reconstructs(m in matrix()) {
        let (h, u) = hnf(&m);
        prop_assert!(unimodular(&u));
        prop_assert_eq!(u.dot(&m), h.clone());
        let mut col = 0;
        let mut zero_seen = false;
        for i in 0..h.rows() {
            match (col..h.cols()).find(|&j| !h.get(i, j).is_zero()) {
                None => zero_seen = true,
                Some(p) => {
                    prop_assert!(!zero_seen, "nonzero row below a zero row");
                    prop_assert!(h.get(i, p).is_positive());
                    for k in 0..i {
                        prop_assert!(!h.get(k, p).is_negative() && h.get(k, p) < h.get(i, p));
                    }
                    col = p + 1;
                }
            }
        }
    }

    #[test]
    fn smith_form_reconstructs(m in matrix()) {
        let (s, u, v) = snf(&m);
        prop_assert!(unimodular(&u) && unimodular(&v));
        prop_assert_eq!(u.dot(&m).dot(&v), s.clone());
        let d: Vec<BigInt> = (0..s.rows().min(s.cols())).map(|i| s.get(i, i).clone()).collect();
        for i in 0..s.rows() {
            for j in 0..s.cols() {
                prop_assert!(i == j || s.get(i, j).is_zero());
            }
        }
        for w in d.windows(2) {
            prop_assert!(!w[0].is_negative());
            let divides = if w[0].is_zero() { w[1].is_zero() } else { (&w[1] % &w[0]).is_zero() };
            prop_assert!(divides);
        }
        if m.is_square() {
            prop_assert_eq!(d.iter().product::<BigInt>(), det(&m).abs());
        }
        let nonzero: Vec<BigInt> = d.into_iter().filter(|x| !x.is_zero()).collect();
        let inv = invariant_factors(&m);
        prop_assert!(inv.iter().all(|x| nonzero.contains(x)));
    }

    #[test]
    fn grid_solver_agrees_on_random_grids(f in 0usize..2, class in 0usize..128, k in 1i64..=5) {
        let fam = &fams()[f];
        let c = &fam.aut.classes[class % fam.aut.classes.len()];
        let comps = fixed_locus_upstairs(&c.rep, &fam.setup.covering);
        prop_assert!(verify_against_grid(&c.rep, &fam.setup.covering, &comps, 4 * k).unwrap().agree);
    }

    #[test]
    fn class_multiplication_is_composition(f in 0usize..2, i in 0usize..128, j in 0usize..128, k in 0usize..128, mi in 0usize..16, mj in 0usize..16) {
        let a = &fams()[f].aut;
        let n = a.classes.len();
        let (i, j, k) = (i % n, j % n, k % n);
        let x = &a.classes[i].members[mi % a.classes[i].members.len()];
        let y = &a.classes[j].members[mj % a.classes[j].members.len()];
        prop_assert_eq!(a.class_of(&x.compose(y)), Some(a.multiply(i, j)));
        prop_assert_eq!(a.multiply(a.multiply(i, j), k), a.multiply(i, a.multiply(j, k)));
        prop_assert_eq!(a.class_of(&x.inverse()).map(|inv| a.multiply(i, inv)), Some(a.identity()));
    }

    #[test]
    fn generated_subgroups_are_closed(f in 0usize..2, gens in prop::collection::vec(0usize..128, 0..3)) {
        let a = &fams()[f].aut;
        let gens: Vec<usize> = gens.into_iter().map(|g| g % a.classes.len()).collect();
        let u = a.subgroup(&gens);
        prop_assert!(gens.iter().all(|&g| u.contains(g)));
        for &x in &u.elements {
            for &y in &u.elements {
                prop_assert!(u.contains(a.multiply(x, y)));
            }
        }
        prop_assert_eq!(a.classes.len() % u.order(), 0);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn abelianization_ignores_generator_order(gens in prop::collection::vec(1usize..16, 1..4), seed in any::<u64>()) {
        let fam = &fams()[0];
        let (f, a) = (&fam.setup, &fam.aut);
        let maps: Vec<_> = gens.iter().map(|&g| a.classes[g].rep.clone()).collect();
        let mut shuffled: Vec<_> = maps.iter().rev().cloned().collect();
        let r = (seed as usize) % shuffled.len();
        shuffled.rotate_left(r);
        // a redundant product of two generators must not change the group either
        shuffled.push(maps[0].compose(&maps[maps.len() - 1]));
        let u = a.subgroup_of_maps(&maps).unwrap();
        let v = a.subgroup_of_maps(&shuffled).unwrap();
        prop_assert_eq!(&u.elements, &v.elements);
        let gu = build_gamma(f, a, &u).unwrap();
        let gv = build_gamma(f, a, &v).unwrap();
        let fu = f_gamma(&gu).unwrap();
        let fv = f_gamma(&gv).unwrap();
        prop_assert_eq!(abelian_invariants_u64(&gu, Some(&fu)), abelian_invariants_u64(&gv, Some(&fv)));
        prop_assert_eq!(abelian_invariants_u64(&gu, None), abelian_invariants_u64(&gv, None));
    }

    #[test]
    fn fixed_point_subgroup_trivial_iff_free(gens in prop::collection::vec(1usize..16, 1..4)) {
        let fam = &fams()[0];
        let (f, a) = (&fam.setup, &fam.aut);
        let u = a.subgroup(&gens);
        let free = u.nontrivial(a).all(|i| a.classes[i].free);
        let fg = f_gamma(&build_gamma(f, a, &u).unwrap()).unwrap();
        prop_assert_eq!(fg.is_trivial(), free);
        if free {
            let p = pi1_of_quotient(f, a, &u).unwrap();
            prop_assert!(!p.finite);
        }
    }

    #[test]
    fn maps_round_trip_through_the_dsl(f in 0usize..2, i in 0usize..128, m in 0usize..16) {
        let fam = &fams()[f];
        let c = &fam.aut.classes[i % fam.aut.classes.len()];
        let x = &c.members[m % c.members.len()];
        prop_assert_eq!(&parse_map(&x.to_dsl(&fam.setup.shape), &fam.setup.shape).unwrap(), x);
    }
}

#[test]
fn grid_oracle_agrees_on_every_class_at_sixteen() {
    for fam in fams() {
        for c in &fam.aut.classes {
            let comps = fixed_locus_upstairs(&c.rep, &fam.setup.covering);
            let check = verify_against_grid(&c.rep, &fam.setup.covering, &comps, 16).unwrap();
            assert!(check.agree, "{}", c.rep.to_dsl(&fam.setup.shape));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn reports_are_deterministic_and_round_trip(gens in prop::collection::vec(1usize..16, 1..3), fmt in 0usize..3) {
        let fam = &fams()[0];
        let described = fam.aut.subgroup(&gens).describe(&fam.aut, &fam.setup);
        let text = format!("family = d4\nsubgroup = {}\n", described.join("; "));
        let cfg = RunConfig::parse(&text).unwrap();
        prop_assert_eq!(&cfg.subgroup, &Selector::Generators(described.clone()));
        let a = cmd_quotients(&cfg).unwrap();
        let b = cmd_quotients(&cfg).unwrap();
        prop_assert_eq!(&a, &b);
        let format = [Format::Markdown, Format::Csv, Format::Json][fmt];
        let back = Report::from_json(&a.render(Format::Json)).unwrap();
        prop_assert_eq!(back.render(format), a.render(format));
    }

    #[test]
    fn config_keys_commute(perm in Just(vec![0usize, 1, 2, 3, 4]).prop_shuffle()) {
        let lines = ["family = z2z2", "format = csv", "grid = 8", "oracle = true", "u3 = (τ3+1)/2"];
        let text: String = perm.iter().map(|&i| format!("{}\n", lines[i])).collect();
        let cfg = RunConfig::parse(&text).unwrap();
        prop_assert_eq!(cfg, RunConfig::parse(&lines.join("\n")).unwrap());
    }
}
