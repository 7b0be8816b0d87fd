//! Cross-module invariants checked against the exact oracle.

use num_rational::BigRational;
use proptest::prelude::*;
use semigrid::automata::checkers::compile_lt_checker;
use semigrid::automata::{convolve, equivalent, minimize};
use semigrid::geometry::{rotate, squared_distance, Point};
use semigrid::grids::{grid_by_name, shipped_grids};
use semigrid::mulconst::mul_by_integer;
use semigrid::normalize::normalize;
use semigrid::sign::{compare, sign_of};
use semigrid::{LaurentDigits, Sign};

fn vector(bound: i64) -> impl Strategy<Value = LaurentDigits> {
    (-3i64..3, prop::collection::vec(-bound..=bound, 0..7))
        .prop_map(|(top, ds)| LaurentDigits::from_msb_digits(top, &ds))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn normal_forms_keep_value_and_sign(x in vector(40), which in 0usize..5) {
        let g = &shipped_grids()[which];
        let n = normalize(g, &x);
        prop_assert!(g.is_normal(&n));
        prop_assert_eq!(g.oracle().sign_at(&(&n - &x)), Sign::Zero);
        prop_assert_eq!(sign_of(g, &n).unwrap(), g.oracle().sign_at(&x));
    }

    #[test]
    fn integer_multiples_scale_the_value(x in vector(3), n in -20i64..20) {
        let g = grid_by_name("sqrt3half").unwrap();
        let y = mul_by_integer(&g, n, &x);
        let expect = x.scale(&n.into());
        prop_assert_eq!(compare(&g, &y, &normalize(&g, &expect)).unwrap(), std::cmp::Ordering::Equal);
    }

    #[test]
    fn lt_checker_matches_compare(x in vector(3), y in vector(3)) {
        let g = grid_by_name("sqrt2half").unwrap();
        let mut dfa = compile_lt_checker(&g).unwrap();
        let got = dfa.run(&convolve(&[x.clone(), y.clone()]).letters).unwrap();
        prop_assert_eq!(got, g.oracle().sign_at(&(&x - &y)) == Sign::Negative);
    }

    #[test]
    fn quarter_turns_preserve_distance(x in vector(3), y in vector(3), turns in 0i64..4) {
        let g = grid_by_name("sqrt2half").unwrap();
        let p = Point::new(x, y);
        let q = rotate(&g, &p, 90 * turns + 45).unwrap();
        let o = Point::origin();
        let d0 = squared_distance(&g, &o, &p);
        let d1 = squared_distance(&g, &o, &q);
        prop_assert_eq!(g.oracle().sign_at(&(&d0 - &d1)), Sign::Zero);
    }
}

#[test]
fn minimization_preserves_language() {
    let g = grid_by_name("d10").unwrap();
    let explicit = compile_lt_checker(&g).unwrap().materialize().unwrap();
    let small = minimize(&explicit);
    assert!(small.state_count() < explicit.state_count());
    assert_eq!(equivalent(&explicit, &small).unwrap(), None);
}

#[test]
fn oracle_brackets_rationals() {
    let g = grid_by_name("d10").unwrap();
    let x: LaurentDigits = "{0:3,-2:7}".parse().unwrap();
    let prec = BigRational::new(1.into(), 1000.into());
    let (lo, hi) = g.oracle().approx_value(&x, &prec);
    let exact = BigRational::new(307.into(), 100.into());
    assert!(lo <= exact && exact <= hi);
}
