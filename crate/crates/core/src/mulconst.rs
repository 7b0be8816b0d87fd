//! Multiplication of a grid element by a fixed constant.

use crate::digits::LaurentDigits;
use crate::grids::Grid;
use crate::normalize::normalize;

/// `gamma(u) · x(u)` in normal form, `gamma` being any integer Laurent
/// polynomial in `u`.
pub fn mul_by_poly(grid: &Grid, gamma: &LaurentDigits, x: &LaurentDigits) -> LaurentDigits {
    normalize(grid, &gamma.convolve_poly(x))
}

/// Multiplication by a grid element given by its digits.
pub fn mul_by_grid_constant(
    grid: &Grid,
    gamma: &LaurentDigits,
    x: &LaurentDigits,
) -> LaurentDigits {
    mul_by_poly(grid, gamma, x)
}

/// `n · x` for an integer `n`.
pub fn mul_by_integer(grid: &Grid, n: i64, x: &LaurentDigits) -> LaurentDigits {
    mul_by_poly(grid, &LaurentDigits::monomial(0, n), x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automata::{checkers::compile_mulconst_checker, convolve};
    use crate::grids::{make_grid, shipped_grids, ConstKind, GridKind};
    use crate::sign::equal;
    use proptest::prelude::*;

    fn d(s: &str) -> LaurentDigits {
        s.parse().unwrap()
    }

    #[test]
    fn examples() {
        let g = make_grid(GridKind::Sqrt2Half).unwrap();
        let x = d("{1:3,0:5,-2:-1}");
        assert_eq!(mul_by_poly(&g, &d("{0:1}"), &x), normalize(&g, &x));
        let p2 = g.spec().p2.clone().unwrap();
        let one = d("{0:1}");
        assert_eq!(mul_by_poly(&g, &p2, &one), d("{0:2,-1:-2}"));
        let two = mul_by_poly(&g, &p2, &mul_by_poly(&g, &p2, &one));
        assert!(equal(&g, &two, &d("{0:2}")).unwrap());
        let inv = g.const_digits(ConstKind::InvB).unwrap();
        assert_eq!(mul_by_grid_constant(&g, &inv, &one), d("{-1:2,-2:-1}"));
        assert_eq!(mul_by_grid_constant(&g, &d("{}"), &x), d("{}"));

        let g = make_grid(GridKind::SqrtB2m1Half(2)).unwrap();
        let half = g.const_digits(ConstKind::Half).unwrap();
        let sqrt3 = g.const_digits(ConstKind::C).unwrap();
        assert_eq!(mul_by_grid_constant(&g, &half, &sqrt3), d("{0:1,-1:-1}"));
    }

    fn vector(bound: i64) -> impl Strategy<Value = LaurentDigits> {
        prop::collection::btree_map(-6i64..=6, -bound..=bound, 0..8)
            .prop_map(LaurentDigits::from_pairs)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn bilinear(x in vector(3), y in vector(3), which in 0usize..5) {
            let g = &shipped_grids()[which];
            let c = g.const_digits(ConstKind::C).unwrap_or_else(|_| d("{0:3}"));
            let x = normalize(g, &x);
            let y = normalize(g, &y);
            let lhs = mul_by_grid_constant(g, &c, &(&x + &y));
            let rhs = &mul_by_grid_constant(g, &c, &x) + &mul_by_grid_constant(g, &c, &y);
            prop_assert!(equal(g, &lhs, &rhs).unwrap());
        }

        #[test]
        fn agrees_with_checker(x in vector(3)) {
            let g = make_grid(GridKind::Sqrt2Half).unwrap();
            let c = g.const_digits(ConstKind::C).unwrap();
            let x = normalize(&g, &x);
            let y = mul_by_grid_constant(&g, &c, &x);
            let mut checker = compile_mulconst_checker(&g, &c, &d("{0:1}")).unwrap();
            prop_assert!(checker.run(&convolve(&[x, y]).letters).unwrap());
        }
    }
}
