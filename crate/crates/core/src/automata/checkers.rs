//! Relation checkers built from linear-form sign automata.

use super::{determinize, project_track, Dfa, LazyDfa, LinearAutomaton, LinearForm, SignSet};
use crate::digits::LaurentDigits;
use crate::error::{Error, Result};
use crate::grids::Grid;
use crate::sign::Sign;

fn one() -> LaurentDigits {
    LaurentDigits::monomial(0, 1)
}

fn minus_one() -> LaurentDigits {
    LaurentDigits::monomial(0, -1)
}

/// Three tracks; accepts `conv(x, y, z)` iff `x + y = z`.
pub fn compile_addition_checker(grid: &Grid) -> Result<LazyDfa<LinearAutomaton>> {
    let form = LinearForm::new(vec![one(), one(), minus_one()]);
    Ok(LazyDfa::new(LinearAutomaton::new(
        grid,
        form,
        SignSet::ZERO,
    )?))
}

/// Two tracks; accepts `conv(x, y)` iff `x < y`.
pub fn compile_lt_checker(grid: &Grid) -> Result<LazyDfa<LinearAutomaton>> {
    let form = LinearForm::new(vec![one(), minus_one()]);
    Ok(LazyDfa::new(LinearAutomaton::new(
        grid,
        form,
        SignSet::NEGATIVE,
    )?))
}

/// Two tracks; accepts `conv(x, y)` iff `x = y` as values.
pub fn compile_eq_checker(grid: &Grid) -> Result<LazyDfa<LinearAutomaton>> {
    let form = LinearForm::new(vec![one(), minus_one()]);
    Ok(LazyDfa::new(LinearAutomaton::new(
        grid,
        form,
        SignSet::ZERO,
    )?))
}

fn mulconst_form(grid: &Grid, num: &LaurentDigits, den: &LaurentDigits) -> Result<LinearForm> {
    if grid.value_sign(den) == Sign::Zero {
        return Err(Error::ZeroDenominator);
    }
    Ok(LinearForm::new(vec![num.clone(), -den]))
}

/// Two tracks; accepts `conv(x, y)` iff `x · num(u) = y · den(u)`.
pub fn compile_mulconst_checker(
    grid: &Grid,
    num: &LaurentDigits,
    den: &LaurentDigits,
) -> Result<LazyDfa<LinearAutomaton>> {
    let form = mulconst_form(grid, num, den)?;
    Ok(LazyDfa::new(LinearAutomaton::new(
        grid,
        form,
        SignSet::ZERO,
    )?))
}

/// `{x : ∃y. x · num = y · den}` with both tracks restricted to digits in
/// `lo..=hi`, as an explicit automaton over the `x` track. Built by
/// materializing the checker, hiding the `y` track and determinizing.
pub fn multiples_language(
    grid: &Grid,
    num: &LaurentDigits,
    den: &LaurentDigits,
    lo: i64,
    hi: i64,
    cap: usize,
) -> Result<Dfa<bool>> {
    let form = mulconst_form(grid, num, den)?;
    let checker = LinearAutomaton::with_ranges(grid, form, vec![(lo, hi); 2], SignSet::ZERO)?;
    let explicit = LazyDfa::with_cap(checker, cap).materialize()?;
    determinize(&project_track(&explicit, 1)?, cap)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automata::{convolve, equivalent, minimize, Cell, Letter};
    use crate::grids::{make_grid, ConstKind, GridKind};
    use crate::normalize::normalize;

    fn d(s: &str) -> LaurentDigits {
        s.parse().unwrap()
    }

    #[test]
    fn addition_examples() {
        let g = make_grid(GridKind::Sqrt2Half).unwrap();
        let mut add = compile_addition_checker(&g).unwrap();
        let p = d("{1:3,0:-2,-2:1}");
        assert!(add
            .run(&convolve(&[p.clone(), d("{}"), p]).letters)
            .unwrap());
        let sqrt2 = g.const_digits(ConstKind::C).unwrap();
        let twice = normalize(&g, &d("{0:4,-1:-4}"));
        assert!(add
            .run(&convolve(&[sqrt2.clone(), sqrt2, twice]).letters)
            .unwrap());
        let one = d("{0:1}");
        assert!(!add
            .run(&convolve(&[one.clone(), one.clone(), one]).letters)
            .unwrap());
    }

    #[test]
    fn mulconst_examples() {
        let g = make_grid(GridKind::Db(10)).unwrap();
        let mut c = compile_mulconst_checker(&g, &d("{0:3}"), &d("{0:2}")).unwrap();
        // 1.2 · 3/2 = 1.8
        assert!(c
            .run(&convolve(&[d("{0:1,-1:2}"), d("{0:1,-1:8}")]).letters)
            .unwrap());
        assert!(!c
            .run(&convolve(&[d("{0:1,-1:2}"), d("{0:1,-1:7}")]).letters)
            .unwrap());
        let g = make_grid(GridKind::Sqrt2Half).unwrap();
        let p2 = g.const_digits(ConstKind::C).unwrap();
        let mut c = compile_mulconst_checker(&g, &p2.convolve_poly(&p2), &d("{0:1}")).unwrap();
        assert!(c.run(&convolve(&[d("{0:1}"), d("{0:2}")]).letters).unwrap());
        let p3 = g.p3_digits();
        assert!(matches!(
            compile_mulconst_checker(&g, &d("{0:1}"), &p3),
            Err(Error::ZeroDenominator)
        ));
    }

    #[test]
    fn multiples_of_three() {
        let g = make_grid(GridKind::Db(10)).unwrap();
        let lang = multiples_language(&g, &d("{0:1}"), &d("{0:3}"), 0, 9, 1_000_000).unwrap();
        let word = |x: &str| convolve(&[d(x)]).letters;
        assert!(lang.run(&word("{0:1,-1:2}")).unwrap());
        assert!(!lang.run(&word("{0:1,-2:1}")).unwrap());
        assert!(lang.run(&word("{0:3}")).unwrap());
        assert!(lang.run(&word("{0:9,-1:3}")).unwrap());
        assert!(!lang.run(&word("{0:1}")).unwrap());
        // zero is a multiple
        assert!(lang.run(&[Letter::new(vec![Cell::Pad], true)]).unwrap());
        let m = minimize(&lang);
        assert_eq!(equivalent(&m, &lang).unwrap(), None);
    }
}
