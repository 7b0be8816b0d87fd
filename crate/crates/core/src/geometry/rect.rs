//! Rectangles with sides in `𝔻_p = ℤ[1/p]` and the same-area test.
//!
//! A two-sided digit sequence is written one-sided by interleaving:
//! `a_0 a_1 a_{-1} a_2 a_{-2} …`. In that order the exponents `n` and `-m`
//! sit at positions `2n - 1` and `2m`, so "digit `n` of one word pairs with
//! digit `-m` of another where `n = m + c`" is a fixed-offset relation
//! between positions.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::digits::LaurentDigits;
use crate::error::{Error, Result};

fn position(exp: i64) -> usize {
    if exp > 0 {
        (2 * exp - 1) as usize
    } else {
        (-2 * exp) as usize
    }
}

fn exponent(pos: usize) -> i64 {
    let pos = pos as i64;
    if pos % 2 == 1 {
        (pos + 1) / 2
    } else {
        -pos / 2
    }
}

/// One-sided interleaved word; unused positions hold 0.
pub fn interleave(digits: &LaurentDigits) -> Vec<i64> {
    let len = digits
        .iter()
        .map(|(e, _)| position(e) + 1)
        .max()
        .unwrap_or(0);
    let mut word = vec![0; len];
    for (e, a) in digits.iter() {
        word[position(e)] = a.to_i64().expect("digit fits in i64");
    }
    word
}

pub fn deinterleave(word: &[i64]) -> LaurentDigits {
    LaurentDigits::from_pairs(word.iter().enumerate().map(|(i, &a)| (exponent(i), a)))
}

/// Exponent of the lowest nonzero digit of an interleaved word.
pub fn lowest_nonzero(word: &[i64]) -> Option<i64> {
    word.iter()
        .enumerate()
        .filter(|(_, &a)| a != 0)
        .map(|(i, _)| exponent(i))
        .min()
}

/// Whether the lowest nonzero exponents `i` and `j` of two interleaved
/// words satisfy `i + j = k`.
pub fn offset_matches(w1: &[i64], w2: &[i64], k: i64) -> bool {
    match (lowest_nonzero(w1), lowest_nonzero(w2)) {
        (Some(i), Some(j)) => i + j == k,
        _ => false,
    }
}

fn is_prime(p: u64) -> bool {
    p >= 2
        && (2..)
            .take_while(|d| d * d <= p)
            .all(|d| !p.is_multiple_of(d))
}

/// Base-`p` digits (in `0..p`) of a non-negative element of `𝔻_p`.
pub fn padic_digits(s: &BigRational, p: u64) -> Result<LaurentDigits> {
    if s.is_negative() {
        return Err(Error::InvalidArgument(format!("{s} is negative")));
    }
    let pb = BigInt::from(p);
    let mut den = s.denom().clone();
    let mut m = 0i64;
    while den.is_multiple_of(&pb) {
        den /= &pb;
        m += 1;
    }
    if !den.is_one() {
        return Err(Error::NotDyadicRational(s.to_string()));
    }
    let mut n = s.numer().clone();
    let mut out = LaurentDigits::zero();
    let mut e = -m;
    while !n.is_zero() {
        let (q, r) = n.div_rem(&pb);
        out.set(e, r);
        n = q;
        e += 1;
    }
    Ok(out)
}

/// `n = ℓ_n · p^v` with `ℓ_n` coprime to `p`.
fn split_p_part(n: &BigInt, p: &BigInt) -> BigInt {
    let mut n = n.clone();
    while !n.is_zero() && n.is_multiple_of(p) {
        n /= p;
    }
    n
}

/// Whether a rectangle with sides `width × height` in `𝔻_p` has area
/// `ℓ · p^k`, for a prime `p` and `ℓ` coprime to `p`.
///
/// Each side is `ℓ_s · p^i` where `i` is the position of its last nonzero
/// digit. The test runs over the factorisations `ℓ = ℓ_1 · ℓ_2`, matches
/// the cofactors and then checks `i + j = k` on the interleaved words.
pub fn rect_same_area(
    p: u64,
    width: &BigRational,
    height: &BigRational,
    area: (i64, i64),
) -> Result<bool> {
    let (ell, k) = area;
    if !is_prime(p) {
        return Err(Error::InvalidArgument(format!("{p} is not prime")));
    }
    if ell <= 0 || ell % p as i64 == 0 {
        return Err(Error::InvalidArgument(format!(
            "ℓ = {ell} must be positive and coprime to {p}"
        )));
    }
    if !width.is_positive() || !height.is_positive() {
        return Err(Error::InvalidArgument("sides must be positive".into()));
    }
    let pb = BigInt::from(p);
    let ww = interleave(&padic_digits(width, p)?);
    let wh = interleave(&padic_digits(height, p)?);
    let lw = split_p_part(width.numer(), &pb);
    let lh = split_p_part(height.numer(), &pb);
    for l1 in (1..=ell).filter(|d| ell % d == 0) {
        let l2 = ell / l1;
        if lw == BigInt::from(l1) && lh == BigInt::from(l2) && offset_matches(&ww, &wh, k) {
            return Ok(true);
        }
    }
    Ok(false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn interleave_order() {
        let x: LaurentDigits = "{2:5,1:4,0:3,-1:2,-3:1}".parse().unwrap();
        assert_eq!(interleave(&x), vec![3, 4, 2, 5, 0, 0, 1]);
        assert_eq!(deinterleave(&interleave(&x)), x);
        assert_eq!(interleave(&LaurentDigits::zero()), Vec::<i64>::new());
    }

    #[test]
    fn padic_expansion() {
        assert_eq!(
            padic_digits(&q(3, 4), 2).unwrap(),
            "{-1:1,-2:1}".parse().unwrap()
        );
        assert_eq!(
            padic_digits(&q(6, 1), 2).unwrap(),
            "{2:1,1:1}".parse().unwrap()
        );
        assert!(matches!(
            padic_digits(&q(1, 3), 2),
            Err(Error::NotDyadicRational(_))
        ));
    }

    #[test]
    fn same_area_examples() {
        // 3/4 × 2 has area 3/2 = 3 · 2^-1
        assert!(rect_same_area(2, &q(3, 4), &q(2, 1), (3, -1)).unwrap());
        assert!(rect_same_area(2, &q(1, 2), &q(3, 1), (3, -1)).unwrap());
        assert!(rect_same_area(2, &q(3, 1), &q(2, 1), (3, 1)).unwrap());
        assert!(rect_same_area(2, &q(3, 2), &q(4, 1), (3, 1)).unwrap());
        assert!(!rect_same_area(2, &q(2, 1), &q(2, 1), (3, 1)).unwrap());
        assert!(!rect_same_area(2, &q(1, 2), &q(3, 1), (3, 0)).unwrap());
        assert!(!rect_same_area(2, &q(5, 4), &q(2, 1), (3, -1)).unwrap());
        assert!(rect_same_area(3, &q(2, 9), &q(5, 1), (10, -2)).unwrap());
        assert!(matches!(
            rect_same_area(2, &q(1, 3), &q(1, 1), (1, 0)),
            Err(Error::NotDyadicRational(_))
        ));
        assert!(rect_same_area(4, &q(1, 1), &q(1, 1), (1, 0)).is_err());
        assert!(rect_same_area(2, &q(1, 1), &q(1, 1), (2, 0)).is_err());
    }

    proptest! {
        #[test]
        fn agrees_with_rational_area(
            p in prop::sample::select(vec![2u64, 3, 5]),
            a in 1i64..40, i in -6i64..6, b in 1i64..40, j in -6i64..6,
            ell in 1i64..60, k in -10i64..10,
        ) {
            prop_assume!(ell % p as i64 != 0);
            let pow = |e: i64| {
                let pr = BigRational::from_integer(BigInt::from(p));
                if e >= 0 { pr.pow(e as i32) } else { pr.recip().pow((-e) as i32) }
            };
            let w = BigRational::from_integer(a.into()) * pow(i);
            let h = BigRational::from_integer(b.into()) * pow(j);
            let expected = &w * &h == BigRational::from_integer(ell.into()) * pow(k);
            prop_assert_eq!(rect_same_area(p, &w, &h, (ell, k)).unwrap(), expected);
        }
    }
}
