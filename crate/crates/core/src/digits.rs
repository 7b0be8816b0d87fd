//! Finite-support integer digit vectors `Σ a_k u^k`.
//!
//! A [`LaurentDigits`] value stores only its nonzero coefficients, keyed by
//! exponent. It knows nothing about the base `u`; the value of a vector is
//! only meaningful relative to a [`Grid`](crate::grids::Grid).
//!
//! Two text forms are accepted everywhere a number is read:
//!
//! * compact: `{0:2,-1:-2}` (exponent `:` coefficient, any order)
//! * pretty: `[2].[-2]` (bracketed digits, most significant first, with a
//!   literal `.` between exponent 0 and exponent -1)

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::ParseError;

/// A digit vector with finitely many nonzero integer coefficients.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct LaurentDigits {
    support: BTreeMap<i64, BigInt>,
}

/// Output style for [`LaurentDigits::format`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DigitStyle {
    Compact,
    Pretty,
}

impl LaurentDigits {
    pub fn zero() -> Self {
        Self::default()
    }

    /// The single-term vector `coeff · u^exp`.
    pub fn monomial(exp: i64, coeff: impl Into<BigInt>) -> Self {
        let mut p = Self::zero();
        p.set(exp, coeff.into());
        p
    }

    pub fn from_pairs<I, C>(pairs: I) -> Self
    where
        I: IntoIterator<Item = (i64, C)>,
        C: Into<BigInt>,
    {
        let mut p = Self::zero();
        for (k, a) in pairs {
            p.add_at(k, &a.into());
        }
        p
    }

    /// Builds a vector from digits listed most significant first, the first
    /// digit sitting at exponent `top`.
    pub fn from_msb_digits<C: Into<BigInt> + Clone>(top: i64, digits: &[C]) -> Self {
        Self::from_pairs(
            digits
                .iter()
                .enumerate()
                .map(|(i, d)| (top - i as i64, d.clone().into())),
        )
    }

    pub fn is_zero(&self) -> bool {
        self.support.is_empty()
    }

    /// Smallest exponent with a nonzero coefficient.
    pub fn lo(&self) -> Option<i64> {
        self.support.keys().next().copied()
    }

    /// Largest exponent with a nonzero coefficient.
    pub fn hi(&self) -> Option<i64> {
        self.support.keys().next_back().copied()
    }

    pub fn coeff(&self, exp: i64) -> BigInt {
        self.support.get(&exp).cloned().unwrap_or_default()
    }

    /// Coefficient as `i64`; panics if it does not fit.
    pub fn coeff_i64(&self, exp: i64) -> i64 {
        self.support
            .get(&exp)
            .map(|c| c.to_i64().expect("coefficient exceeds i64"))
            .unwrap_or(0)
    }

    pub fn iter(&self) -> impl DoubleEndedIterator<Item = (i64, &BigInt)> + '_ {
        self.support.iter().map(|(k, a)| (*k, a))
    }

    pub fn len(&self) -> usize {
        self.support.len()
    }

    pub fn is_empty(&self) -> bool {
        self.support.is_empty()
    }

    pub fn set(&mut self, exp: i64, value: BigInt) {
        if value.is_zero() {
            self.support.remove(&exp);
        } else {
            self.support.insert(exp, value);
        }
    }

    pub fn add_at(&mut self, exp: i64, delta: &BigInt) {
        if delta.is_zero() {
            return;
        }
        let entry = self.support.entry(exp).or_default();
        *entry += delta;
        if entry.is_zero() {
            self.support.remove(&exp);
        }
    }

    /// Largest absolute coefficient (zero for the zero vector).
    pub fn max_abs(&self) -> BigInt {
        self.support
            .values()
            .map(|a| a.abs())
            .max()
            .unwrap_or_default()
    }

    /// Sum of absolute coefficients.
    pub fn norm1(&self) -> BigInt {
        self.support.values().map(|a| a.abs()).sum()
    }

    pub fn negate(&self) -> Self {
        Self {
            support: self.support.iter().map(|(k, a)| (*k, -a)).collect(),
        }
    }

    /// Multiplication by `u^h`: the coefficient at `k` moves to `k + h`.
    pub fn shift(&self, h: i64) -> Self {
        Self {
            support: self
                .support
                .iter()
                .map(|(k, a)| (k + h, a.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, factor: &BigInt) -> Self {
        if factor.is_zero() {
            return Self::zero();
        }
        Self {
            support: self.support.iter().map(|(k, a)| (*k, a * factor)).collect(),
        }
    }

    /// Componentwise sum.
    pub fn add_digits(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, a) in other.iter() {
            out.add_at(k, a);
        }
        out
    }

    pub fn sub_digits(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, a) in other.iter() {
            out.add_at(k, &-a);
        }
        out
    }

    /// Polynomial (Cauchy) product of the two coefficient sequences, with no
    /// normalization.
    pub fn convolve_poly(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (i, a) in self.iter() {
            for (j, b) in other.iter() {
                out.add_at(i + j, &(a * b));
            }
        }
        out
    }

    /// Coefficients from `hi` down to `lo` with zero fill, as `i64`.
    /// Returns `None` when a coefficient does not fit.
    pub fn dense_msb_i64(&self) -> Option<(i64, Vec<i64>)> {
        let (lo, hi) = match (self.lo(), self.hi()) {
            (Some(lo), Some(hi)) => (lo, hi),
            _ => return Some((0, Vec::new())),
        };
        let mut out = vec![0i64; (hi - lo + 1) as usize];
        for (k, a) in self.iter() {
            out[(hi - k) as usize] = a.to_i64()?;
        }
        Some((hi, out))
    }

    pub fn format(&self, style: DigitStyle) -> String {
        match style {
            DigitStyle::Compact => {
                let body: Vec<String> = self
                    .support
                    .iter()
                    .rev()
                    .map(|(k, a)| format!("{k}:{a}"))
                    .collect();
                format!("{{{}}}", body.join(","))
            }
            DigitStyle::Pretty => {
                let (lo, hi) = match (self.lo(), self.hi()) {
                    (Some(lo), Some(hi)) => (lo.min(0), hi.max(0)),
                    _ => return "{}".to_string(),
                };
                let mut s = String::new();
                for k in (lo..=hi).rev() {
                    s.push('[');
                    s.push_str(&self.coeff(k).to_string());
                    s.push(']');
                    if k == 0 && lo < 0 {
                        s.push('.');
                    }
                }
                s
            }
        }
    }

    /// Parses either text form.
    pub fn parse(text: &str) -> Result<Self, ParseError> {
        let t = text.trim();
        if t.starts_with('{') {
            parse_compact(t)
        } else if t.starts_with('[') {
            parse_pretty(t)
        } else {
            Err(ParseError::new(0, "expected '{' or '['"))
        }
    }
}

fn parse_int(s: &str, pos: usize) -> Result<BigInt, ParseError> {
    BigInt::from_str(s.trim())
        .map_err(|_| ParseError::new(pos, format!("invalid integer '{}'", s.trim())))
}

fn parse_compact(t: &str) -> Result<LaurentDigits, ParseError> {
    if !t.ends_with('}') {
        return Err(ParseError::new(t.len(), "missing closing '}'"));
    }
    let inner = &t[1..t.len() - 1];
    let mut out = LaurentDigits::zero();
    if inner.trim().is_empty() {
        return Ok(out);
    }
    let mut seen = std::collections::BTreeSet::new();
    let mut offset = 1;
    for entry in inner.split(',') {
        let (k, a) = entry
            .split_once(':')
            .ok_or_else(|| ParseError::new(offset, "expected 'exponent:coefficient'"))?;
        let exp = parse_int(k, offset)?
            .to_i64()
            .ok_or_else(|| ParseError::new(offset, "exponent out of range"))?;
        if !seen.insert(exp) {
            return Err(ParseError::new(offset, format!("duplicate exponent {exp}")));
        }
        let coeff = parse_int(a, offset + k.len() + 1)?;
        out.set(exp, coeff);
        offset += entry.len() + 1;
    }
    Ok(out)
}

fn parse_pretty(t: &str) -> Result<LaurentDigits, ParseError> {
    let bytes = t.as_bytes();
    let mut digits: Vec<BigInt> = Vec::new();
    let mut dot_at: Option<usize> = None;
    let mut i = 0;
    while i < bytes.len() {
        match bytes[i] {
            b'[' => {
                let close = t[i..]
                    .find(']')
                    .map(|j| i + j)
                    .ok_or_else(|| ParseError::new(i, "unclosed '['"))?;
                digits.push(parse_int(&t[i + 1..close], i + 1)?);
                i = close + 1;
            }
            b'.' => {
                if dot_at.is_some() {
                    return Err(ParseError::new(i, "second radix point"));
                }
                dot_at = Some(digits.len());
                i += 1;
            }
            b' ' => i += 1,
            _ => return Err(ParseError::new(i, "unexpected character")),
        }
    }
    if digits.is_empty() {
        return Err(ParseError::new(0, "no digits"));
    }
    let int_len = dot_at.unwrap_or(digits.len());
    if int_len == 0 {
        return Err(ParseError::new(0, "radix point needs a digit before it"));
    }
    let top = int_len as i64 - 1;
    Ok(LaurentDigits::from_msb_digits(top, &digits))
}

impl FromStr for LaurentDigits {
    type Err = ParseError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::parse(s)
    }
}

impl serde::Serialize for LaurentDigits {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.format(DigitStyle::Compact))
    }
}

impl<'de> serde::Deserialize<'de> for LaurentDigits {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        LaurentDigits::parse(&text).map_err(serde::de::Error::custom)
    }
}

impl fmt::Display for LaurentDigits {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.format(DigitStyle::Compact))
    }
}

impl fmt::Debug for LaurentDigits {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.format(DigitStyle::Compact))
    }
}

impl Add for &LaurentDigits {
    type Output = LaurentDigits;
    fn add(self, rhs: &LaurentDigits) -> LaurentDigits {
        self.add_digits(rhs)
    }
}

impl Sub for &LaurentDigits {
    type Output = LaurentDigits;
    fn sub(self, rhs: &LaurentDigits) -> LaurentDigits {
        self.sub_digits(rhs)
    }
}

impl Neg for &LaurentDigits {
    type Output = LaurentDigits;
    fn neg(self) -> LaurentDigits {
        self.negate()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn d(s: &str) -> LaurentDigits {
        s.parse().unwrap()
    }

    #[test]
    fn parses_compact() {
        let p = d("{0:2,-1:-2}");
        assert_eq!(p.coeff_i64(0), 2);
        assert_eq!(p.coeff_i64(-1), -2);
        assert_eq!(p.len(), 2);
        assert!(d("{}").is_zero());
        assert!(d("{3:0}").is_zero());
    }

    #[test]
    fn parses_pretty() {
        let p = d("[1][1].[2]");
        assert_eq!(p, LaurentDigits::from_pairs([(1, 1), (0, 1), (-1, 2)]));
        assert_eq!(d("[5]"), LaurentDigits::monomial(0, 5));
        assert_eq!(
            d("[-3].[0][7]"),
            LaurentDigits::from_pairs([(0, -3), (-2, 7)])
        );
    }

    #[test]
    fn parse_errors_carry_position() {
        let e = LaurentDigits::parse("{0:2,x}").unwrap_err();
        assert_eq!(e.position, 5);
        assert!(LaurentDigits::parse("{0:2").is_err());
        assert!(LaurentDigits::parse("[1].[2].[3]").is_err());
        assert!(LaurentDigits::parse("{1:1,1:2}").is_err());
        assert!(LaurentDigits::parse("12").is_err());
        assert!(LaurentDigits::parse(".[2]").is_err());
    }

    #[test]
    fn formats_both_styles() {
        assert_eq!(LaurentDigits::zero().format(DigitStyle::Compact), "{}");
        assert_eq!(LaurentDigits::zero().format(DigitStyle::Pretty), "{}");
        let p = d("{0:2,-1:-2}");
        assert_eq!(p.format(DigitStyle::Pretty), "[2].[-2]");
        assert_eq!(p.format(DigitStyle::Compact), "{0:2,-1:-2}");
        let q = d("{1:1,-2:5}");
        assert_eq!(q.format(DigitStyle::Pretty), "[1][0].[0][5]");
        assert_eq!(d("{-2:1}").format(DigitStyle::Pretty), "[0].[0][1]");
        assert_eq!(d("{2:1}").format(DigitStyle::Pretty), "[1][0][0]");
    }

    #[test]
    fn componentwise_arithmetic() {
        assert!(d("{0:2,-1:-2}").add_digits(&d("{0:-2,-1:2}")).is_zero());
        assert_eq!(d("{0:5}").add_digits(&d("{}")), d("{0:5}"));
        assert_eq!(
            d("{1:1,0:1}").add_digits(&d("{0:1,-1:2}")),
            d("{1:1,0:2,-1:2}")
        );
        assert_eq!(d("{0:3,-2:-1}").negate(), d("{0:-3,-2:1}"));
        assert_eq!(d("{0:2,-1:-2}").shift(1), d("{1:2,0:-2}"));
        let p = d("{4:1,-3:9}");
        assert_eq!(p.shift(0), p);
    }

    fn arb_digits() -> impl Strategy<Value = LaurentDigits> {
        proptest::collection::btree_map(-12i64..12, -50i64..50, 0..8)
            .prop_map(LaurentDigits::from_pairs)
    }

    proptest! {
        #[test]
        fn round_trips_both_styles(p in arb_digits()) {
            prop_assert_eq!(d(&p.format(DigitStyle::Compact)), p.clone());
            prop_assert_eq!(d(&p.format(DigitStyle::Pretty)), p);
        }

        #[test]
        fn addition_laws(p in arb_digits(), q in arb_digits(), r in arb_digits(), h in -9i64..9) {
            prop_assert_eq!(&p + &q, &q + &p);
            prop_assert_eq!(&(&p + &q) + &r, &p + &(&q + &r));
            prop_assert_eq!(p.negate().negate(), p.clone());
            prop_assert_eq!(p.shift(h).shift(-h), p.clone());
            prop_assert!((&p - &p).is_zero());
            prop_assert!(p.iter().all(|(_, a)| !a.is_zero()));
        }
    }
}
