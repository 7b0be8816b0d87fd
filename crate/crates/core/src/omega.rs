//! Two-sided digit streams in the base `u = d + e√b`, where `d² = b·e² + 1`.
//!
//! Then `u + 1/u = 2d`, so `u^{k+1} - 2d·u^k + u^{k-1} = 0`. Streams are
//! finite: a digit vector together with a truncation depth, the lowest
//! exponent that has been materialized.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Roots;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::digits::LaurentDigits;
use crate::error::{Error, Result};
use crate::sign::Sign;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OmegaSpec {
    pub b: i64,
    pub d: i64,
    pub e: i64,
}

const PELL_SEARCH_LIMIT: i64 = 10_000_000;

fn is_square(n: i64) -> bool {
    n >= 0 && n.sqrt() * n.sqrt() == n
}

/// Smallest `(d, e)` with `d, e > 3` and `d² = b·e² + 1`.
pub fn pell_pair(b: i64) -> Result<(i64, i64)> {
    if b < 2 || is_square(b) {
        return Err(Error::NonSquareRequired(b));
    }
    for e in 4..PELL_SEARCH_LIMIT {
        let Some(sq) = (e as i128)
            .checked_mul(e as i128)
            .and_then(|x| x.checked_mul(b as i128))
        else {
            break;
        };
        let target = sq + 1;
        let d = target.sqrt();
        if d * d == target && d > 3 {
            if let Ok(d) = i64::try_from(d) {
                return Ok((d, e));
            }
        }
    }
    Err(Error::InvalidArgument(format!(
        "no Pell pair for b = {b} with e below {PELL_SEARCH_LIMIT}"
    )))
}

impl OmegaSpec {
    pub fn new(b: i64) -> Result<OmegaSpec> {
        let (d, e) = pell_pair(b)?;
        Ok(OmegaSpec { b, d, e })
    }

    pub fn digit_bound(&self) -> i64 {
        2 * self.d
    }

    pub fn operand_bound(&self) -> i64 {
        6 * self.d
    }

    /// Overshoot limits on the two memory components.
    pub fn memory_bounds(&self) -> (i128, i128) {
        let d = self.d as i128;
        (306 * d * d, 106 * d)
    }

    pub fn u_approx(&self) -> f64 {
        self.d as f64 + self.e as f64 * (self.b as f64).sqrt()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OmegaStream {
    digits: LaurentDigits,
    depth: i64,
}

impl OmegaStream {
    /// `depth` must not exceed the lowest nonzero exponent.
    pub fn new(digits: LaurentDigits, depth: i64) -> Result<OmegaStream> {
        if digits.lo().is_some_and(|lo| lo < depth) {
            return Err(Error::InvalidArgument(format!(
                "truncation depth {depth} lies above a nonzero digit"
            )));
        }
        Ok(OmegaStream { digits, depth })
    }

    pub fn zero(depth: i64) -> OmegaStream {
        OmegaStream {
            digits: LaurentDigits::zero(),
            depth,
        }
    }

    pub fn digits(&self) -> &LaurentDigits {
        &self.digits
    }

    pub fn depth(&self) -> i64 {
        self.depth
    }

    /// Highest exponent that may be nonzero.
    pub fn top(&self) -> i64 {
        self.digits.hi().unwrap_or(self.depth).max(self.depth)
    }

    pub fn digit(&self, k: i64) -> i64 {
        self.digits.coeff_i64(k)
    }

    fn combine(&self, other: &OmegaStream, digits: LaurentDigits) -> OmegaStream {
        OmegaStream {
            digits,
            depth: self.depth.min(other.depth),
        }
    }

    /// Potential `Σ |a_k| ũ^k`.
    pub fn potential(&self, u_tilde: &BigRational) -> BigRational {
        self.digits
            .iter()
            .map(|(k, a)| BigRational::from_integer(a.abs()) * u_tilde.pow(k as i32))
            .sum()
    }
}

impl fmt::Display for OmegaStream {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} down to {}", self.digits, self.depth)
    }
}

/// Componentwise sum; a value-level operation, not a normal form.
pub fn omega_add(s1: &OmegaStream, s2: &OmegaStream) -> OmegaStream {
    s1.combine(s2, &s1.digits + &s2.digits)
}

pub fn omega_sub(s1: &OmegaStream, s2: &OmegaStream) -> OmegaStream {
    s1.combine(s2, &s1.digits - &s2.digits)
}

/// `s · γ(u)` for an integer Laurent polynomial `γ`.
pub fn omega_mul_poly(gamma: &LaurentDigits, s: &OmegaStream) -> OmegaStream {
    let shift = gamma.lo().unwrap_or(0).min(0);
    OmegaStream {
        digits: gamma.convolve_poly(&s.digits),
        depth: s.depth + shift,
    }
}

/// Applies up to `steps` updates `a_{k+1} += s, a_k -= 2ds, a_{k-1} += s`
/// at the highest exponent with `|a_k| > 2d`, `s` being the sign of `a_k`.
/// Returns the stream and the number of updates made.
pub fn omega_reduce(spec: &OmegaSpec, s: &OmegaStream, steps: usize) -> (OmegaStream, usize) {
    let bound = BigInt::from(spec.digit_bound());
    let two_d = BigInt::from(2 * spec.d);
    let mut out = s.clone();
    for done in 0..steps {
        let top = out
            .digits
            .iter()
            .rev()
            .find(|(_, a)| a.abs() > bound)
            .map(|(k, a)| (k, a.signum()));
        let Some((k, sg)) = top else {
            return (out, done);
        };
        out.digits.add_at(k + 1, &sg);
        out.digits.add_at(k, &-(&two_d * &sg));
        out.digits.add_at(k - 1, &sg);
        out.depth = out.depth.min(k - 1);
    }
    (out, steps)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OmegaVerdict {
    Decided(Sign),
    UndecidedAtTruncation,
}

impl fmt::Display for OmegaVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OmegaVerdict::Decided(s) => write!(f, "Decided({s})"),
            OmegaVerdict::UndecidedAtTruncation => f.write_str("UndecidedAtTruncation"),
        }
    }
}

/// Memory after each digit, and the overshoot if one happened.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OmegaTrace {
    /// `(exponent read, memory after reading it)`.
    pub memory: Vec<(i64, (i128, i128))>,
    /// Exponent at which the memory left its bounds.
    pub overshoot: Option<i64>,
    pub verdict: OmegaVerdict,
}

/// Reads digits from the top down to the truncation depth. The memory
/// `(A, B)` stands for `A·u^{k+1} + B·u^k` and becomes
/// `(B + 2d·A, a_k - A)` on reading `a_k`. Once `|A| > 306d²` or
/// `|B| > 106d`, the sign of `A` is the sign of the whole stream.
pub fn omega_trace(spec: &OmegaSpec, s: &OmegaStream) -> Result<OmegaTrace> {
    let bound = spec.operand_bound();
    for (k, a) in s.digits.iter() {
        if a.abs() > BigInt::from(bound) {
            return Err(Error::OperandBoundExceeded {
                exponent: k,
                digit: a.to_i64().unwrap_or(i64::MAX),
                bound,
            });
        }
    }
    let (cap_a, cap_b) = spec.memory_bounds();
    let two_d = 2 * spec.d as i128;
    let (mut a, mut b) = (0i128, 0i128);
    let mut memory = Vec::new();
    for k in (s.depth..=s.top()).rev() {
        (a, b) = (b + two_d * a, s.digit(k) as i128 - a);
        memory.push((k, (a, b)));
        if a.abs() > cap_a || b.abs() > cap_b {
            return Ok(OmegaTrace {
                memory,
                overshoot: Some(k),
                verdict: OmegaVerdict::Decided(Sign::from_i64(a.signum() as i64)),
            });
        }
    }
    let verdict = if a == 0 && b == 0 {
        OmegaVerdict::Decided(Sign::Zero)
    } else {
        OmegaVerdict::UndecidedAtTruncation
    };
    Ok(OmegaTrace {
        memory,
        overshoot: None,
        verdict,
    })
}

pub fn omega_sign(spec: &OmegaSpec, s: &OmegaStream) -> Result<OmegaVerdict> {
    Ok(omega_trace(spec, s)?.verdict)
}

/// Sign of `s1 - s2`.
pub fn omega_compare(spec: &OmegaSpec, s1: &OmegaStream, s2: &OmegaStream) -> Result<OmegaVerdict> {
    omega_sign(spec, &omega_sub(s1, s2))
}

/// Decides the sign of `x·num(u) - y·den(u)`. The combination is first
/// reduced until its digits are within the operand bound.
pub fn omega_relation_sign(
    spec: &OmegaSpec,
    x: &OmegaStream,
    y: &OmegaStream,
    num: &LaurentDigits,
    den: &LaurentDigits,
    max_steps: usize,
) -> Result<OmegaVerdict> {
    let diff = omega_sub(&omega_mul_poly(num, x), &omega_mul_poly(den, y));
    let bound = BigInt::from(spec.operand_bound());
    let mut cur = diff;
    let mut budget = max_steps;
    while cur.digits.iter().any(|(_, a)| a.abs() > bound) && budget > 0 {
        let (next, used) = omega_reduce(spec, &cur, 1);
        cur = next;
        budget -= used.max(1);
    }
    omega_sign(spec, &cur)
}

/// Exact arithmetic in `ℤ[√b]`: `(p, q)` stands for `p + q√b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadInt {
    pub p: BigInt,
    pub q: BigInt,
}

impl QuadInt {
    fn mul(&self, o: &QuadInt, b: i64) -> QuadInt {
        QuadInt {
            p: &self.p * &o.p + BigInt::from(b) * &self.q * &o.q,
            q: &self.p * &o.q + &self.q * &o.p,
        }
    }

    pub fn sign(&self, b: i64) -> Sign {
        let sp = self.p.signum().to_i64().unwrap();
        let sq = self.q.signum().to_i64().unwrap();
        if sp == sq || sq == 0 {
            return Sign::from_i64(sp);
        }
        if sp == 0 {
            return Sign::from_i64(sq);
        }
        // opposite signs: compare p² with b·q²
        let lhs = &self.p * &self.p;
        let rhs = BigInt::from(b) * &self.q * &self.q;
        match lhs.cmp(&rhs) {
            std::cmp::Ordering::Greater => Sign::from_i64(sp),
            std::cmp::Ordering::Less => Sign::from_i64(sq),
            std::cmp::Ordering::Equal => Sign::Zero,
        }
    }
}

/// Exact value `Σ a_k u^k` in `ℤ[√b]`, using `u^{-1} = d - e√b`.
pub fn omega_exact_value(spec: &OmegaSpec, digits: &LaurentDigits) -> QuadInt {
    let u = QuadInt {
        p: spec.d.into(),
        q: spec.e.into(),
    };
    let u_inv = QuadInt {
        p: spec.d.into(),
        q: (-spec.e).into(),
    };
    let mut total = QuadInt {
        p: BigInt::zero(),
        q: BigInt::zero(),
    };
    for (k, a) in digits.iter() {
        let base = if k >= 0 { &u } else { &u_inv };
        let mut pw = QuadInt {
            p: BigInt::one(),
            q: BigInt::zero(),
        };
        for _ in 0..k.unsigned_abs() {
            pw = pw.mul(base, spec.b);
        }
        total.p += a * &pw.p;
        total.q += a * &pw.q;
    }
    total
}

pub fn omega_exact_sign(spec: &OmegaSpec, digits: &LaurentDigits) -> Sign {
    omega_exact_value(spec, digits).sign(spec.b)
}

/// Greedy expansion of a non-negative rational with digits in `0..u`, from
/// exponent `top` down to `depth`.
pub fn omega_expand(
    spec: &OmegaSpec,
    x: &BigRational,
    top: i64,
    depth: i64,
) -> Result<OmegaStream> {
    if x.is_negative() {
        return Err(Error::InvalidArgument(
            "omega_expand needs a non-negative value".into(),
        ));
    }
    // remainder r = x - Σ chosen digits, kept as (p + q√b) / den
    let den = x.denom().clone();
    let mut rem = QuadInt {
        p: x.numer().clone(),
        q: BigInt::zero(),
    };
    let mut digits = LaurentDigits::zero();
    for k in (depth..=top).rev() {
        // u^k · den as an element of ℤ[√b]
        let pw = omega_exact_value(spec, &LaurentDigits::monomial(k, 1));
        let unit = QuadInt {
            p: &pw.p * &den,
            q: &pw.q * &den,
        };
        let mut a = 0i64;
        loop {
            let next = QuadInt {
                p: &rem.p - &unit.p,
                q: &rem.q - &unit.q,
            };
            if next.sign(spec.b) == Sign::Negative {
                break;
            }
            rem = next;
            a += 1;
            if a > 2 * spec.d {
                return Err(Error::InvalidArgument(format!(
                    "value too large for top exponent {top}"
                )));
            }
        }
        if a != 0 {
            digits.set(k, a.into());
        }
    }
    OmegaStream::new(digits, depth)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn d(s: &str) -> LaurentDigits {
        s.parse().unwrap()
    }

    #[test]
    fn pell_examples() {
        assert_eq!(pell_pair(2).unwrap(), (17, 12));
        assert_eq!(pell_pair(3).unwrap(), (7, 4));
        assert_eq!(pell_pair(5).unwrap(), (9, 4));
        for b in [2, 3, 5, 6, 7, 8, 10] {
            let (dd, e) = pell_pair(b).unwrap();
            assert!(dd > 3 && e > 3);
            assert_eq!(dd * dd, b * e * e + 1);
        }
        assert!(matches!(pell_pair(4), Err(Error::NonSquareRequired(4))));
        assert!(matches!(pell_pair(1), Err(Error::NonSquareRequired(1))));
    }

    #[test]
    fn reduce_examples() {
        let spec = OmegaSpec::new(2).unwrap();
        let s = OmegaStream::new(LaurentDigits::monomial(0, 2 * spec.d + 1), -3).unwrap();
        let (r, used) = omega_reduce(&spec, &s, 1);
        assert_eq!(used, 1);
        assert_eq!(r.digits(), &d("{1:1,0:1,-1:1}"));
        assert_eq!(
            omega_exact_value(&spec, r.digits()),
            omega_exact_value(&spec, s.digits())
        );
        let z = OmegaStream::zero(-5);
        assert_eq!(omega_reduce(&spec, &z, 10), (z.clone(), 0));
        let small = OmegaStream::new(d("{2:5,0:-34,-3:1}"), -5).unwrap();
        assert_eq!(omega_reduce(&spec, &small, 10).0, small);
    }

    #[test]
    fn sign_examples() {
        let spec = OmegaSpec::new(2).unwrap();
        assert_eq!(
            omega_sign(&spec, &OmegaStream::zero(-10)).unwrap(),
            OmegaVerdict::Decided(Sign::Zero)
        );
        let s = OmegaStream::new(LaurentDigits::monomial(0, 6 * spec.d), -10).unwrap();
        assert_eq!(
            omega_sign(&spec, &s).unwrap(),
            OmegaVerdict::Decided(Sign::Positive)
        );
        let zero_valued = OmegaStream::new(d("{1:1,0:-34,-1:1}"), -10).unwrap();
        assert_eq!(
            omega_sign(&spec, &zero_valued).unwrap(),
            OmegaVerdict::Decided(Sign::Zero)
        );
        let shallow = OmegaStream::new(d("{0:1}"), 0).unwrap();
        assert_eq!(
            omega_sign(&spec, &shallow).unwrap(),
            OmegaVerdict::UndecidedAtTruncation
        );
        let big = OmegaStream::new(d("{0:103}"), -3).unwrap();
        assert!(matches!(
            omega_sign(&spec, &big),
            Err(Error::OperandBoundExceeded { .. })
        ));
        assert_eq!(
            OmegaVerdict::Decided(Sign::Negative).to_string(),
            "Decided(Negative)"
        );
    }

    #[test]
    fn compare_examples() {
        let spec = OmegaSpec::new(2).unwrap();
        let s = OmegaStream::new(d("{2:3,0:-7,-1:20}"), -12).unwrap();
        assert_eq!(
            omega_compare(&spec, &s, &s).unwrap(),
            OmegaVerdict::Decided(Sign::Zero)
        );
        let z = OmegaStream::zero(-12);
        assert_eq!(
            omega_compare(&spec, &omega_add(&s, &z), &s).unwrap(),
            OmegaVerdict::Decided(Sign::Zero)
        );
        let one = OmegaStream::new(d("{0:1}"), -12).unwrap();
        let half = omega_expand(&spec, &BigRational::new(1.into(), 2.into()), 0, -12).unwrap();
        assert_eq!(half.digit(-1), 16);
        assert_eq!(
            omega_compare(&spec, &one, &half).unwrap(),
            OmegaVerdict::Decided(Sign::Positive)
        );
        assert_eq!(
            omega_compare(&spec, &half, &one).unwrap(),
            OmegaVerdict::Decided(Sign::Negative)
        );
    }

    #[test]
    fn relation_with_constant() {
        // y·(8 - u³) against x·(3 + u)
        let spec = OmegaSpec::new(2).unwrap();
        let num = d("{1:1,0:3}");
        let den = d("{3:-1,0:8}");
        let x = OmegaStream::new(d("{0:1}"), -20).unwrap();
        let y = OmegaStream::new(d("{}"), -20).unwrap();
        let v = omega_relation_sign(&spec, &x, &y, &num, &den, 10_000).unwrap();
        assert_eq!(v, OmegaVerdict::Decided(Sign::Positive));
        // x = 8 - u³ and y = 3 + u satisfy the relation exactly
        let x = OmegaStream::new(den.clone(), -20).unwrap();
        let y = OmegaStream::new(num.clone(), -20).unwrap();
        let v = omega_relation_sign(&spec, &x, &y, &num, &den, 10_000).unwrap();
        assert_eq!(v, OmegaVerdict::Decided(Sign::Zero));
    }

    fn stream(d: i64) -> impl Strategy<Value = OmegaStream> {
        prop::collection::btree_map(-6i64..=6, -6 * d..=6 * d, 0..8)
            .prop_map(|m| OmegaStream::new(LaurentDigits::from_pairs(m), -40).unwrap())
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]

        #[test]
        fn decisions_match_exact_sign(s in stream(17)) {
            let spec = OmegaSpec::new(2).unwrap();
            let t = omega_trace(&spec, &s).unwrap();
            let (ca, cb) = spec.memory_bounds();
            let n = t.memory.len() - usize::from(t.overshoot.is_some());
            for (_, (a, b)) in &t.memory[..n] {
                prop_assert!(a.abs() <= ca && b.abs() <= cb);
            }
            if t.overshoot.is_some() && t.memory.len() >= 2 {
                let (_, (prev_a, _)) = t.memory[t.memory.len() - 2];
                prop_assert!(prev_a.abs() >= 100 * spec.d as i128);
            }
            if let OmegaVerdict::Decided(v) = t.verdict {
                prop_assert_eq!(v, omega_exact_sign(&spec, s.digits()));
            }
        }

        #[test]
        fn deeper_truncation_keeps_verdict(s in stream(17), extra in 1i64..10) {
            let spec = OmegaSpec::new(2).unwrap();
            let v = omega_sign(&spec, &s).unwrap();
            let deeper = OmegaStream::new(s.digits().clone(), s.depth() - extra).unwrap();
            if let OmegaVerdict::Decided(sg) = v {
                prop_assert_eq!(omega_sign(&spec, &deeper).unwrap(), OmegaVerdict::Decided(sg));
            }
        }

        #[test]
        fn reduce_keeps_value_and_potential(s in stream(17), steps in 1usize..30) {
            let spec = OmegaSpec::new(2).unwrap();
            let two = BigRational::from_integer(2.into());
            let mut cur = s.clone();
            let mut last = cur.potential(&two);
            for _ in 0..steps {
                let (next, used) = omega_reduce(&spec, &cur, 1);
                if used == 0 {
                    break;
                }
                let p = next.potential(&two);
                prop_assert!(p <= last);
                last = p;
                cur = next;
            }
            prop_assert_eq!(omega_exact_value(&spec, cur.digits()), omega_exact_value(&spec, s.digits()));
        }
    }
}
