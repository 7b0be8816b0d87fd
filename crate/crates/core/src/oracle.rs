//! Exact ground truth for the value of a digit vector at the algebraic base
//! `u` of a grid.
//!
//! Zero is decided algebraically: the vector is turned into an integer
//! polynomial, reduced modulo the monic minimal polynomial of `u`, and the
//! remainder is tested for a common root with the minimal polynomial inside
//! the isolating interval. Nonzero signs come from interval evaluation on a
//! dyadic bracket of `u` that is bisected until the interval excludes zero.
//! No floating point is involved.

use std::sync::RwLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::digits::LaurentDigits;
use crate::error::{Error, Result};
use crate::poly::{reduce_monic, sign_of_int, RatPoly};
use crate::sign::Sign;

/// Dyadic bracket `[lo / 2^shift, hi / 2^shift]` around `u`.
#[derive(Clone, Debug)]
struct Bracket {
    lo: BigInt,
    hi: BigInt,
    shift: u32,
}

impl Bracket {
    fn lo_rat(&self) -> BigRational {
        BigRational::new(self.lo.clone(), BigInt::one() << self.shift)
    }
    fn hi_rat(&self) -> BigRational {
        BigRational::new(self.hi.clone(), BigInt::one() << self.shift)
    }
}

/// Exact evaluator for one algebraic base.
#[derive(Debug)]
pub struct Oracle {
    minpoly: Vec<BigInt>,
    rat_minpoly: RatPoly,
    /// `u` itself when it is rational.
    rational_root: Option<BigRational>,
    /// Sign of the minimal polynomial just below `u`.
    sign_below: i8,
    bracket: RwLock<Bracket>,
}

impl Clone for Oracle {
    fn clone(&self) -> Self {
        Oracle {
            minpoly: self.minpoly.clone(),
            rat_minpoly: self.rat_minpoly.clone(),
            rational_root: self.rational_root.clone(),
            sign_below: self.sign_below,
            bracket: RwLock::new(self.bracket.read().unwrap().clone()),
        }
    }
}

fn eval_int_scaled(poly: &[BigInt], x: &BigInt, shift: u32) -> BigInt {
    // 2^(shift*deg) * poly(x / 2^shift)
    let deg = poly.len().saturating_sub(1);
    let mut acc = BigInt::zero();
    let mut xp = BigInt::one();
    for (i, c) in poly.iter().enumerate() {
        acc += (c * &xp) << (shift as usize * (deg - i));
        xp *= x;
    }
    acc
}

impl Oracle {
    /// Builds an oracle for the unique root of `minpoly` (lowest degree
    /// first, monic) in `(lo, hi]`.
    pub fn new(minpoly: &[i64], lo: &BigRational, hi: &BigRational) -> Result<Self> {
        let m: Vec<BigInt> = minpoly.iter().map(|&c| BigInt::from(c)).collect();
        let mut trimmed = m.clone();
        while trimmed.last().is_some_and(|c| c.is_zero()) {
            trimmed.pop();
        }
        if trimmed.len() < 2 {
            return Err(Error::InvalidGrid(
                "minimal polynomial must have degree >= 1".into(),
            ));
        }
        if !trimmed.last().unwrap().is_one() {
            return Err(Error::InvalidGrid(
                "minimal polynomial must be monic".into(),
            ));
        }
        if lo >= hi {
            return Err(Error::InvalidGrid("empty isolating interval".into()));
        }
        if *lo <= BigRational::one() {
            return Err(Error::InvalidGrid(
                "isolating interval must lie above 1".into(),
            ));
        }
        let rp = RatPoly::from_ints(&trimmed);
        if rp.gcd(&rp.derivative()).degree() != Some(0) {
            return Err(Error::InvalidGrid(
                "minimal polynomial is not squarefree".into(),
            ));
        }
        let count = rp.sturm_count(lo, hi);
        if count != 1 {
            return Err(Error::InvalidGrid(format!(
                "isolating interval contains {count} roots, expected 1"
            )));
        }
        if rp.degree() == Some(1) {
            let root = -&rp.0[0] / &rp.0[1];
            return Ok(Oracle {
                minpoly: trimmed,
                rat_minpoly: rp,
                sign_below: -1,
                bracket: RwLock::new(Bracket {
                    lo: root.numer().clone(),
                    hi: root.numer().clone(),
                    shift: 0,
                }),
                rational_root: Some(root),
            });
        }
        // Narrow the rational interval, then snap to a dyadic bracket.
        let (mut a, mut b) = (lo.clone(), hi.clone());
        if rp.eval(&b).is_zero() {
            return Err(Error::InvalidGrid("root on interval endpoint".into()));
        }
        let two = BigRational::from_integer(2.into());
        let mut shift = 16u32;
        loop {
            while &b - &a > BigRational::new(1.into(), BigInt::one() << (shift - 4)) {
                let mid = (&a + &b) / &two;
                if rp.sturm_count(&a, &mid) == 1 {
                    b = mid;
                } else {
                    a = mid;
                }
            }
            let scale = BigRational::from_integer(BigInt::one() << shift);
            let dlo = (&a * &scale).floor().to_integer();
            let dhi = (&b * &scale).ceil().to_integer();
            let br = Bracket {
                lo: dlo,
                hi: dhi,
                shift,
            };
            let (la, hb) = (br.lo_rat(), br.hi_rat());
            let sa = crate::poly::sign_of_rat(&rp.eval(&la));
            let sb = crate::poly::sign_of_rat(&rp.eval(&hb));
            if rp.sturm_count(&la, &hb) == 1
                && sa != 0
                && sb != 0
                && sa != sb
                && la > BigRational::one()
            {
                return Ok(Oracle {
                    minpoly: trimmed,
                    rat_minpoly: rp,
                    rational_root: None,
                    sign_below: sa,
                    bracket: RwLock::new(br),
                });
            }
            shift += 8;
        }
    }

    pub fn degree(&self) -> usize {
        self.minpoly.len() - 1
    }

    pub fn minpoly(&self) -> &[BigInt] {
        &self.minpoly
    }

    /// Current rational bracket around `u`.
    pub fn u_bracket(&self) -> (BigRational, BigRational) {
        if let Some(r) = &self.rational_root {
            return (r.clone(), r.clone());
        }
        let b = self.bracket.read().unwrap();
        (b.lo_rat(), b.hi_rat())
    }

    fn bisect(&self, br: &mut Bracket) {
        br.lo <<= 1;
        br.hi <<= 1;
        br.shift += 1;
        let mid = (&br.lo + &br.hi) >> 1;
        let s = sign_of_int(&eval_int_scaled(&self.minpoly, &mid, br.shift));
        if s == self.sign_below {
            br.lo = mid;
        } else {
            br.hi = mid;
        }
    }

    fn publish(&self, br: &Bracket) {
        let mut shared = self.bracket.write().unwrap();
        if br.shift > shared.shift {
            *shared = br.clone();
        }
    }

    /// Integer polynomial `P` (lowest degree first) and exponent `lo` with
    /// `p(u) = u^lo · P(u)`.
    fn to_poly(p: &LaurentDigits) -> (i64, Vec<BigInt>) {
        let (lo, hi) = match (p.lo(), p.hi()) {
            (Some(lo), Some(hi)) => (lo, hi),
            _ => return (0, Vec::new()),
        };
        let mut out = vec![BigInt::zero(); (hi - lo + 1) as usize];
        for (k, a) in p.iter() {
            out[(k - lo) as usize] = a.clone();
        }
        (lo, out)
    }

    /// Remainder of the vector's polynomial modulo the minimal polynomial,
    /// together with the exponent offset. The remainder is empty iff
    /// `p(u) = 0` for an irreducible minimal polynomial.
    fn reduced(&self, p: &LaurentDigits) -> (i64, Vec<BigInt>) {
        let (lo, poly) = Self::to_poly(p);
        (lo, reduce_monic(&poly, &self.minpoly))
    }

    fn remainder_vanishes_at_u(&self, r: &[BigInt]) -> bool {
        if r.is_empty() {
            return true;
        }
        if let Some(root) = &self.rational_root {
            return RatPoly::from_ints(r).eval(root).is_zero();
        }
        let g = RatPoly::from_ints(r).gcd(&self.rat_minpoly);
        if g.degree() == Some(0) {
            return false;
        }
        let (a, b) = self.u_bracket();
        g.sturm_count(&a, &b) == 1
    }

    /// Bounds of `r(u)` on the bracket, scaled by `2^(shift*(deg r))`.
    fn interval_scaled(r: &[BigInt], br: &Bracket) -> (BigInt, BigInt) {
        let deg = r.len() - 1;
        let (mut lo, mut hi) = (BigInt::zero(), BigInt::zero());
        let mut pa = BigInt::one();
        let mut pb = BigInt::one();
        for (i, c) in r.iter().enumerate() {
            let sh = br.shift as usize * (deg - i);
            let ta = (c * &pa) << sh;
            let tb = (c * &pb) << sh;
            if c.is_negative() {
                lo += tb;
                hi += ta;
            } else {
                lo += ta;
                hi += tb;
            }
            pa *= &br.lo;
            pb *= &br.hi;
        }
        (lo, hi)
    }

    /// Exact sign of `p(u)`.
    pub fn sign_at(&self, p: &LaurentDigits) -> Sign {
        if p.is_zero() {
            return Sign::Zero;
        }
        let (_, r) = self.reduced(p);
        if self.remainder_vanishes_at_u(&r) {
            return Sign::Zero;
        }
        if let Some(root) = &self.rational_root {
            return Sign::from_i8(crate::poly::sign_of_rat(&RatPoly::from_ints(&r).eval(root)));
        }
        let mut br = self.bracket.read().unwrap().clone();
        let start_shift = br.shift;
        loop {
            let (lo, hi) = Self::interval_scaled(&r, &br);
            if lo.is_positive() {
                if br.shift > start_shift {
                    self.publish(&br);
                }
                return Sign::Positive;
            }
            if hi.is_negative() {
                if br.shift > start_shift {
                    self.publish(&br);
                }
                return Sign::Negative;
            }
            for _ in 0..8 {
                self.bisect(&mut br);
            }
        }
    }

    /// Rational interval of width at most `precision` containing `p(u)`.
    pub fn approx_value(
        &self,
        p: &LaurentDigits,
        precision: &BigRational,
    ) -> (BigRational, BigRational) {
        if p.is_zero() {
            return (BigRational::zero(), BigRational::zero());
        }
        let (lo_exp, r) = self.reduced(p);
        if self.remainder_vanishes_at_u(&r) {
            return (BigRational::zero(), BigRational::zero());
        }
        if let Some(root) = &self.rational_root {
            let v = RatPoly::from_ints(&r).eval(root) * pow_rat(root, lo_exp);
            return (v.clone(), v);
        }
        let mut br = self.bracket.read().unwrap().clone();
        loop {
            let (slo, shi) = Self::interval_scaled(&r, &br);
            let denom = BigInt::one() << (br.shift as usize * (r.len() - 1));
            let rl = BigRational::new(slo, denom.clone());
            let rh = BigRational::new(shi, denom);
            let (ua, ub) = (br.lo_rat(), br.hi_rat());
            let (pl, ph) = if lo_exp >= 0 {
                (pow_rat(&ua, lo_exp), pow_rat(&ub, lo_exp))
            } else {
                (pow_rat(&ub, lo_exp), pow_rat(&ua, lo_exp))
            };
            let cands = [&rl * &pl, &rl * &ph, &rh * &pl, &rh * &ph];
            let mn = cands.iter().min().unwrap().clone();
            let mx = cands.iter().max().unwrap().clone();
            if &mx - &mn <= *precision {
                self.publish(&br);
                return (mn, mx);
            }
            for _ in 0..8 {
                self.bisect(&mut br);
            }
        }
    }

    /// Midpoint of [`approx_value`](Self::approx_value) as `f64`, for display only.
    pub fn approx_f64(&self, p: &LaurentDigits) -> f64 {
        let prec = BigRational::new(1.into(), BigInt::one() << 60);
        let (a, b) = self.approx_value(p, &prec);
        let mid = (a + b) / BigRational::from_integer(2.into());
        mid.to_f64().unwrap_or(f64::NAN)
    }
}

fn pow_rat(x: &BigRational, e: i64) -> BigRational {
    let mut acc = BigRational::one();
    for _ in 0..e.unsigned_abs() {
        acc *= x;
    }
    if e < 0 {
        acc.recip()
    } else {
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn sqrt2half() -> Oracle {
        Oracle::new(&[2, -4, 1], &rat(341, 100), &rat(342, 100)).unwrap()
    }

    fn d(s: &str) -> LaurentDigits {
        s.parse().unwrap()
    }

    #[test]
    fn defining_identities_are_zero() {
        let o = sqrt2half();
        assert_eq!(o.sign_at(&d("{0:1,-1:-4,-2:2}")), Sign::Zero);
        assert_eq!(o.sign_at(&d("{1:-1,0:4,-1:-2}")), Sign::Zero);
        assert_eq!(o.sign_at(&d("{0:5}")), Sign::Positive);
        assert_eq!(o.sign_at(&d("{}")), Sign::Zero);
        // √2 - 1/2
        assert_eq!(o.sign_at(&d("{0:2,-1:-4,-2:1}")), Sign::Positive);
    }

    #[test]
    fn approximates_sqrt2() {
        let o = sqrt2half();
        let prec = rat(1, 1_000_000_000);
        let (a, b) = o.approx_value(&d("{0:2,-1:-2}"), &prec);
        assert!(&b - &a <= prec);
        assert!(a <= rat(1414213563, 1_000_000_000));
        assert!(b >= rat(1414213562, 1_000_000_000));
        let (a, b) = o.approx_value(&d("{0:1}"), &prec);
        assert!(a <= rat(1, 1) && b >= rat(1, 1) && &b - &a <= prec);
        assert_eq!(o.approx_value(&d("{}"), &prec), (rat(0, 1), rat(0, 1)));
    }

    #[test]
    fn rejects_bad_brackets() {
        assert!(Oracle::new(&[2, -4, 1], &rat(0, 1), &rat(4, 1)).is_err());
        assert!(Oracle::new(&[2, -4, 1], &rat(3, 1), &rat(10, 1)).is_ok());
        assert!(Oracle::new(&[2, -4, 1], &rat(4, 1), &rat(10, 1)).is_err());
        assert!(Oracle::new(&[4, -4, 1], &rat(3, 2), &rat(3, 1)).is_err());
        assert!(Oracle::new(&[2, -4, 2], &rat(3, 1), &rat(4, 1)).is_err());
    }

    #[test]
    fn rational_base() {
        let o = Oracle::new(&[-10, 1], &rat(19, 2), &rat(21, 2)).unwrap();
        assert_eq!(o.sign_at(&d("{-1:10,0:-1}")), Sign::Zero);
        assert_eq!(o.sign_at(&d("{-1:9,0:-1}")), Sign::Negative);
        let (a, b) = o.approx_value(&d("{-1:5}"), &rat(1, 100));
        assert_eq!((a.clone(), b), (rat(1, 2), rat(1, 2)));
    }

    #[test]
    fn tiny_nonzero_values_are_resolved() {
        // (u - 4 + 2u^-1)^20-ish cancellation: p4 * 1 + u^-30
        let o = sqrt2half();
        let p = d("{1:-1,0:4,-1:-2,-30:1}");
        assert_eq!(o.sign_at(&p), Sign::Positive);
        assert_eq!(o.sign_at(&p.negate()), Sign::Negative);
    }
}
