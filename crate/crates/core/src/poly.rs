//! Small dense polynomial helpers used by the oracle: rational polynomials
//! with remainder, gcd and Sturm root counting, plus integer reduction modulo
//! a monic polynomial.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Polynomial with rational coefficients, lowest degree first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatPoly(pub Vec<BigRational>);

impl RatPoly {
    pub fn from_ints(c: &[BigInt]) -> Self {
        let mut p = RatPoly(c.iter().cloned().map(BigRational::from_integer).collect());
        p.trim();
        p
    }

    fn trim(&mut self) {
        while self.0.last().is_some_and(|c| c.is_zero()) {
            self.0.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.0.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        let mut p = RatPoly(
            self.0
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigRational::from_integer(BigInt::from(i)))
                .collect(),
        );
        p.trim();
        p
    }

    pub fn rem(&self, divisor: &RatPoly) -> RatPoly {
        let dd = divisor.degree().expect("division by zero polynomial");
        let lead = divisor.0[dd].clone();
        let mut r = self.0.clone();
        while r.len() > dd {
            let top = r.len() - 1;
            let q = &r[top] / &lead;
            if !q.is_zero() {
                for (i, c) in divisor.0.iter().enumerate() {
                    let idx = top - dd + i;
                    r[idx] = &r[idx] - &q * c;
                }
            }
            r.pop();
        }
        let mut p = RatPoly(r);
        p.trim();
        p
    }

    pub fn monic(&self) -> RatPoly {
        match self.0.last() {
            None => self.clone(),
            Some(lead) => {
                let lead = lead.clone();
                RatPoly(self.0.iter().map(|c| c / &lead).collect())
            }
        }
    }

    pub fn gcd(&self, other: &RatPoly) -> RatPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Number of distinct real roots in the half-open interval `(lo, hi]`.
    pub fn sturm_count(&self, lo: &BigRational, hi: &BigRational) -> usize {
        if self.degree().unwrap_or(0) == 0 {
            return 0;
        }
        let mut chain = vec![self.clone(), self.derivative()];
        loop {
            let n = chain.len();
            let r = chain[n - 2].rem(&chain[n - 1]);
            if r.is_zero() {
                break;
            }
            chain.push(RatPoly(r.0.into_iter().map(|c| -c).collect()));
        }
        let variations = |x: &BigRational| {
            let signs: Vec<i8> = chain
                .iter()
                .map(|p| sign_of_rat(&p.eval(x)))
                .filter(|s| *s != 0)
                .collect();
            signs.windows(2).filter(|w| w[0] != w[1]).count()
        };
        variations(lo).saturating_sub(variations(hi))
    }
}

pub fn sign_of_rat(x: &BigRational) -> i8 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

pub fn sign_of_int(x: &BigInt) -> i8 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

/// Remainder of `p` modulo the monic integer polynomial `m` (both lowest
/// degree first). Stays in the integers because `m` is monic.
pub fn reduce_monic(p: &[BigInt], m: &[BigInt]) -> Vec<BigInt> {
    let n = m.len() - 1;
    debug_assert!(m[n].is_one());
    let mut r = p.to_vec();
    while r.len() > n {
        let top = r.len() - 1;
        let q = r[top].clone();
        if !q.is_zero() {
            for (i, c) in m.iter().enumerate().take(n) {
                let idx = top - n + i;
                r[idx] -= &q * c;
            }
        }
        r.pop();
    }
    while r.last().is_some_and(|c| c.is_zero()) {
        r.pop();
    }
    r
}
