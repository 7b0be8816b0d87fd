//! Reduction to normal form.
//!
//! While some digit exceeds the digit bound `D`, take the highest such
//! exponent `k` and add or subtract `p4 · u^{k-ℓ}`. The value at `u` is
//! unchanged and the 1-norm drops by at least `e_ℓ - Σ_{j≠ℓ} |e_j| > 0`.
//!
//! Consecutive steps at the same exponent are applied in one batch, for as
//! long as `k` would stay the highest offending exponent, so the result is
//! the same as stepping one copy at a time. Inputs with huge digits would
//! need very many such batches; past [`EXACT_BATCHES`] the batches only stop
//! once `a_k` itself is in range. The result is still a normal form of the
//! same value, but may differ from the one-copy-at-a-time result.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::digits::LaurentDigits;
use crate::grids::Grid;

/// Normal form of `p`: every digit bounded by the grid's digit bound, same
/// value at `u`.
pub fn normalize(grid: &Grid, p: &LaurentDigits) -> LaurentDigits {
    match normalize_dense(grid, p) {
        Some(q) => q,
        None => normalize_big(grid, p),
    }
}

pub const EXACT_BATCHES: usize = 1_000_000;

/// Number of consecutive single steps at `k` that keep `k` the highest
/// offending exponent. `above` lists `(coefficient, per-step change)` for
/// the positions above `k` touched by `p4`.
fn batch_len<T>(a_k: &T, bound: &T, e_ell: &T, above: &[(T, T)], coarse: bool) -> T
where
    T: Integer + Signed + Clone,
{
    let mut q = (a_k.abs() - bound.clone()).div_ceil(e_ell);
    if coarse {
        return q;
    }
    for (c, delta) in above {
        let room = if delta.is_positive() {
            bound.clone() - c.clone()
        } else if delta.is_negative() {
            c.clone() + bound.clone()
        } else {
            continue;
        };
        let m = room.div_floor(&delta.abs()) + T::one();
        if m < q {
            q = m;
        }
    }
    q
}

fn normalize_big(grid: &Grid, p: &LaurentDigits) -> LaurentDigits {
    let bound = BigInt::from(grid.digit_bound());
    let ell = grid.ell();
    let e_ell = BigInt::from(grid.e_ell());
    let p4: Vec<(i64, BigInt)> = grid
        .p4()
        .iter()
        .map(|(j, e)| (j - ell, e.clone()))
        .collect();
    let mut q = p.clone();
    let mut batches = 0usize;
    loop {
        let top = q
            .iter()
            .rev()
            .find(|(_, a)| a.abs() > bound)
            .map(|(k, a)| (k, a.clone()));
        let Some((k, a_k)) = top else { break };
        let s = if a_k.is_positive() {
            BigInt::one()
        } else {
            -BigInt::one()
        };
        let above: Vec<(BigInt, BigInt)> = p4
            .iter()
            .filter(|(off, _)| *off > 0)
            .map(|(off, e)| (q.coeff(k + off), -(&s * e)))
            .collect();
        let times = batch_len(&a_k, &bound, &e_ell, &above, batches >= EXACT_BATCHES);
        batches += 1;
        debug_assert!(times > BigInt::zero());
        for (off, e) in &p4 {
            q.add_at(k + off, &-(&s * e * &times));
        }
    }
    q
}

/// One copy of `p4` per step, over big integers. Also returns the 1-norm of
/// the working vector before each step and after the last one. Only
/// practical for small inputs.
pub fn normalize_steps(grid: &Grid, p: &LaurentDigits) -> (LaurentDigits, Vec<BigInt>) {
    let bound = BigInt::from(grid.digit_bound());
    let ell = grid.ell();
    let p4: Vec<(i64, BigInt)> = grid
        .p4()
        .iter()
        .map(|(j, e)| (j - ell, e.clone()))
        .collect();
    let mut q = p.clone();
    let mut norms = vec![q.norm1()];
    loop {
        let top = q
            .iter()
            .rev()
            .find(|(_, a)| a.abs() > bound)
            .map(|(k, a)| (k, a.is_positive()));
        let Some((k, positive)) = top else { break };
        for (off, e) in &p4 {
            if positive {
                q.add_at(k + off, &-e);
            } else {
                q.add_at(k + off, e);
            }
        }
        let n = q.norm1();
        assert!(
            &n < norms.last().unwrap(),
            "normalization failed to decrease the 1-norm"
        );
        norms.push(n);
    }
    (q, norms)
}

/// Fast path on a dense `i128` buffer. `None` when a digit does not fit.
fn normalize_dense(grid: &Grid, p: &LaurentDigits) -> Option<LaurentDigits> {
    let (top, digits) = p.dense_msb_i64()?;
    if digits.is_empty() {
        return Some(LaurentDigits::zero());
    }
    let bound = grid.digit_bound() as i128;
    let ell = grid.ell();
    let p4: Vec<(i64, i128)> = grid
        .p4()
        .iter()
        .map(|(j, e)| Some((j - ell, e.to_i64()? as i128)))
        .collect::<Option<_>>()?;
    let e_ell = grid.e_ell() as i128;
    let up = p4.iter().map(|(o, _)| *o).max().unwrap_or(0).max(0);
    let down = (-p4.iter().map(|(o, _)| *o).min().unwrap_or(0)).max(0);

    // buf[i] holds the coefficient of u^(hi - i); grows at both ends on demand.
    let mut hi = top;
    let mut buf: Vec<i128> = digits.iter().map(|&d| d as i128).collect();
    let mut cursor = 0usize;
    let mut batches = 0usize;
    loop {
        while cursor < buf.len() && buf[cursor].abs() <= bound {
            cursor += 1;
        }
        if cursor == buf.len() {
            break;
        }
        let k = hi - cursor as i64;
        let s: i128 = if buf[cursor] > 0 { 1 } else { -1 };
        let need_up = (k + up) - hi;
        if need_up > 0 {
            let mut grown = vec![0i128; need_up as usize];
            grown.extend_from_slice(&buf);
            buf = grown;
            hi += need_up;
        }
        let need_down = (hi - (k - down)) as usize + 1;
        if need_down > buf.len() {
            buf.resize(need_down, 0);
        }
        let at = |pos: i64| (hi - pos) as usize;
        let above: Vec<(i128, i128)> = p4
            .iter()
            .filter(|(off, _)| *off > 0)
            .map(|(off, e)| (buf[at(k + off)], -s * e))
            .collect();
        let times = batch_len(
            &buf[at(k)],
            &bound,
            &e_ell,
            &above,
            batches >= EXACT_BATCHES,
        );
        batches += 1;
        for (off, e) in &p4 {
            buf[at(k + off)] -= s * e * times;
        }
        cursor = (hi - (k + up)) as usize;
    }
    Some(LaurentDigits::from_pairs(
        buf.iter()
            .enumerate()
            .map(|(i, &a)| (hi - i as i64, BigInt::from(a))),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grids::{make_grid, shipped_grids, GridKind};
    use proptest::prelude::*;

    fn d(s: &str) -> LaurentDigits {
        s.parse().unwrap()
    }

    #[test]
    fn examples() {
        let g = make_grid(GridKind::Sqrt2Half).unwrap();
        assert_eq!(normalize(&g, &d("{}")), d("{}"));
        assert_eq!(normalize(&g, &d("{0:5}")), d("{1:1,0:1,-1:2}"));
        assert_eq!(normalize(&g, &d("{0:2,-1:-2}")), d("{0:2,-1:-2}"));
    }

    #[test]
    fn big_digits_take_the_slow_path() {
        let g = make_grid(GridKind::Db(10)).unwrap();
        let huge = LaurentDigits::monomial(0, BigInt::from(10).pow(20));
        assert_eq!(normalize(&g, &huge), LaurentDigits::monomial(20, 1));
    }

    #[test]
    fn large_digits_match_single_steps() {
        let g = make_grid(GridKind::Sqrt2Half).unwrap();
        let p = d("{2:-5000,0:7919,-3:123456}");
        assert_eq!(normalize(&g, &p), normalize_steps(&g, &p).0);
        let g = make_grid(GridKind::Cbrt65Half).unwrap();
        assert_eq!(normalize(&g, &p), normalize_steps(&g, &p).0);
    }

    #[test]
    fn decimal_carries() {
        let g = make_grid(GridKind::Db(10)).unwrap();
        assert_eq!(normalize(&g, &d("{0:15,-1:12}")), d("{1:1,0:6,-1:2}"));
        assert_eq!(normalize(&g, &d("{0:-10}")), d("{1:-1}"));
    }

    fn vector(bound: i64) -> impl Strategy<Value = LaurentDigits> {
        prop::collection::btree_map(-20i64..=20, -bound..=bound, 0..15)
            .prop_map(LaurentDigits::from_pairs)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn value_bound_idempotence(p in vector(400), which in 0usize..5) {
            let g = &shipped_grids()[which];
            let q = normalize(g, &p);
            prop_assert!(g.is_normal(&q));
            prop_assert_eq!(g.value_sign(&(&p - &q)), crate::sign::Sign::Zero);
            prop_assert_eq!(normalize(g, &q), q);
        }

        #[test]
        fn fast_path_matches_reference(p in vector(60), which in 0usize..5) {
            let g = &shipped_grids()[which];
            let (slow, norms) = normalize_steps(g, &p);
            prop_assert_eq!(normalize(g, &p), slow);
            prop_assert!(norms.windows(2).all(|w| w[1] < w[0]));
        }
    }
}
