//! Same-area test as a two-track automaton over interleaved binary words,
//! for `p = 2`, `ℓ ∈ {1, 3}` and `|k| ≤ 2`.
//!
//! Track values must be `ℓ_s · 2^i` with `ℓ_s ∈ {1, 3}`, so each track holds
//! one nonzero digit or two adjacent ones. Adjacent exponents sit at most two
//! positions apart in the interleaved word, and `i + j = k` forces the two
//! tracks' digits to appear within a bounded distance of each other, so a
//! bounded window of recent positions suffices.
//!
//! Positions are tracked by age (letters since the digit was read) and the
//! current length `s`, which is kept exactly below [`SATURATE`] and only by
//! parity above it. An exponent is then `(σ·s + c) / 2` for a sign `σ` and
//! a known `c`.

use num_rational::BigRational;

use super::rect::{interleave, padic_digits};
use crate::automata::{full_alphabet, Automaton, Cell, LazyDfa, Letter};
use crate::error::{Error, Result};

const MAX_AGE: u32 = 10;
const SATURATE: u32 = 40;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum RectState {
    Scanning { len: u32, ages: [Vec<u32>; 2] },
    Done(bool),
    Reject,
}

/// `2e = sigma · s + c`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Affine {
    sigma: i64,
    c: i64,
}

impl Affine {
    /// The digit read at index `s - 1 - age`.
    fn of(len: u32, age: u32) -> Affine {
        let s = len as i64;
        let age = age as i64;
        // index t = s - 1 - age; odd t has exponent (t + 1) / 2, even t has -t / 2
        if (s - 1 - age).rem_euclid(2) == 1 {
            Affine { sigma: 1, c: -age }
        } else {
            Affine {
                sigma: -1,
                c: 1 + age,
            }
        }
    }

    fn plus(self, o: Affine) -> Affine {
        Affine {
            sigma: self.sigma + o.sigma,
            c: self.c + o.c,
        }
    }

    /// `2e` when `s` is known, else `None` unless `sigma` vanishes.
    fn value(self, len: u32) -> Option<i64> {
        if len < SATURATE {
            Some(self.sigma * len as i64 + self.c)
        } else if self.sigma == 0 {
            Some(self.c)
        } else {
            None
        }
    }

    /// `self - o` in exponent units, when determined.
    fn diff(self, o: Affine, len: u32) -> Option<i64> {
        let d = Affine {
            sigma: self.sigma - o.sigma,
            c: self.c - o.c,
        };
        d.value(len).map(|v| v / 2)
    }
}

pub struct RectAreaAutomaton {
    ell: i64,
    k: i64,
}

impl RectAreaAutomaton {
    pub fn new(ell: i64, k: i64) -> Result<RectAreaAutomaton> {
        if !matches!(ell, 1 | 3) || k.abs() > 2 {
            return Err(Error::InvalidArgument(
                "the same-area automaton covers p = 2, ℓ ∈ {1, 3} and |k| ≤ 2".into(),
            ));
        }
        Ok(RectAreaAutomaton { ell, k })
    }

    /// Per track: the cofactor `ℓ_s` and the lowest exponent, or `None` when
    /// the track is not of the form `1` or `11` shifted.
    fn track_summary(len: u32, ages: &[u32]) -> Option<(i64, Affine)> {
        match ages {
            [a] => Some((1, Affine::of(len, *a))),
            [a, b] => {
                let (ea, eb) = (Affine::of(len, *a), Affine::of(len, *b));
                match ea.diff(eb, len) {
                    Some(1) => Some((3, eb)),
                    Some(-1) => Some((3, ea)),
                    _ => None,
                }
            }
            _ => None,
        }
    }

    fn verdict(&self, len: u32, ages: &[Vec<u32>; 2]) -> bool {
        let (Some((l1, i)), Some((l2, j))) = (
            Self::track_summary(len, &ages[0]),
            Self::track_summary(len, &ages[1]),
        ) else {
            return false;
        };
        l1 * l2 == self.ell && i.plus(j).value(len) == Some(2 * self.k)
    }
}

impl Automaton for RectAreaAutomaton {
    type State = RectState;
    type Class = bool;

    fn tracks(&self) -> usize {
        2
    }

    fn alphabet(&self) -> Vec<Letter> {
        full_alphabet(2, &[Cell::Digit(0), Cell::Digit(1)], false)
    }

    fn start(&self) -> RectState {
        RectState::Scanning {
            len: 0,
            ages: [Vec::new(), Vec::new()],
        }
    }

    fn step(&self, state: &RectState, letter: &Letter) -> RectState {
        let ones: Vec<bool> = letter.cells.iter().map(|c| c.value() == 1).collect();
        if letter.cells.iter().any(|c| !matches!(c.value(), 0 | 1)) {
            return RectState::Reject;
        }
        match state {
            RectState::Reject => RectState::Reject,
            RectState::Done(v) => {
                if ones.iter().any(|&o| o) {
                    RectState::Reject
                } else {
                    RectState::Done(*v)
                }
            }
            RectState::Scanning { len, ages } => {
                let mut ages = ages.clone();
                for a in ages.iter_mut().flatten() {
                    *a += 1;
                }
                for (t, &one) in ones.iter().enumerate() {
                    if one {
                        ages[t].push(0);
                        if ages[t].len() > 2 {
                            return RectState::Reject;
                        }
                    }
                }
                let len = if *len + 1 < SATURATE + 2 {
                    *len + 1
                } else {
                    *len - 1
                };
                let oldest = |t: usize| ages[t].first().copied();
                match (oldest(0), oldest(1)) {
                    // both tracks are past the window for a partner digit
                    (Some(a), Some(b)) if a >= 2 && b >= 2 => {
                        RectState::Done(self.verdict(len, &ages))
                    }
                    (Some(a), None) | (None, Some(a)) if a > MAX_AGE => RectState::Reject,
                    _ => RectState::Scanning { len, ages },
                }
            }
        }
    }

    fn classify(&self, state: &RectState) -> bool {
        match state {
            RectState::Reject => false,
            RectState::Done(v) => *v,
            RectState::Scanning { len, ages } => self.verdict(*len, ages),
        }
    }
}

pub fn compile_rect_area_dfa(ell: i64, k: i64) -> Result<LazyDfa<RectAreaAutomaton>> {
    Ok(LazyDfa::new(RectAreaAutomaton::new(ell, k)?))
}

/// Interleaved binary words of the two sides, zero-filled to equal length.
pub fn rect_area_word(width: &BigRational, height: &BigRational) -> Result<Vec<Letter>> {
    let w = interleave(&padic_digits(width, 2)?);
    let h = interleave(&padic_digits(height, 2)?);
    let n = w.len().max(h.len());
    let cell = |v: &[i64], i: usize| Cell::Digit(v.get(i).copied().unwrap_or(0));
    Ok((0..n)
        .map(|i| Letter::new(vec![cell(&w, i), cell(&h, i)], false))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::rect_same_area;

    #[test]
    fn finite_and_agrees_with_procedure() {
        let pow2 = |e: i64| {
            let two = BigRational::from_integer(2.into());
            if e >= 0 {
                two.pow(e as i32)
            } else {
                two.recip().pow((-e) as i32)
            }
        };
        let sides: Vec<BigRational> = [1i64, 3, 5, 7]
            .iter()
            .flat_map(|&l| (-12..=12).map(move |i| (l, i)))
            .map(|(l, i)| BigRational::from_integer(l.into()) * pow2(i))
            .collect();
        for ell in [1, 3] {
            for k in -2..=2 {
                let mut dfa = compile_rect_area_dfa(ell, k).unwrap();
                let states = dfa.materialize().unwrap().state_count();
                assert!(states < 100_000, "{states}");
                for w in &sides {
                    for h in &sides {
                        let word = rect_area_word(w, h).unwrap();
                        let expected = rect_same_area(2, w, h, (ell, k)).unwrap();
                        assert_eq!(
                            dfa.run(&word).unwrap(),
                            expected,
                            "{w} × {h} vs ({ell}, {k})"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn out_of_scope() {
        assert!(compile_rect_area_dfa(5, 0).is_err());
        assert!(compile_rect_area_dfa(1, 3).is_err());
    }
}
