//! Algorithm C: sign determination with a sliding window of pending
//! coefficients.
//!
//! Reading digits from the top, the leading pending coefficient `L` is
//! eliminated by subtracting `L · u^k · p3(u)` (which is zero). The remaining
//! `h - 1` coefficients are the memory. When one of them exceeds its cap the
//! value is dominated by the window and its sign is `sign(L)`; otherwise the
//! residual window is evaluated exactly once the input ends.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::sync::Mutex;

use num_bigint::BigInt;

use crate::automata::{Automaton, Cell, LazyDfa, Letter};
use crate::digits::LaurentDigits;
use crate::error::{Error, Result};
use crate::grids::Grid;
use crate::normalize::normalize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

impl Sign {
    pub fn from_i8(s: i8) -> Sign {
        Self::from_i64(s as i64)
    }

    pub fn from_i64(s: i64) -> Sign {
        match s.signum() {
            -1 => Sign::Negative,
            0 => Sign::Zero,
            _ => Sign::Positive,
        }
    }

    pub fn as_i64(self) -> i64 {
        match self {
            Sign::Negative => -1,
            Sign::Zero => 0,
            Sign::Positive => 1,
        }
    }

    pub fn negate(self) -> Sign {
        Self::from_i64(-self.as_i64())
    }

    pub fn to_ordering(self) -> Ordering {
        match self {
            Sign::Negative => Ordering::Less,
            Sign::Zero => Ordering::Equal,
            Sign::Positive => Ordering::Greater,
        }
    }
}

impl std::ops::Mul for Sign {
    type Output = Sign;
    fn mul(self, rhs: Sign) -> Sign {
        Sign::from_i64(self.as_i64() * rhs.as_i64())
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Sign::Negative => "Negative",
            Sign::Zero => "Zero",
            Sign::Positive => "Positive",
        };
        f.write_str(s)
    }
}

/// The window update of Algorithm C for one grid.
#[derive(Clone, Debug)]
pub struct SignMachine {
    d: Vec<i64>,
    caps: Vec<i64>,
}

impl SignMachine {
    /// Caps are the grid's window bounds multiplied by `scale`, for inputs
    /// whose digits are bounded by `scale · input_bound`.
    pub fn new(grid: &Grid, scale: i64) -> SignMachine {
        SignMachine {
            d: grid.p3().to_vec(),
            caps: grid.window_bounds().iter().map(|c| c * scale).collect(),
        }
    }

    pub fn memory_len(&self) -> usize {
        self.caps.len()
    }

    pub fn caps(&self) -> &[i64] {
        &self.caps
    }

    /// Reads digit `z`. Returns the decided sign on overshoot; the memory then
    /// holds the post-update window.
    pub fn feed(&self, memory: &mut [i64], z: i64) -> Option<Sign> {
        let n = memory.len();
        let lead = memory[0];
        for i in 0..n {
            let next = if i + 1 < n { memory[i + 1] } else { z };
            memory[i] = next - lead * self.d[i + 1];
        }
        if memory.iter().zip(&self.caps).any(|(m, c)| m.abs() > *c) {
            Some(Sign::from_i64(lead))
        } else {
            None
        }
    }
}

/// Per-step record of a procedural run, for inspection and tests.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignTrace {
    /// Memory after each digit read while running.
    pub windows: Vec<Vec<i64>>,
    /// Exponent and leading coefficient at overshoot.
    pub overshoot: Option<(i64, i64)>,
    pub result: Sign,
}

fn check_input(grid: &Grid, p: &LaurentDigits) -> Result<()> {
    let bound = BigInt::from(grid.input_bound());
    for (k, a) in p.iter() {
        if a > &bound || -a > bound {
            return Err(Error::InputBoundExceeded {
                exponent: k,
                digit: a.to_string(),
                bound: grid.input_bound(),
            });
        }
    }
    Ok(())
}

/// Runs Algorithm C on `p`, recording every window.
pub fn sign_trace(grid: &Grid, p: &LaurentDigits) -> Result<SignTrace> {
    check_input(grid, p)?;
    let machine = grid.sign_machine();
    let mut memory = vec![0i64; machine.memory_len()];
    let mut windows = Vec::new();
    if let Some((top, digits)) = p.dense_msb_i64() {
        for (i, &z) in digits.iter().enumerate() {
            let lead = memory[0];
            if let Some(s) = machine.feed(&mut memory, z) {
                return Ok(SignTrace {
                    windows,
                    overshoot: Some((top - i as i64, lead)),
                    result: s,
                });
            }
            windows.push(memory.clone());
        }
    }
    Ok(SignTrace {
        windows,
        overshoot: None,
        result: grid.window_sign(&memory),
    })
}

/// Exact sign of `p(u)`. Digits must be bounded by the grid's input bound.
pub fn sign_of(grid: &Grid, p: &LaurentDigits) -> Result<Sign> {
    check_input(grid, p)?;
    let machine = grid.sign_machine();
    let mut memory = vec![0i64; machine.memory_len()];
    if let Some((_, digits)) = p.dense_msb_i64() {
        for z in digits {
            if let Some(s) = machine.feed(&mut memory, z) {
                return Ok(s);
            }
        }
    }
    Ok(grid.window_sign(&memory))
}

fn normal(grid: &Grid, p: &LaurentDigits) -> LaurentDigits {
    if grid.is_normal(p) {
        p.clone()
    } else {
        normalize(grid, p)
    }
}

/// Orders `p(u)` against `q(u)`. Operands outside normal form are
/// normalized first so the difference respects the input bound.
pub fn compare(grid: &Grid, p: &LaurentDigits, q: &LaurentDigits) -> Result<Ordering> {
    let diff = &normal(grid, p) - &normal(grid, q);
    Ok(sign_of(grid, &diff)?.to_ordering())
}

pub fn equal(grid: &Grid, p: &LaurentDigits, q: &LaurentDigits) -> Result<bool> {
    Ok(compare(grid, p, q)? == Ordering::Equal)
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum SignState {
    Running(Vec<i64>),
    Decided(Sign),
}

/// Algorithm C as an automaton over single-track digit letters, most
/// significant digit first. Padding reads as zero.
#[derive(Debug)]
pub struct SignAutomaton {
    grid: Grid,
    machine: SignMachine,
    residual: Mutex<HashMap<Vec<i64>, Sign>>,
}

impl SignAutomaton {
    pub fn new(grid: &Grid) -> SignAutomaton {
        SignAutomaton {
            grid: grid.clone(),
            machine: grid.sign_machine(),
            residual: Mutex::new(HashMap::new()),
        }
    }
}

impl Automaton for SignAutomaton {
    type State = SignState;
    type Class = Sign;

    fn tracks(&self) -> usize {
        1
    }

    fn alphabet(&self) -> Vec<Letter> {
        let b = self.grid.input_bound();
        (-b..=b).map(|z| Letter::digits(&[z])).collect()
    }

    fn start(&self) -> SignState {
        SignState::Running(vec![0; self.machine.memory_len()])
    }

    fn step(&self, state: &SignState, letter: &Letter) -> SignState {
        match state {
            SignState::Decided(_) => state.clone(),
            SignState::Running(m) => {
                let z = match letter.cells[0] {
                    Cell::Digit(z) => z,
                    Cell::Pad => 0,
                };
                let mut m = m.clone();
                match self.machine.feed(&mut m, z) {
                    Some(s) => SignState::Decided(s),
                    None => SignState::Running(m),
                }
            }
        }
    }

    fn classify(&self, state: &SignState) -> Sign {
        match state {
            SignState::Decided(s) => *s,
            SignState::Running(m) => {
                if let Some(s) = self.residual.lock().unwrap().get(m) {
                    return *s;
                }
                let s = self.grid.window_sign(m);
                self.residual.lock().unwrap().insert(m.clone(), s);
                s
            }
        }
    }
}

/// The sign automaton with on-demand state materialization.
pub fn compile_sign_dfa(grid: &Grid) -> LazyDfa<SignAutomaton> {
    LazyDfa::new(SignAutomaton::new(grid))
}

/// Digit word of `p`, most significant first.
pub fn digit_word(p: &LaurentDigits) -> Vec<Letter> {
    match p.dense_msb_i64() {
        Some((_, digits)) => digits.iter().map(|&z| Letter::digits(&[z])).collect(),
        None => Vec::new(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grids::{make_grid, shipped_grids, ConstKind, GridKind};
    use proptest::prelude::*;

    fn d(s: &str) -> LaurentDigits {
        s.parse().unwrap()
    }

    #[test]
    fn examples() {
        let g = make_grid(GridKind::Sqrt2Half).unwrap();
        assert_eq!(sign_of(&g, &d("{}")).unwrap(), Sign::Zero);
        assert_eq!(sign_of(&g, &d("{1:1,0:-4,-1:2}")).unwrap(), Sign::Zero);
        assert_eq!(sign_of(&g, &d("{0:2,-1:-4,-2:1}")).unwrap(), Sign::Positive);
        assert_eq!(sign_of(&g, &d("{0:5}")).unwrap(), Sign::Positive);
        let half = d("{-1:2,-2:-1}");
        let sqrt2 = d("{0:2,-1:-2}");
        assert_eq!(compare(&g, &half, &sqrt2).unwrap(), Ordering::Less);
        assert_eq!(compare(&g, &half, &half).unwrap(), Ordering::Equal);
        let g = make_grid(GridKind::Cbrt7).unwrap();
        assert_eq!(
            compare(&g, &d("{0:2,-1:-1}"), &d("{0:2}")).unwrap(),
            Ordering::Less
        );
    }

    #[test]
    fn rejects_large_digits() {
        let g = make_grid(GridKind::Sqrt2Half).unwrap();
        let err = sign_of(&g, &d("{3:13}")).unwrap_err();
        assert!(matches!(
            err,
            Error::InputBoundExceeded {
                exponent: 3,
                bound: 12,
                ..
            }
        ));
    }

    #[test]
    fn compare_accepts_unnormalized() {
        let g = make_grid(GridKind::Sqrt2Half).unwrap();
        assert!(equal(&g, &d("{0:40}"), &normalize(&g, &d("{0:40}"))).unwrap());
    }

    #[test]
    fn dfa_examples() {
        let g = make_grid(GridKind::Sqrt2Half).unwrap();
        let mut dfa = compile_sign_dfa(&g);
        assert_eq!(dfa.run(&digit_word(&d("{0:5}"))).unwrap(), Sign::Positive);
        let zeros = vec![Letter::digits(&[0]); 4];
        assert_eq!(dfa.run(&zeros).unwrap(), Sign::Zero);
        assert_eq!(dfa.run(&[]).unwrap(), Sign::Zero);
    }

    #[test]
    fn dfa_exhaustive_short_words() {
        let g = make_grid(GridKind::Sqrt2Half).unwrap();
        let mut dfa = compile_sign_dfa(&g);
        let mut word: Vec<i64> = Vec::new();
        fn rec(g: &Grid, dfa: &mut LazyDfa<SignAutomaton>, word: &mut Vec<i64>, left: usize) {
            let p = LaurentDigits::from_msb_digits(0, word);
            let letters: Vec<Letter> = word.iter().map(|&z| Letter::digits(&[z])).collect();
            assert_eq!(
                dfa.run(&letters).unwrap(),
                sign_of(g, &p).unwrap(),
                "{word:?}"
            );
            if left == 0 {
                return;
            }
            for z in -3..=3 {
                word.push(z);
                rec(g, dfa, word, left - 1);
                word.pop();
            }
        }
        rec(&g, &mut dfa, &mut word, 4);
    }

    #[test]
    fn overshoot_sign_is_leading_coefficient() {
        for g in shipped_grids() {
            let b = g.input_bound();
            let p = LaurentDigits::from_pairs([(0, b), (-1, -b), (-2, b), (-3, b)]);
            let t = sign_trace(&g, &p).unwrap();
            assert_eq!(t.result, g.value_sign(&p));
            if let Some((_, lead)) = t.overshoot {
                assert_eq!(Sign::from_i64(lead), t.result);
            }
        }
    }

    #[test]
    fn constants_are_positive() {
        for g in shipped_grids() {
            for c in [ConstKind::One, ConstKind::InvB, ConstKind::C] {
                if let Ok(p) = g.const_digits(c) {
                    assert_eq!(sign_of(&g, &p).unwrap(), Sign::Positive, "{} {c}", g.name());
                }
            }
        }
    }

    fn vector(bound: i64) -> impl Strategy<Value = LaurentDigits> {
        prop::collection::btree_map(-20i64..=20, -bound..=bound, 0..20)
            .prop_map(LaurentDigits::from_pairs)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]

        #[test]
        fn agrees_with_oracle_sqrt2half(p in vector(12)) {
            let g = make_grid(GridKind::Sqrt2Half).unwrap();
            prop_assert_eq!(sign_of(&g, &p).unwrap(), g.value_sign(&p));
        }

        #[test]
        fn agrees_with_oracle_cbrt7(p in vector(36)) {
            let g = make_grid(GridKind::Cbrt7).unwrap();
            let t = sign_trace(&g, &p).unwrap();
            prop_assert_eq!(t.result, g.value_sign(&p));
            for w in &t.windows {
                for (m, c) in w.iter().zip(g.window_bounds()) {
                    prop_assert!(m.abs() <= *c);
                }
            }
        }

        #[test]
        fn antisymmetric(p in vector(12)) {
            let g = make_grid(GridKind::Sqrt2Half).unwrap();
            prop_assert_eq!(sign_of(&g, &-&p).unwrap(), sign_of(&g, &p).unwrap().negate());
        }

        #[test]
        fn decisions_are_absorbing(p in vector(36), tail in prop::collection::vec(-36i64..=36, 0..10)) {
            let g = make_grid(GridKind::Cbrt7).unwrap();
            let a = SignAutomaton::new(&g);
            let mut s = a.start();
            for l in digit_word(&p) {
                s = a.step(&s, &l);
            }
            if let SignState::Decided(v) = s.clone() {
                for z in tail {
                    s = a.step(&s, &Letter::digits(&[z]));
                }
                prop_assert_eq!(s, SignState::Decided(v));
            }
        }
    }
}
