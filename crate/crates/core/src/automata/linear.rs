//! Sign automata for linear forms `Σ_t γ_t(u) · x_t(u) + K(u)`.
//!
//! The coefficient polynomials `γ_t` are folded into the transition map with
//! a short delay buffer: once the letter at exponent `k` is read, the digit of
//! the combined polynomial at `k + jmax` is complete and is passed to the sign
//! procedure. A nonzero constant `K` is positional, so its digits must be
//! injected at the right exponent; the automaton then uses the exponent-0
//! flag and, until it has seen that flag, keeps one branch per possible
//! exponent of the first letter.

use std::collections::{BTreeMap, HashMap};
use std::sync::Mutex;

use num_traits::ToPrimitive;

use super::{digit_cells, full_alphabet, Automaton, Cell, Letter};
use crate::digits::LaurentDigits;
use crate::error::{Error, Result};
use crate::grids::Grid;
use crate::sign::{Sign, SignMachine};

/// Coefficients per track and an optional constant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearForm {
    pub coeffs: Vec<LaurentDigits>,
    pub constant: LaurentDigits,
}

impl LinearForm {
    pub fn new(coeffs: Vec<LaurentDigits>) -> Self {
        LinearForm {
            coeffs,
            constant: LaurentDigits::zero(),
        }
    }

    pub fn with_constant(mut self, constant: LaurentDigits) -> Self {
        self.constant = constant;
        self
    }

    /// `Σ γ_t x_t + K` as a digit vector.
    pub fn evaluate(&self, xs: &[LaurentDigits]) -> LaurentDigits {
        let mut acc = self.constant.clone();
        for (g, x) in self.coeffs.iter().zip(xs) {
            acc = &acc + &g.convolve_poly(x);
        }
        acc
    }
}

/// Classification of a linear-form run.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Verdict {
    /// Not a well-formed convolution over the allowed digits.
    Invalid,
    Sign(Sign),
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Verdict::Invalid => write!(f, "Invalid"),
            Verdict::Sign(s) => write!(f, "{s}"),
        }
    }
}

/// Which signs of the form count as acceptance.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SignSet {
    pub negative: bool,
    pub zero: bool,
    pub positive: bool,
}

impl SignSet {
    pub const ZERO: SignSet = SignSet {
        negative: false,
        zero: true,
        positive: false,
    };
    pub const NEGATIVE: SignSet = SignSet {
        negative: true,
        zero: false,
        positive: false,
    };
    pub const NON_NEGATIVE: SignSet = SignSet {
        negative: false,
        zero: true,
        positive: true,
    };

    pub fn contains(&self, s: Sign) -> bool {
        match s {
            Sign::Negative => self.negative,
            Sign::Zero => self.zero,
            Sign::Positive => self.positive,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
enum Phase {
    Before,
    Inside,
    After,
}

/// Exponent of the next letter to read.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
enum Pos {
    /// Somewhere above every exponent where the constant matters.
    Far,
    At(i64),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
enum Run {
    Live { pending: Vec<i64>, memory: Vec<i64> },
    Decided(Sign),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
enum Core {
    Dead,
    Live {
        marked: bool,
        branches: Vec<(Pos, Run)>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LinState {
    phases: Vec<Phase>,
    core: Core,
}

/// Deterministic automaton deciding the sign of a linear form over the
/// tracks of a convolution word, read most significant first.
#[derive(Debug)]
pub struct LinearAutomaton {
    grid: Grid,
    form: LinearForm,
    ranges: Vec<(i64, i64)>,
    accept: SignSet,
    /// `(offset j, coefficient)` per track.
    terms: Vec<Vec<(i64, i64)>>,
    jmin: i64,
    jmax: i64,
    konst: BTreeMap<i64, i64>,
    /// Highest first exponent whose branch needs constant digits injected
    /// before the first letter.
    k_far: i64,
    /// Exponents at or below this no longer see constant digits.
    floor: i64,
    machine: SignMachine,
    scale: i64,
    residual: Mutex<HashMap<Vec<i64>, Sign>>,
}

impl LinearAutomaton {
    /// Tracks take digits within the grid's digit bound.
    pub fn new(grid: &Grid, form: LinearForm, accept: SignSet) -> Result<Self> {
        let d = grid.digit_bound();
        let ranges = vec![(-d, d); form.coeffs.len()];
        Self::with_ranges(grid, form, ranges, accept)
    }

    pub fn with_ranges(
        grid: &Grid,
        form: LinearForm,
        ranges: Vec<(i64, i64)>,
        accept: SignSet,
    ) -> Result<Self> {
        if ranges.len() != form.coeffs.len() {
            return Err(Error::InvalidArgument("one digit range per track".into()));
        }
        let small = |p: &LaurentDigits| -> Result<Vec<(i64, i64)>> {
            p.iter()
                .map(|(k, a)| {
                    a.to_i64()
                        .map(|a| (k, a))
                        .ok_or_else(|| Error::InvalidArgument(format!("coefficient {a} too large")))
                })
                .collect()
        };
        let terms: Vec<Vec<(i64, i64)>> = form.coeffs.iter().map(small).collect::<Result<_>>()?;
        let konst: BTreeMap<i64, i64> = small(&form.constant)?.into_iter().collect();
        let offsets = terms.iter().flatten().map(|(j, _)| *j);
        let jmin = offsets.clone().min().unwrap_or(0);
        let jmax = offsets.max().unwrap_or(0);
        let mut bound: i64 = 0;
        for (ts, (lo, hi)) in terms.iter().zip(&ranges) {
            let m = lo.abs().max(hi.abs());
            bound += ts.iter().map(|(_, g)| g.abs() * m).sum::<i64>();
        }
        bound += konst.values().map(|v| v.abs()).max().unwrap_or(0);
        // Algorithm C is homogeneous: digits bounded by t·input_bound are
        // handled by caps scaled by t.
        let scale = ((bound + grid.input_bound() - 1) / grid.input_bound()).max(1);
        let khi = konst.keys().next_back().copied().unwrap_or(0);
        let klo = konst.keys().next().copied().unwrap_or(0);
        Ok(LinearAutomaton {
            grid: grid.clone(),
            form,
            ranges,
            accept,
            terms,
            jmin,
            jmax,
            k_far: (khi - jmax).max(0),
            floor: (klo - jmax - 1).min(-1),
            konst,
            machine: SignMachine::new(grid, scale),
            scale,
            residual: Mutex::new(HashMap::new()),
        })
    }

    pub fn form(&self) -> &LinearForm {
        &self.form
    }

    /// Factor applied to the grid's window caps.
    pub fn scale(&self) -> i64 {
        self.scale
    }

    fn has_constant(&self) -> bool {
        !self.konst.is_empty()
    }

    fn kappa(&self, pos: i64) -> i64 {
        self.konst.get(&pos).copied().unwrap_or(0)
    }

    fn fresh_run(&self) -> Run {
        Run::Live {
            pending: vec![0; (self.jmax - self.jmin) as usize],
            memory: vec![0; self.machine.memory_len()],
        }
    }

    fn emit(&self, run: &mut Run, z: i64) {
        if let Run::Live { memory, .. } = run {
            if let Some(s) = self.machine.feed(memory, z) {
                *run = Run::Decided(s);
            }
        }
    }

    /// Reads one letter at exponent `n` (`None` when unknown, i.e. far above
    /// the constant).
    fn advance(&self, run: &mut Run, letter: &Letter, n: Option<i64>) {
        let out = match run {
            Run::Decided(_) => return,
            Run::Live { pending, .. } => {
                let len = pending.len();
                let mut ext = pending.clone();
                ext.push(0);
                for (ts, cell) in self.terms.iter().zip(&letter.cells) {
                    let z = cell.value();
                    if z != 0 {
                        for (j, g) in ts {
                            ext[(self.jmax - j) as usize] += g * z;
                        }
                    }
                }
                let head = ext[0] + n.map_or(0, |n| self.kappa(n + self.jmax));
                pending.copy_from_slice(&ext[1..=len]);
                head
            }
        };
        self.emit(run, out);
    }

    /// Sign of the whole form once the word ends with `n` the exponent of
    /// the (absent) next letter.
    fn finish(&self, run: &Run, n: Option<i64>) -> Sign {
        let mut run = run.clone();
        if let Run::Live { pending, .. } = &run {
            let pending = pending.clone();
            for (i, z) in pending.iter().enumerate() {
                let k = n.map_or(0, |n| self.kappa(n + self.jmax - i as i64));
                self.emit(&mut run, z + k);
            }
            if let Some(n) = n {
                let mut p = n + self.jmax - pending.len() as i64;
                for (k, v) in self.konst.range(..=p).rev() {
                    while p > *k {
                        self.emit(&mut run, 0);
                        p -= 1;
                    }
                    self.emit(&mut run, *v);
                    p -= 1;
                }
            }
        }
        match run {
            Run::Decided(s) => s,
            Run::Live { memory, .. } => {
                if let Some(s) = self.residual.lock().unwrap().get(&memory) {
                    return *s;
                }
                let s = self.grid.window_sign(&memory);
                self.residual.lock().unwrap().insert(memory, s);
                s
            }
        }
    }

    /// Branch whose first letter sits at exponent `k0`: constant digits
    /// above `k0 + jmax` are fed before anything is read.
    fn seeded(&self, k0: i64) -> Run {
        let mut run = self.fresh_run();
        let top = k0 + self.jmax;
        if let Some((&khi, _)) = self.konst.iter().next_back() {
            let mut p = khi;
            while p > top {
                self.emit(&mut run, self.kappa(p));
                p -= 1;
            }
        }
        run
    }

    pub fn verdict(&self, state: &LinState) -> Verdict {
        match &state.core {
            Core::Dead => Verdict::Invalid,
            Core::Live { marked, branches } => {
                if self.has_constant() && !marked {
                    return Verdict::Invalid;
                }
                match branches.first() {
                    None => Verdict::Invalid,
                    Some((Pos::Far, run)) => Verdict::Sign(self.finish(run, None)),
                    Some((Pos::At(n), run)) => Verdict::Sign(self.finish(run, Some(*n))),
                }
            }
        }
    }

    fn step_phases(&self, phases: &mut [Phase], letter: &Letter) -> bool {
        for ((ph, cell), (lo, hi)) in phases.iter_mut().zip(&letter.cells).zip(&self.ranges) {
            match cell {
                Cell::Digit(z) => {
                    if *ph == Phase::After || z < lo || z > hi {
                        return false;
                    }
                    *ph = Phase::Inside;
                }
                Cell::Pad => {
                    if *ph == Phase::Inside {
                        *ph = Phase::After;
                    }
                }
            }
        }
        true
    }
}

impl Automaton for LinearAutomaton {
    type State = LinState;
    type Class = bool;

    fn tracks(&self) -> usize {
        self.terms.len()
    }

    fn alphabet(&self) -> Vec<Letter> {
        let lo = self.ranges.iter().map(|r| r.0).min().unwrap_or(0);
        let hi = self.ranges.iter().map(|r| r.1).max().unwrap_or(0);
        full_alphabet(self.tracks(), &digit_cells(lo, hi), self.has_constant())
    }

    fn uses_units(&self) -> bool {
        self.has_constant()
    }

    fn start(&self) -> LinState {
        let branches = if self.has_constant() {
            let mut b: Vec<(Pos, Run)> = (0..=self.k_far)
                .map(|k| (Pos::At(k), self.seeded(k)))
                .collect();
            b.push((Pos::Far, self.fresh_run()));
            b
        } else {
            vec![(Pos::Far, self.fresh_run())]
        };
        LinState {
            phases: vec![Phase::Before; self.tracks()],
            core: Core::Live {
                marked: false,
                branches,
            },
        }
    }

    fn step(&self, state: &LinState, letter: &Letter) -> LinState {
        let dead = LinState {
            phases: state.phases.clone(),
            core: Core::Dead,
        };
        let Core::Live { marked, branches } = &state.core else {
            return dead;
        };
        if letter.cells.len() != self.tracks() {
            return dead;
        }
        let mut phases = state.phases.clone();
        if !self.step_phases(&mut phases, letter) {
            return LinState {
                phases,
                core: Core::Dead,
            };
        }
        if !self.has_constant() {
            let mut run = branches[0].1.clone();
            self.advance(&mut run, letter, None);
            return LinState {
                phases,
                core: Core::Live {
                    marked: *marked || letter.units,
                    branches: vec![(Pos::Far, run)],
                },
            };
        }
        if *marked && letter.units {
            return LinState {
                phases,
                core: Core::Dead,
            };
        }
        let mut next: Vec<(Pos, Run)> = Vec::new();
        for (pos, run) in branches {
            match pos {
                Pos::Far => {
                    if letter.units {
                        continue;
                    }
                    let mut run = run.clone();
                    self.advance(&mut run, letter, None);
                    next.push((Pos::Far, run.clone()));
                    next.push((Pos::At(self.k_far), run));
                }
                Pos::At(n) => {
                    if letter.units != (*n == 0) {
                        continue;
                    }
                    let mut run = run.clone();
                    self.advance(&mut run, letter, Some(*n));
                    let m = if n - 1 <= self.floor {
                        self.floor
                    } else {
                        n - 1
                    };
                    next.push((Pos::At(m), run));
                }
            }
        }
        next.sort();
        next.dedup();
        if next.is_empty() {
            return LinState {
                phases,
                core: Core::Dead,
            };
        }
        LinState {
            phases,
            core: Core::Live {
                marked: *marked || letter.units,
                branches: next,
            },
        }
    }

    fn classify(&self, state: &LinState) -> bool {
        match self.verdict(state) {
            Verdict::Invalid => false,
            Verdict::Sign(s) => self.accept.contains(s),
        }
    }
}

/// Conjunction of several automata over the same tracks.
#[derive(Debug)]
pub struct AllOf<A> {
    parts: Vec<A>,
}

impl<A: Automaton<Class = bool>> AllOf<A> {
    pub fn new(parts: Vec<A>) -> Self {
        assert!(!parts.is_empty());
        AllOf { parts }
    }

    pub fn parts(&self) -> &[A] {
        &self.parts
    }
}

impl<A: Automaton<Class = bool>> Automaton for AllOf<A> {
    type State = Vec<A::State>;
    type Class = bool;

    fn tracks(&self) -> usize {
        self.parts[0].tracks()
    }

    fn alphabet(&self) -> Vec<Letter> {
        self.parts[0].alphabet()
    }

    fn read_order(&self) -> super::ReadOrder {
        self.parts[0].read_order()
    }

    fn uses_units(&self) -> bool {
        self.parts.iter().any(|p| p.uses_units())
    }

    fn start(&self) -> Self::State {
        self.parts.iter().map(|p| p.start()).collect()
    }

    fn step(&self, state: &Self::State, letter: &Letter) -> Self::State {
        self.parts
            .iter()
            .zip(state)
            .map(|(p, s)| p.step(s, letter))
            .collect()
    }

    fn classify(&self, state: &Self::State) -> bool {
        self.parts.iter().zip(state).all(|(p, s)| p.classify(s))
    }
}
