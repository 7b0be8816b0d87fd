//! Grid descriptions and the shipped grid instances.
//!
//! A grid fixes an algebraic base `u > 1` together with four integer Laurent
//! polynomials: `p1(u) = 1/b`, `p2(u) = c`, a monic zero polynomial `p3`
//! (`d_0 = 1`) driving the sign procedure, and a dominant zero polynomial
//! `p4` (`e_ℓ > Σ_{k≠ℓ} |e_k|`) driving normalization.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::digits::LaurentDigits;
use crate::error::{Error, Result};
use crate::normalize::normalize;
use crate::oracle::Oracle;
use crate::sign::{Sign, SignMachine};

/// `c` as a real root: `c^root = value`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Radicand {
    pub root: u32,
    pub value: i64,
}

/// Serializable grid description (the JSON grid-spec schema).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GridSpec {
    pub name: String,
    /// Minimal polynomial of `u`, lowest degree first, monic.
    pub minpoly: Vec<i64>,
    /// Rational bracket of `u`, e.g. `["341/100", "342/100"]` or `["3.41", "3.42"]`.
    pub u_interval: [String; 2],
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub b: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub radicand: Option<Radicand>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p1: Option<LaurentDigits>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p2: Option<LaurentDigits>,
    /// `d_0, d_{-1}, ..., d_{-h+1}`.
    pub p3: Vec<i64>,
    /// `e_k` keyed by exponent.
    pub p4: BTreeMap<i64, i64>,
    pub ell: i64,
    pub digit_bound: i64,
    /// Caps on the `h - 1` pending window entries, leading entry first.
    pub window_bounds: Vec<i64>,
    pub input_bound: i64,
}

/// The grid instances constructed by hand.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GridKind {
    /// Base-`b` rationals with signed digits.
    Db(i64),
    /// Contains `√2` and `1/2`.
    Sqrt2Half,
    /// Contains `√(b²-1)` and `1/b`.
    SqrtB2m1Half(i64),
    /// Contains `∛7`.
    Cbrt7,
    /// Contains `∛65` and `1/2`.
    Cbrt65Half,
}

/// Named constants available through [`Grid::const_digits`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConstKind {
    One,
    Integer(i64),
    /// `1/b`, from `p1`.
    InvB,
    /// `c`, from `p2`.
    C,
    /// `1/2`, when `b` is even.
    Half,
    /// `c/2`.
    HalfC,
}

impl fmt::Display for ConstKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConstKind::One => write!(f, "1"),
            ConstKind::Integer(n) => write!(f, "{n}"),
            ConstKind::InvB => write!(f, "1/b"),
            ConstKind::C => write!(f, "c"),
            ConstKind::Half => write!(f, "1/2"),
            ConstKind::HalfC => write!(f, "c/2"),
        }
    }
}

pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::InvalidGrid(format!("bad rational '{s}'"));
    if let Some((n, d)) = s.split_once('/') {
        let n = BigInt::from_str(n.trim()).map_err(|_| bad())?;
        let d = BigInt::from_str(d.trim()).map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        return Ok(BigRational::new(n, d));
    }
    if let Some((i, frac)) = s.split_once('.') {
        let neg = i.starts_with('-');
        let digits = format!("{}{}", i.trim_start_matches('-'), frac);
        let n = BigInt::from_str(&digits).map_err(|_| bad())?;
        let d = num_traits::pow(BigInt::from(10), frac.len());
        let v = BigRational::new(n, d);
        return Ok(if neg { -v } else { v });
    }
    Ok(BigRational::from_integer(
        BigInt::from_str(s).map_err(|_| bad())?,
    ))
}

/// A validated grid: the spec plus its exact oracle.
#[derive(Debug, Clone)]
pub struct Grid {
    spec: GridSpec,
    oracle: Oracle,
    p4: LaurentDigits,
    e_ell: i64,
}

impl Grid {
    /// Checks the structural and oracle invariants; fails on the first
    /// violated one.
    pub fn new(spec: GridSpec) -> Result<Grid> {
        let grid = Self::unchecked(spec)?;
        let failures: Vec<String> = grid
            .invariant_checks()
            .into_iter()
            .filter(|c| !c.passed)
            .map(|c| format!("{}: {}", c.name, c.detail))
            .collect();
        if failures.is_empty() {
            Ok(grid)
        } else {
            Err(Error::InvalidGrid(failures.join("; ")))
        }
    }

    /// Builds the grid without running the invariant checks. The oracle
    /// bracket is still verified, since nothing works without it.
    fn unchecked(spec: GridSpec) -> Result<Grid> {
        if spec.p3.is_empty() {
            return Err(Error::InvalidGrid("p3 is empty".into()));
        }
        let lo = parse_rational(&spec.u_interval[0])?;
        let hi = parse_rational(&spec.u_interval[1])?;
        let oracle = Oracle::new(&spec.minpoly, &lo, &hi)?;
        let p4 = LaurentDigits::from_pairs(spec.p4.iter().map(|(k, e)| (*k, *e)));
        let e_ell = spec.p4.get(&spec.ell).copied().unwrap_or(0);
        Ok(Grid {
            spec,
            oracle,
            p4,
            e_ell,
        })
    }

    pub fn from_json(text: &str) -> Result<Grid> {
        let spec: GridSpec = serde_json::from_str(text)
            .map_err(|e| Error::InvalidGrid(format!("grid JSON: {e}")))?;
        Grid::new(spec)
    }

    pub fn load(path: &Path) -> Result<Grid> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::InvalidGrid(format!("{}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    pub fn spec(&self) -> &GridSpec {
        &self.spec
    }

    pub fn name(&self) -> &str {
        &self.spec.name
    }

    pub fn oracle(&self) -> &Oracle {
        &self.oracle
    }

    pub fn digit_bound(&self) -> i64 {
        self.spec.digit_bound
    }

    pub fn input_bound(&self) -> i64 {
        self.spec.input_bound
    }

    /// Window length `h` (number of `p3` coefficients).
    pub fn h(&self) -> usize {
        self.spec.p3.len()
    }

    pub fn p3(&self) -> &[i64] {
        &self.spec.p3
    }

    pub fn p3_digits(&self) -> LaurentDigits {
        LaurentDigits::from_pairs(
            self.spec
                .p3
                .iter()
                .enumerate()
                .map(|(i, d)| (-(i as i64), *d)),
        )
    }

    pub fn p4(&self) -> &LaurentDigits {
        &self.p4
    }

    pub fn ell(&self) -> i64 {
        self.spec.ell
    }

    pub fn e_ell(&self) -> i64 {
        self.e_ell
    }

    pub fn window_bounds(&self) -> &[i64] {
        &self.spec.window_bounds
    }

    /// Sign procedure for digits bounded by `input_bound`.
    pub fn sign_machine(&self) -> SignMachine {
        SignMachine::new(self, 1)
    }

    /// Exact sign of `p(u)`.
    pub fn value_sign(&self, p: &LaurentDigits) -> Sign {
        self.oracle.sign_at(p)
    }

    pub fn is_normal(&self, p: &LaurentDigits) -> bool {
        p.max_abs() <= BigInt::from(self.spec.digit_bound)
    }

    pub fn const_digits(&self, which: ConstKind) -> Result<LaurentDigits> {
        let missing = || Error::UnsupportedConstant {
            grid: self.spec.name.clone(),
            constant: which.to_string(),
        };
        Ok(match which {
            ConstKind::One => LaurentDigits::monomial(0, 1),
            ConstKind::Integer(n) => normalize(self, &LaurentDigits::monomial(0, n)),
            ConstKind::InvB => normalize(self, self.spec.p1.as_ref().ok_or_else(missing)?),
            ConstKind::C => normalize(self, self.spec.p2.as_ref().ok_or_else(missing)?),
            ConstKind::Half => {
                let b = self.spec.b.ok_or_else(missing)?;
                let p1 = self.spec.p1.as_ref().ok_or_else(missing)?;
                if b % 2 != 0 {
                    return Err(missing());
                }
                normalize(self, &p1.scale(&BigInt::from(b / 2)))
            }
            ConstKind::HalfC => {
                let half = self.const_digits(ConstKind::Half).map_err(|_| missing())?;
                let c = self.const_digits(ConstKind::C).map_err(|_| missing())?;
                normalize(self, &half.convolve_poly(&c))
            }
        })
    }

    /// Sign of the pending window `m_1 u^{h-2} + ... + m_{h-1}` left over
    /// when the sign procedure runs out of digits.
    pub fn window_sign(&self, memory: &[i64]) -> Sign {
        if memory.iter().all(|&m| m == 0) {
            return Sign::Zero;
        }
        let n = memory.len() as i64;
        let p = LaurentDigits::from_pairs(
            memory
                .iter()
                .enumerate()
                .map(|(i, &m)| (n - 1 - i as i64, m)),
        );
        self.oracle.sign_at(&p)
    }

    fn invariant_checks(&self) -> Vec<CheckResult> {
        let s = &self.spec;
        let mut out = Vec::new();
        let mut check = |name: &str, passed: bool, detail: String| {
            out.push(CheckResult {
                name: name.to_string(),
                passed,
                detail,
            })
        };
        check(
            "p3 leading coefficient",
            s.p3.first() == Some(&1),
            format!("d_0 = {:?}", s.p3.first()),
        );
        let others: i64 =
            s.p4.iter()
                .filter(|(k, _)| **k != s.ell)
                .map(|(_, e)| e.abs())
                .sum();
        check(
            "p4 dominance",
            self.e_ell > others,
            format!("e_ell = {} vs sum of others {}", self.e_ell, others),
        );
        let h = s.p3.len();
        check(
            "window bound count",
            s.window_bounds.len() + 1 == h && h >= 2,
            format!("{} caps for h = {}", s.window_bounds.len(), h),
        );
        let min_cap = s.window_bounds.iter().copied().min().unwrap_or(0);
        check(
            "caps exceed input bound",
            min_cap > s.input_bound,
            format!("min cap {} vs input bound {}", min_cap, s.input_bound),
        );
        check(
            "input bound covers three operands",
            s.input_bound >= 3 * s.digit_bound,
            format!("{} vs 3 * {}", s.input_bound, s.digit_bound),
        );
        check(
            "digit bound admits normalization",
            s.digit_bound >= self.e_ell - 1 && s.digit_bound >= 1,
            format!("D = {} vs e_ell - 1 = {}", s.digit_bound, self.e_ell - 1),
        );
        let cleared: Vec<i64> = s.p3.iter().rev().copied().collect();
        check(
            "minpoly is p3 cleared of negative powers",
            cleared == s.minpoly,
            format!("{:?} vs {:?}", cleared, s.minpoly),
        );
        check(
            "p3(u) = 0",
            self.oracle.sign_at(&self.p3_digits()) == Sign::Zero,
            String::new(),
        );
        check(
            "p4(u) = 0",
            self.oracle.sign_at(&self.p4) == Sign::Zero,
            String::new(),
        );
        if let Some(p1) = &s.p1 {
            let ok = match s.b {
                Some(b) => {
                    self.oracle
                        .sign_at(&(&p1.scale(&BigInt::from(b)) - &LaurentDigits::monomial(0, 1)))
                        == Sign::Zero
                }
                None => false,
            };
            check("b * p1(u) = 1", ok, format!("b = {:?}", s.b));
        }
        if let Some(p2) = &s.p2 {
            let ok = match s.radicand {
                Some(r) => {
                    let mut pow = LaurentDigits::monomial(0, 1);
                    for _ in 0..r.root {
                        pow = pow.convolve_poly(p2);
                    }
                    let diff = &pow - &LaurentDigits::monomial(0, r.value);
                    let positive = self.oracle.sign_at(p2) == Sign::Positive;
                    positive && self.oracle.sign_at(&diff) == Sign::Zero
                }
                None => false,
            };
            check("p2(u)^root = radicand", ok, format!("{:?}", s.radicand));
        }
        for (name, p) in [("p1", &s.p1), ("p2", &s.p2)] {
            if let Some(p) = p {
                check(
                    &format!("{name} within digit bound"),
                    self.is_normal(p),
                    p.to_string(),
                );
            }
        }
        out
    }
}

impl fmt::Display for Grid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.spec.name)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

/// Outcome of [`validate_grid`].
#[derive(Clone, Debug)]
pub struct ValidationReport {
    pub grid: String,
    pub checks: Vec<CheckResult>,
    pub fuzz_trials: usize,
    pub fuzz_overshoots: usize,
    pub fuzz_failures: usize,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed) && self.fuzz_failures == 0
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            let mark = if c.passed { "ok" } else { "FAIL" };
            if c.detail.is_empty() {
                writeln!(f, "{} {}: {}", self.grid, c.name, mark)?;
            } else {
                writeln!(f, "{} {}: {} ({})", self.grid, c.name, mark, c.detail)?;
            }
        }
        write!(
            f,
            "{} termination fuzz: {} trials, {} overshoots, {} failures",
            self.grid, self.fuzz_trials, self.fuzz_overshoots, self.fuzz_failures
        )
    }
}

/// Checks every grid invariant and fuzzes the termination condition of the
/// sign procedure. Never aborts; failures are reported.
///
/// For each random input that overshoots, the pending window `W` (scaled so
/// its last entry sits at `u^0`) must dominate the unread tail, i.e.
/// `|W| (u - 1) > input_bound`, and its sign must equal the sign of the
/// eliminated leading coefficient. This is an empirical check, not a proof.
pub fn validate_grid(spec: &GridSpec, trials: usize, seed: u64) -> ValidationReport {
    let mut report = ValidationReport {
        grid: spec.name.clone(),
        checks: Vec::new(),
        fuzz_trials: 0,
        fuzz_overshoots: 0,
        fuzz_failures: 0,
    };
    let grid = match Grid::unchecked(spec.clone()) {
        Ok(g) => g,
        Err(e) => {
            report.checks.push(CheckResult {
                name: "isolating interval".into(),
                passed: false,
                detail: e.to_string(),
            });
            return report;
        }
    };
    report.checks.push(CheckResult {
        name: "isolating interval".into(),
        passed: true,
        detail: String::new(),
    });
    report.checks.extend(grid.invariant_checks());
    if !report.checks.iter().all(|c| c.passed) {
        return report;
    }
    let machine = grid.sign_machine();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let bound = grid.input_bound();
    // tail below the window is at most input_bound / (u - 1)
    let u_minus_one = LaurentDigits::from_pairs([(1, 1), (0, -1)]);
    for _ in 0..trials {
        report.fuzz_trials += 1;
        let len = rng.gen_range(4..30);
        let digits: Vec<i64> = (0..len).map(|_| rng.gen_range(-bound..=bound)).collect();
        let mut memory = vec![0i64; grid.h() - 1];
        for &z in &digits {
            let leading = memory[0];
            if let Some(decided) = machine.feed(&mut memory, z) {
                report.fuzz_overshoots += 1;
                let hm = memory.len() as i64;
                let w = LaurentDigits::from_pairs(
                    memory
                        .iter()
                        .enumerate()
                        .map(|(j, &m)| (hm - 1 - j as i64, m)),
                );
                let ws = grid.value_sign(&w);
                let dominated = ws != Sign::Zero && {
                    let lhs = w
                        .scale(&BigInt::from(ws.as_i64()))
                        .convolve_poly(&u_minus_one);
                    let test = &lhs - &LaurentDigits::monomial(0, bound);
                    grid.value_sign(&test) == Sign::Positive
                };
                if !(dominated && ws == decided && decided == Sign::from_i64(leading)) {
                    report.fuzz_failures += 1;
                }
                break;
            }
        }
    }
    report
}

fn flat(cap: i64, h: usize) -> Vec<i64> {
    vec![cap; h - 1]
}

/// Constructs one of the hand-built grids.
pub fn make_grid(kind: GridKind) -> Result<Grid> {
    Grid::new(grid_spec(kind)?)
}

pub fn grid_spec(kind: GridKind) -> Result<GridSpec> {
    Ok(match kind {
        GridKind::Db(b) => {
            if b < 2 {
                return Err(Error::InvalidArgument(format!("base {b} < 2")));
            }
            GridSpec {
                name: format!("d{b}"),
                minpoly: vec![-b, 1],
                u_interval: [format!("{}/2", 2 * b - 1), format!("{}/2", 2 * b + 1)],
                b: Some(b),
                radicand: None,
                p1: Some(LaurentDigits::monomial(-1, 1)),
                p2: None,
                p3: vec![1, -b],
                p4: BTreeMap::from([(1, -1), (0, b)]),
                ell: 0,
                digit_bound: b - 1,
                window_bounds: flat(10 * b * b, 2),
                input_bound: 3 * b,
            }
        }
        GridKind::Sqrt2Half => GridSpec {
            name: "sqrt2half".into(),
            minpoly: vec![2, -4, 1],
            u_interval: ["3.41".into(), "3.42".into()],
            b: Some(2),
            radicand: Some(Radicand { root: 2, value: 2 }),
            p1: Some(LaurentDigits::from_pairs([(-1, 2), (-2, -1)])),
            p2: Some(LaurentDigits::from_pairs([(0, 2), (-1, -2)])),
            p3: vec![1, -4, 2],
            p4: BTreeMap::from([(1, -1), (0, 4), (-1, -2)]),
            ell: 0,
            digit_bound: 3,
            window_bounds: flat(100, 3),
            input_bound: 12,
        },
        GridKind::SqrtB2m1Half(b) => {
            if b < 2 {
                return Err(Error::InvalidArgument(format!("base {b} < 2")));
            }
            let b2 = b * b;
            GridSpec {
                name: if b == 2 {
                    "sqrt3half".into()
                } else {
                    format!("sqrtb2m1:{b}")
                },
                minpoly: vec![b2, -2 * b2, 1],
                u_interval: [b2.to_string(), (2 * b2).to_string()],
                b: Some(b),
                radicand: Some(Radicand {
                    root: 2,
                    value: b2 - 1,
                }),
                p1: Some(LaurentDigits::from_pairs([(-1, 2 * b), (-2, -b)])),
                p2: Some(LaurentDigits::from_pairs([(0, b), (-1, -b)])),
                p3: vec![1, -2 * b2, b2],
                p4: BTreeMap::from([(1, -1), (0, 2 * b2), (-1, -b2)]),
                ell: 0,
                digit_bound: 2 * b2 - 1,
                window_bounds: flat(1000 * b.pow(5), 3),
                input_bound: 6 * b2,
            }
        }
        GridKind::Cbrt7 => GridSpec {
            name: "cbrt7".into(),
            minpoly: vec![-1, 6, -12, 1],
            u_interval: ["11".into(), "12".into()],
            b: None,
            radicand: Some(Radicand { root: 3, value: 7 }),
            p1: None,
            p2: Some(LaurentDigits::from_pairs([(0, 2), (-1, -1)])),
            p3: vec![1, -12, 6, -1],
            p4: BTreeMap::from([(0, -1), (-1, 12), (-2, -6), (-3, 1)]),
            ell: -1,
            digit_bound: 12,
            window_bounds: vec![16 * 360, 4 * 360, 360],
            input_bound: 36,
        },
        GridKind::Cbrt65Half => GridSpec {
            name: "cbrt65half".into(),
            minpoly: vec![-8, -48, -96, 1],
            u_interval: ["96.49".into(), "96.50".into()],
            b: Some(2),
            radicand: Some(Radicand { root: 3, value: 65 }),
            p1: Some(LaurentDigits::from_pairs([(-1, 48), (-2, 24), (-3, 4)])),
            p2: Some(LaurentDigits::from_pairs([(0, 4), (-1, 2)])),
            p3: vec![1, -96, -48, -8],
            p4: BTreeMap::from([(0, -1), (-1, 96), (-2, 48), (-3, 8)]),
            ell: -1,
            digit_bound: 95,
            window_bounds: vec![19 * 285_000, 7 * 285_000, 285_000],
            input_bound: 285,
        },
    })
}

/// Parses a grid name: `d<b>`, `sqrt2half`, `sqrt3half`, `sqrtb2m1:<b>`,
/// `cbrt7`, `cbrt65half`.
pub fn parse_grid_kind(name: &str) -> Result<GridKind> {
    let n = name.trim().to_ascii_lowercase();
    let bad = || Error::InvalidArgument(format!("unknown grid '{name}'"));
    Ok(match n.as_str() {
        "sqrt2half" => GridKind::Sqrt2Half,
        "sqrt3half" => GridKind::SqrtB2m1Half(2),
        "cbrt7" => GridKind::Cbrt7,
        "cbrt65half" => GridKind::Cbrt65Half,
        _ => {
            if let Some(b) = n.strip_prefix("sqrtb2m1:") {
                GridKind::SqrtB2m1Half(b.parse().map_err(|_| bad())?)
            } else if let Some(b) = n.strip_prefix('d') {
                GridKind::Db(b.parse().map_err(|_| bad())?)
            } else {
                return Err(bad());
            }
        }
    })
}

/// Resolves a grid by name, or loads it from a JSON file when the argument
/// ends in `.json`.
pub fn grid_by_name(name: &str) -> Result<Grid> {
    if name.ends_with(".json") {
        return Grid::load(Path::new(name));
    }
    make_grid(parse_grid_kind(name)?)
}

/// The five grids shipped with the crate, in a fixed order.
pub fn shipped_kinds() -> [GridKind; 5] {
    [
        GridKind::Db(10),
        GridKind::Sqrt2Half,
        GridKind::SqrtB2m1Half(2),
        GridKind::Cbrt7,
        GridKind::Cbrt65Half,
    ]
}

pub fn shipped_grids() -> Vec<Grid> {
    shipped_kinds()
        .into_iter()
        .map(|k| make_grid(k).expect("shipped grid validates"))
        .collect()
}

/// Lower end of the bracket as `f64`, for reports.
pub fn u_approx(grid: &Grid) -> f64 {
    let (a, b) = grid.oracle().u_bracket();
    ((a + b) / BigRational::from_integer(2.into()))
        .to_f64()
        .unwrap_or(f64::NAN)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(s: &str) -> LaurentDigits {
        s.parse().unwrap()
    }

    fn rat(n: i64, den: i64) -> BigRational {
        BigRational::new(n.into(), den.into())
    }

    #[test]
    fn shipped_grids_build() {
        let grids = shipped_grids();
        let names: Vec<&str> = grids.iter().map(|g| g.name()).collect();
        assert_eq!(
            names,
            ["d10", "sqrt2half", "sqrt3half", "cbrt7", "cbrt65half"]
        );
    }

    #[test]
    fn sqrt2half_parameters() {
        let g = make_grid(GridKind::Sqrt2Half).unwrap();
        assert_eq!(g.const_digits(ConstKind::C).unwrap(), d("{0:2,-1:-2}"));
        assert_eq!(g.const_digits(ConstKind::InvB).unwrap(), d("{-1:2,-2:-1}"));
        assert_eq!(g.const_digits(ConstKind::Integer(0)).unwrap(), d("{}"));
        assert_eq!(g.e_ell(), 4);
        assert_eq!(g.spec().minpoly, vec![2, -4, 1]);
        assert_eq!(g.window_bounds(), &[100, 100]);
    }

    #[test]
    fn sqrt3half_parameters() {
        let g = make_grid(GridKind::SqrtB2m1Half(2)).unwrap();
        assert_eq!(g.const_digits(ConstKind::C).unwrap(), d("{0:2,-1:-2}"));
        assert_eq!(g.e_ell(), 8);
        assert_eq!(g.window_bounds()[0], 1000 * 32);
        assert_eq!(g.const_digits(ConstKind::HalfC).unwrap(), d("{0:1,-1:-1}"));
        assert_eq!(g.const_digits(ConstKind::Half).unwrap(), d("{-1:4,-2:-2}"));
    }

    #[test]
    fn cbrt_parameters() {
        let g = make_grid(GridKind::Cbrt7).unwrap();
        assert_eq!(g.window_bounds(), &[16 * 360, 4 * 360, 360]);
        assert_eq!(g.digit_bound(), 12);
        assert!(matches!(
            g.const_digits(ConstKind::InvB),
            Err(Error::UnsupportedConstant { .. })
        ));
        let g = make_grid(GridKind::Cbrt65Half).unwrap();
        assert_eq!(g.digit_bound(), 95);
        assert_eq!(
            g.const_digits(ConstKind::InvB).unwrap(),
            d("{-1:48,-2:24,-3:4}")
        );
    }

    #[test]
    fn brackets_match_stated_ranges() {
        let within = |kind, lo: BigRational, hi: BigRational| {
            let g = make_grid(kind).unwrap();
            let (a, b) = g.oracle().u_bracket();
            assert!(a >= lo && b <= hi, "{kind:?}");
        };
        within(GridKind::Sqrt2Half, rat(341, 100), rat(342, 100));
        within(GridKind::Cbrt7, rat(11, 1), rat(12, 1));
        within(GridKind::Cbrt65Half, rat(9649, 100), rat(9650, 100));
    }

    #[test]
    fn shipped_grids_validate() {
        for kind in shipped_kinds() {
            let report = validate_grid(&grid_spec(kind).unwrap(), 300, 7);
            assert!(report.passed(), "{report}");
        }
    }

    #[test]
    fn tampered_dominance_is_reported() {
        let mut spec = grid_spec(GridKind::Sqrt2Half).unwrap();
        // e_ell = 3 = |-1| + |-2|; p4 no longer vanishes at u either
        spec.p4.insert(0, 3);
        let report = validate_grid(&spec, 10, 1);
        assert!(!report.passed());
        let dom = report
            .checks
            .iter()
            .find(|c| c.name == "p4 dominance")
            .unwrap();
        assert!(!dom.passed);
        assert!(Grid::new(spec).is_err());
    }

    #[test]
    fn json_round_trip() {
        let spec = grid_spec(GridKind::Cbrt65Half).unwrap();
        let text = serde_json::to_string_pretty(&spec).unwrap();
        let g = Grid::from_json(&text).unwrap();
        assert_eq!(g.spec(), &spec);
    }

    #[test]
    fn names_resolve() {
        assert_eq!(parse_grid_kind("d7").unwrap(), GridKind::Db(7));
        assert_eq!(
            parse_grid_kind("sqrtb2m1:3").unwrap(),
            GridKind::SqrtB2m1Half(3)
        );
        assert!(parse_grid_kind("nope").is_err());
        assert!(make_grid(GridKind::SqrtB2m1Half(3)).is_ok());
        assert!(make_grid(GridKind::Db(2)).is_ok());
    }

    #[test]
    fn parses_rationals() {
        assert_eq!(parse_rational("3.41").unwrap(), rat(341, 100));
        assert_eq!(parse_rational("-1/2").unwrap(), rat(-1, 2));
        assert_eq!(parse_rational("7").unwrap(), rat(7, 1));
        assert!(parse_rational("1/0").is_err());
    }
}
