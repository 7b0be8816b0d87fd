//! The twelve end-to-end acceptance checks, with adjustable sample sizes.
//!
//! Every check compares a construction against an independent computation:
//! the exact oracle for grid values, rational arithmetic for `𝔻_p`, or exact
//! `ℤ[√b]` arithmetic for streams.

use std::fmt;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::automata::{compile_school_adder, format_trace, parse_tableau, school_trace};
use crate::automata::{convolve, Letter};
use crate::digits::LaurentDigits;
use crate::geometry::{
    compile_region_dfa, convex_polygon_contains, equilateral_third, rect_same_area, rotate,
    triangle_contains, Point, Side, Triangle,
};
use crate::grids::{make_grid, shipped_grids, Grid, GridKind};
use crate::normalize::normalize;
use crate::omega::{
    omega_exact_sign, omega_trace, pell_pair, OmegaSpec, OmegaStream, OmegaVerdict,
};
use crate::sign::{compile_sign_dfa, equal, sign_of, Sign};

pub const CRITERIA: usize = 12;

#[derive(Clone, Debug)]
pub struct SelftestConfig {
    pub seed: u64,
    /// Random digit vectors per grid (criteria 2 and 3).
    pub vectors: usize,
    /// Longest word in the exhaustive DFA check.
    pub exhaustive_len: usize,
    /// Random long words per grid for the DFA check.
    pub dfa_words: usize,
    pub rotation_points: usize,
    /// Random (shape, point) pairs per grid.
    pub geometry_pairs: usize,
    pub equilateral_segments: usize,
    /// Largest convolution span in the region check.
    pub region_span: usize,
    pub omega_streams: usize,
}

impl SelftestConfig {
    pub fn full() -> SelftestConfig {
        SelftestConfig {
            seed: 2024,
            vectors: 10_000,
            exhaustive_len: 6,
            dfa_words: 10_000,
            rotation_points: 100,
            geometry_pairs: 1_000,
            equilateral_segments: 100,
            region_span: 4,
            omega_streams: 10_000,
        }
    }

    pub fn quick() -> SelftestConfig {
        SelftestConfig {
            seed: 2024,
            vectors: 300,
            exhaustive_len: 4,
            dfa_words: 300,
            rotation_points: 10,
            geometry_pairs: 60,
            equilateral_segments: 10,
            region_span: 2,
            omega_streams: 1_000,
        }
    }
}

impl Default for SelftestConfig {
    fn default() -> Self {
        SelftestConfig::full()
    }
}

#[derive(Clone, Debug)]
pub struct CriterionResult {
    pub id: usize,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub elapsed: Duration,
}

impl fmt::Display for CriterionResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "criterion {:>2} {} {}: {} ({:.2}s)",
            self.id,
            if self.passed { "PASS" } else { "FAIL" },
            self.name,
            self.detail,
            self.elapsed.as_secs_f64()
        )
    }
}

pub fn criterion_name(id: usize) -> &'static str {
    match id {
        1 => "school-adder tableaux",
        2 => "sign procedure vs oracle",
        3 => "normalization",
        4 => "sign automaton vs procedure",
        5 => "constant identities",
        6 => "rotation algebra",
        7 => "containment vs oracle",
        8 => "equilateral construction",
        9 => "region automaton",
        10 => "rectangle same-area",
        11 => "omega sign detector",
        12 => "Pell pairs",
        _ => "unknown",
    }
}

type Outcome = Result<String, String>;

pub fn run_criterion(id: usize, cfg: &SelftestConfig) -> CriterionResult {
    let start = Instant::now();
    let outcome = match id {
        1 => school_tableaux(),
        2 => sign_vs_oracle(cfg),
        3 => normalization(cfg),
        4 => dfa_vs_procedure(cfg),
        5 => constant_identities(),
        6 => rotation_algebra(cfg),
        7 => containment(cfg),
        8 => equilateral(cfg),
        9 => region_dfa(cfg),
        10 => rect_area(),
        11 => omega_detector(cfg),
        12 => pell_pairs(),
        _ => Err(format!("no criterion {id}")),
    };
    let (passed, detail) = match outcome {
        Ok(d) => (true, d),
        Err(d) => (false, d),
    };
    CriterionResult {
        id,
        name: criterion_name(id),
        passed,
        detail,
        elapsed: start.elapsed(),
    }
}

/// Runs every criterion, each on its own thread.
pub fn run_all(cfg: &SelftestConfig) -> Vec<CriterionResult> {
    std::thread::scope(|s| {
        let handles: Vec<_> = (1..=CRITERIA)
            .map(|id| s.spawn(move || run_criterion(id, cfg)))
            .collect();
        handles
            .into_iter()
            .zip(1..)
            .map(|(h, id)| {
                h.join().unwrap_or_else(|_| CriterionResult {
                    id,
                    name: criterion_name(id),
                    passed: false,
                    detail: "panicked".into(),
                    elapsed: Duration::ZERO,
                })
            })
            .collect()
    })
}

fn rng(cfg: &SelftestConfig, salt: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(cfg.seed.wrapping_mul(1_000_003).wrapping_add(salt))
}

/// Each exponent in `lo..=hi` gets a digit in `-bound..=bound` with
/// probability `density`.
pub fn random_vector(
    rng: &mut impl Rng,
    lo: i64,
    hi: i64,
    bound: i64,
    density: f64,
) -> LaurentDigits {
    let mut pairs = Vec::new();
    for k in lo..=hi {
        if rng.gen_bool(density) {
            pairs.push((k, rng.gen_range(-bound..=bound)));
        }
    }
    LaurentDigits::from_pairs(pairs)
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn school_tableaux() -> Outcome {
    let adder = compile_school_adder(10).map_err(|e| e.to_string())?;
    let cases = [
        (
            ["# 2 3 5 8. 2 2 5", "# 9 1 1 2. # # #", "1 1 4 7 0. 2 2 5"],
            "n c n n c  n n n n",
            true,
        ),
        (
            ["3 3 3 3. 3 3 #", "# # 2 2. 2 2 2", "# 1 5 5. 5 5 2"],
            "i i n n  n n n n",
            false,
        ),
        (
            ["9 9 1 2 3. 4 5 6", "# # 9 8 7. 6 5 4", "0 0 1 1 1. 1 1 #"],
            "c c c c c  c c c n",
            false,
        ),
    ];
    for (rows, want, verdict) in cases {
        let t = parse_tableau(&rows).map_err(|e| e.to_string())?;
        let (states, ok) = school_trace(&adder, &t).map_err(|e| e.to_string())?;
        let got = format_trace(&states, t.fraction);
        ensure(got == want && ok == verdict, || {
            format!("got '{got}' ({ok}), want '{want}' ({verdict})")
        })?;
    }
    Ok("3/3 traces and verdicts".into())
}

fn corpus(cfg: &SelftestConfig, g: &Grid, salt: u64) -> Vec<LaurentDigits> {
    let mut r = rng(cfg, salt);
    (0..cfg.vectors)
        .map(|_| {
            let density = r.gen_range(0.05..=1.0);
            random_vector(&mut r, -20, 20, g.input_bound(), density)
        })
        .collect()
}

fn sign_vs_oracle(cfg: &SelftestConfig) -> Outcome {
    let mut total = 0;
    for (i, g) in shipped_grids().iter().enumerate() {
        for p in corpus(cfg, g, 20 + i as u64) {
            let s = sign_of(g, &p).map_err(|e| format!("{}: {e}", g.name()))?;
            let o = g.oracle().sign_at(&p);
            ensure(s == o, || {
                format!("{}: sign_of({p}) = {s}, oracle {o}", g.name())
            })?;
            total += 1;
        }
    }
    Ok(format!("{total} vectors over 5 grids agree"))
}

fn normalization(cfg: &SelftestConfig) -> Outcome {
    let mut total = 0;
    for (i, g) in shipped_grids().iter().enumerate() {
        for p in corpus(cfg, g, 20 + i as u64) {
            let q = normalize(g, &p);
            ensure(g.is_normal(&q), || {
                format!("{}: {q} exceeds the digit bound", g.name())
            })?;
            ensure(g.oracle().sign_at(&(&p - &q)) == Sign::Zero, || {
                format!("{}: value of {p} changed to {q}", g.name())
            })?;
            ensure(normalize(g, &q) == q, || {
                format!("{}: normalize not idempotent on {q}", g.name())
            })?;
            total += 1;
        }
    }
    Ok(format!(
        "{total} vectors: value, bound and idempotence hold"
    ))
}

fn word_vector(word: &[i64]) -> LaurentDigits {
    LaurentDigits::from_msb_digits(0, word)
}

/// Advances `word` to the next word in lexicographic order; false after
/// the last one.
fn next_word(word: &mut [i64], lo: i64, hi: i64) -> bool {
    for i in (0..word.len()).rev() {
        if word[i] < hi {
            word[i] += 1;
            return true;
        }
        word[i] = lo;
    }
    false
}

fn dfa_vs_procedure(cfg: &SelftestConfig) -> Outcome {
    let g = make_grid(GridKind::Sqrt2Half).map_err(|e| e.to_string())?;
    let mut dfa = compile_sign_dfa(&g);
    let d = g.digit_bound();
    let mut exhaustive = 0usize;
    let mut word: Vec<i64> = Vec::new();
    for len in 0..=cfg.exhaustive_len {
        word.clear();
        word.resize(len, -d);
        loop {
            let letters: Vec<Letter> = word.iter().map(|&z| Letter::digits(&[z])).collect();
            let a = dfa.run(&letters).map_err(|e| e.to_string())?;
            let b = sign_of(&g, &word_vector(&word)).map_err(|e| e.to_string())?;
            ensure(a == b, || {
                format!("word {word:?}: automaton {a}, procedure {b}")
            })?;
            exhaustive += 1;
            if !next_word(&mut word, -d, d) {
                break;
            }
        }
    }
    let mut random = 0;
    for (gi, g) in shipped_grids().iter().enumerate() {
        let mut dfa = compile_sign_dfa(g);
        let mut r = rng(cfg, 40 + gi as u64);
        let b = g.input_bound();
        for _ in 0..cfg.dfa_words {
            let len = r.gen_range(7..=24);
            let word: Vec<i64> = (0..len).map(|_| r.gen_range(-b..=b)).collect();
            let letters: Vec<Letter> = word.iter().map(|&z| Letter::digits(&[z])).collect();
            let a = dfa
                .run(&letters)
                .map_err(|e| format!("{}: {e}", g.name()))?;
            let s = sign_of(g, &word_vector(&word)).map_err(|e| e.to_string())?;
            ensure(a == s, || {
                format!("{}: word {word:?}: automaton {a}, procedure {s}", g.name())
            })?;
            random += 1;
        }
    }
    Ok(format!(
        "{exhaustive} exhaustive words, {random} random words"
    ))
}

fn zero_by_sign(g: &Grid, p: &LaurentDigits, what: &str) -> Result<(), String> {
    let p = if g.is_normal(p) || p.max_abs() <= BigInt::from(g.input_bound()) {
        p.clone()
    } else {
        normalize(g, p)
    };
    let s = sign_of(g, &p).map_err(|e| e.to_string())?;
    ensure(s == Sign::Zero, || {
        format!("{}: sign_of({what}) = {s}", g.name())
    })
}

fn constant_identities() -> Outcome {
    let mut checked = 0;
    for g in shipped_grids() {
        let spec = g.spec().clone();
        let one = LaurentDigits::monomial(0, 1);
        if let (Some(p1), Some(b)) = (&spec.p1, spec.b) {
            zero_by_sign(&g, &(&p1.scale(&BigInt::from(b)) - &one), "b·p1 - 1")?;
            checked += 1;
        }
        if let (Some(p2), Some(rad)) = (&spec.p2, spec.radicand) {
            let mut power = one.clone();
            for _ in 0..rad.root {
                power = power.convolve_poly(p2);
            }
            zero_by_sign(
                &g,
                &(&power - &LaurentDigits::monomial(0, rad.value)),
                "p2^root - c^root",
            )?;
            checked += 1;
        }
        zero_by_sign(&g, &g.p3_digits(), "p3")?;
        zero_by_sign(&g, g.p4(), "p4")?;
        checked += 2;
    }
    Ok(format!("{checked} identities over 5 grids"))
}

fn random_point(r: &mut impl Rng, g: &Grid, lo: i64, hi: i64) -> Point {
    let d = g.digit_bound().min(9);
    Point::new(
        normalize(g, &random_vector(r, lo, hi, d, 0.7)),
        normalize(g, &random_vector(r, lo, hi, d, 0.7)),
    )
}

fn same_point(g: &Grid, p: &Point, q: &Point) -> Result<bool, String> {
    Ok(equal(g, &p.x, &q.x).map_err(|e| e.to_string())?
        && equal(g, &p.y, &q.y).map_err(|e| e.to_string())?)
}

fn rotation_algebra(cfg: &SelftestConfig) -> Outcome {
    let err = |e: crate::Error| e.to_string();
    let g3 = make_grid(GridKind::SqrtB2m1Half(2)).map_err(err)?;
    let g2 = make_grid(GridKind::Sqrt2Half).map_err(err)?;
    let mut r = rng(cfg, 60);
    for _ in 0..cfg.rotation_points {
        let p = random_point(&mut r, &g3, -2, 2);
        let twice = rotate(&g3, &rotate(&g3, &p, 30).map_err(err)?, 30).map_err(err)?;
        ensure(
            same_point(&g3, &twice, &rotate(&g3, &p, 60).map_err(err)?)?,
            || format!("rotate30² ≠ rotate60 at {p}"),
        )?;
        let mut q = p.clone();
        for _ in 0..12 {
            q = rotate(&g3, &q, 30).map_err(err)?;
        }
        ensure(same_point(&g3, &q, &p)?, || {
            format!("twelve 30° turns move {p}")
        })?;
        let p = random_point(&mut r, &g2, -2, 2);
        let mut q = p.clone();
        for _ in 0..8 {
            q = rotate(&g2, &q, 45).map_err(err)?;
        }
        ensure(same_point(&g2, &q, &p)?, || {
            format!("eight 45° turns move {p}")
        })?;
    }
    Ok(format!("{} points per law", cfg.rotation_points))
}

/// Side functional as an unnormalized digit vector.
fn oracle_side(a: &Point, b: &Point, q: &Point) -> LaurentDigits {
    let alpha = &b.x - &a.x;
    let beta = &b.y - &a.y;
    &(&q.y - &a.y).convolve_poly(&alpha) - &(&q.x - &a.x).convolve_poly(&beta)
}

fn oracle_side_sign(g: &Grid, a: &Point, b: &Point, q: &Point) -> Sign {
    g.oracle().sign_at(&oracle_side(a, b, q))
}

/// Oracle containment for a polygon with a known orientation.
fn oracle_inside(g: &Grid, vs: &[Point], orient: Sign, q: &Point) -> bool {
    (0..vs.len())
        .all(|i| oracle_side_sign(g, &vs[i], &vs[(i + 1) % vs.len()], q) * orient != Sign::Negative)
}

fn raw_distance(a: &Point, b: &Point) -> LaurentDigits {
    let dx = &a.x - &b.x;
    let dy = &a.y - &b.y;
    &dx.convolve_poly(&dx) + &dy.convolve_poly(&dy)
}

fn oracle_strictly_convex(g: &Grid, vs: &[Point]) -> bool {
    let n = vs.len();
    n >= 3
        && (0..n).all(|i| {
            oracle_side_sign(g, &vs[i], &vs[(i + 1) % n], &vs[(i + 2) % n]) == Sign::Positive
        })
}

/// Strictly convex hull by gift wrapping on oracle orientations,
/// counter-clockwise.
fn oracle_hull(g: &Grid, pts: &[Point]) -> Vec<Point> {
    let n = pts.len();
    let mut start = 0;
    for i in 1..n {
        let less =
            |a: &LaurentDigits, b: &LaurentDigits| g.oracle().sign_at(&(a - b)) == Sign::Negative;
        let same_x = g.oracle().sign_at(&(&pts[i].x - &pts[start].x)) == Sign::Zero;
        if less(&pts[i].x, &pts[start].x) || (same_x && less(&pts[i].y, &pts[start].y)) {
            start = i;
        }
    }
    let mut hull = vec![start];
    loop {
        let cur = *hull.last().unwrap();
        let mut cand = if cur == 0 { 1 } else { 0 };
        for j in 0..n {
            if j == cur || j == cand {
                continue;
            }
            let s = oracle_side_sign(g, &pts[cur], &pts[cand], &pts[j]);
            let farther = || {
                let diff = &raw_distance(&pts[cur], &pts[j]) - &raw_distance(&pts[cur], &pts[cand]);
                g.oracle().sign_at(&diff) == Sign::Positive
            };
            // move to any point to the right, or farther along the same line
            if s == Sign::Negative || (s == Sign::Zero && farther()) {
                cand = j;
            }
        }
        if cand == start || hull.len() > n {
            break;
        }
        hull.push(cand);
    }
    hull.into_iter().map(|i| pts[i].clone()).collect()
}

fn containment(cfg: &SelftestConfig) -> Outcome {
    let mut tri = 0;
    let mut poly = 0;
    let mut inside = 0;
    for (gi, g) in shipped_grids().iter().enumerate() {
        let mut r = rng(cfg, 70 + gi as u64);
        let mut t_done = 0;
        while t_done < cfg.geometry_pairs {
            let vs: Vec<Point> = (0..3).map(|_| random_point(&mut r, g, -1, 1)).collect();
            let orient = oracle_side_sign(g, &vs[0], &vs[1], &vs[2]);
            if orient == Sign::Zero {
                continue;
            }
            let q = if r.gen_bool(0.1) {
                vs[r.gen_range(0..3)].clone()
            } else {
                random_point(&mut r, g, -1, 1)
            };
            let t = Triangle::new(vs[0].clone(), vs[1].clone(), vs[2].clone());
            let got = triangle_contains(g, &t, &q).map_err(|e| format!("{}: {e}", g.name()))?;
            let want = oracle_inside(g, &vs, orient, &q);
            ensure(got == want, || {
                format!(
                    "{}: triangle {:?} point {q}: {got} vs oracle {want}",
                    g.name(),
                    t
                )
            })?;
            inside += usize::from(want);
            t_done += 1;
        }
        tri += t_done;
        let mut p_done = 0;
        while p_done < cfg.geometry_pairs {
            let pts: Vec<Point> = (0..6).map(|_| random_point(&mut r, g, -1, 1)).collect();
            let hull = oracle_hull(g, &pts);
            if !oracle_strictly_convex(g, &hull) {
                continue;
            }
            let q = random_point(&mut r, g, -1, 1);
            let got =
                convex_polygon_contains(g, &hull, &q).map_err(|e| format!("{}: {e}", g.name()))?;
            let want = oracle_inside(g, &hull, Sign::Positive, &q);
            ensure(got == want, || {
                format!("{}: polygon point {q}: {got} vs oracle {want}", g.name())
            })?;
            inside += usize::from(want);
            p_done += 1;
        }
        poly += p_done;
    }
    Ok(format!(
        "{tri} triangle and {poly} polygon queries ({inside} inside)"
    ))
}

fn equilateral(cfg: &SelftestConfig) -> Outcome {
    let g = make_grid(GridKind::SqrtB2m1Half(2)).map_err(|e| e.to_string())?;
    let mut r = rng(cfg, 80);
    let mut done = 0;
    while done < cfg.equilateral_segments {
        let a = random_point(&mut r, &g, -2, 1);
        let b = random_point(&mut r, &g, -2, 1);
        if same_point(&g, &a, &b)? {
            continue;
        }
        for side in [Side::Plus, Side::Minus] {
            let c = equilateral_third(&g, &a, &b, side).map_err(|e| e.to_string())?;
            let ab = raw_distance(&a, &b);
            let bc = raw_distance(&b, &c);
            let ca = raw_distance(&c, &a);
            let zero =
                |x: &LaurentDigits, y: &LaurentDigits| g.oracle().sign_at(&(x - y)) == Sign::Zero;
            ensure(zero(&ab, &bc) && zero(&bc, &ca), || {
                format!("unequal sides for {a}, {b} -> {c}")
            })?;
        }
        done += 1;
    }
    Ok(format!("{done} segments, both sides"))
}

fn dyadic(n: i64, e: i32) -> LaurentDigits {
    // n · 2^e with n small, through the signed binary grid
    let g = make_grid(GridKind::Db(2)).unwrap();
    normalize(&g, &LaurentDigits::monomial(e as i64, n))
}

/// All vectors with digits in `-1..=1` on `lo..=hi`.
fn all_vectors(lo: i64, hi: i64) -> Vec<LaurentDigits> {
    let n = (hi - lo + 1) as u32;
    (0..3usize.pow(n))
        .map(|mut code| {
            LaurentDigits::from_pairs((lo..=hi).map(|k| {
                let dgt = (code % 3) as i64 - 1;
                code /= 3;
                (k, dgt)
            }))
        })
        .collect()
}

fn region_dfa(cfg: &SelftestConfig) -> Outcome {
    let g = make_grid(GridKind::Db(2)).map_err(|e| e.to_string())?;
    let pt = |x: (i64, i32), y: (i64, i32)| Point::new(dyadic(x.0, x.1), dyadic(y.0, y.1));
    let triangles = [
        Triangle::new(pt((0, 0), (0, 0)), pt((1, 0), (0, 0)), pt((0, 0), (1, 0))),
        Triangle::new(
            pt((-1, 0), (-1, -1)),
            pt((3, -1), (1, -2)),
            pt((1, -2), (2, 0)),
        ),
        Triangle::new(
            pt((-2, 0), (1, 0)),
            pt((1, -1), (-3, -1)),
            pt((5, 0), (3, -2)),
        ),
    ];
    let span = cfg.region_span as i64;
    let mut pairs: Vec<(LaurentDigits, LaurentDigits)> = Vec::new();
    for lo in (1 - span)..=0 {
        let vs = all_vectors(lo, lo + span - 1);
        for x in &vs {
            for y in &vs {
                pairs.push((x.clone(), y.clone()));
            }
        }
    }
    pairs.sort_by_key(|(x, y)| (x.to_string(), y.to_string()));
    pairs.dedup();
    let mut checked = 0;
    let mut accepted = 0;
    for t in &triangles {
        let mut dfa = compile_region_dfa(&g, t).map_err(|e| e.to_string())?;
        for (x, y) in &pairs {
            let word = convolve(&[x.clone(), y.clone()]).letters;
            let a = dfa.run(&word).map_err(|e| e.to_string())?;
            let q = Point::new(x.clone(), y.clone());
            let b = triangle_contains(&g, t, &q).map_err(|e| e.to_string())?;
            ensure(a == b, || {
                format!("triangle {t:?}, point {q}: automaton {a}, procedure {b}")
            })?;
            checked += 1;
            accepted += usize::from(a);
        }
    }
    Ok(format!(
        "{checked} words over 3 triangles ({accepted} accepted)"
    ))
}

fn rect_area() -> Outcome {
    let pow2 = |e: i64| {
        let two = BigRational::from_integer(2.into());
        if e >= 0 {
            two.pow(e as i32)
        } else {
            two.recip().pow((-e) as i32)
        }
    };
    let sides: Vec<BigRational> = (1..=10)
        .step_by(2)
        .flat_map(|l| (-5..=5).map(move |i| (l, i)))
        .map(|(l, i)| BigRational::from_integer(BigInt::from(l)) * pow2(i))
        .collect();
    let mut checked = 0;
    let mut hits = 0;
    for ell in [1i64, 3, 5] {
        for k in -3..=3 {
            let target = BigRational::from_integer(ell.into()) * pow2(k);
            for w in &sides {
                for h in &sides {
                    let got = rect_same_area(2, w, h, (ell, k)).map_err(|e| e.to_string())?;
                    let want = w * h == target;
                    ensure(got == want, || {
                        format!("{w} × {h} vs ({ell}, {k}): {got}, want {want}")
                    })?;
                    checked += 1;
                    hits += usize::from(want);
                }
            }
        }
    }
    Ok(format!("{checked} rectangle/area pairs ({hits} equal)"))
}

fn omega_detector(cfg: &SelftestConfig) -> Outcome {
    let spec = OmegaSpec::new(2).map_err(|e| e.to_string())?;
    ensure((spec.d, spec.e) == (17, 12), || {
        format!("pell_pair(2) = ({}, {})", spec.d, spec.e)
    })?;
    let (cap_a, cap_b) = spec.memory_bounds();
    let mut r = rng(cfg, 110);
    let mut decided = 0;
    for _ in 0..cfg.omega_streams {
        let hi = r.gen_range(-3..=6);
        let lo = hi - r.gen_range(0..=8);
        let density = r.gen_range(0.2..=1.0);
        let digits = random_vector(&mut r, lo, hi, spec.operand_bound(), density);
        let depth = lo - r.gen_range(0..=30);
        let s = OmegaStream::new(digits, depth).map_err(|e| e.to_string())?;
        let t = omega_trace(&spec, &s).map_err(|e| e.to_string())?;
        let pre = t.memory.len() - usize::from(t.overshoot.is_some());
        for (k, (a, b)) in &t.memory[..pre] {
            ensure(a.abs() <= cap_a && b.abs() <= cap_b, || {
                format!("memory ({a}, {b}) at {k} out of bounds")
            })?;
        }
        if t.overshoot.is_some() && t.memory.len() >= 2 {
            let (_, (a, _)) = t.memory[t.memory.len() - 2];
            ensure(a.abs() >= 100 * spec.d as i128, || {
                format!("overshoot from |A| = {} < 100d", a.abs())
            })?;
        }
        if let OmegaVerdict::Decided(v) = t.verdict {
            let o = omega_exact_sign(&spec, s.digits());
            ensure(v == o, || format!("{s}: detector {v}, exact {o}"))?;
            decided += 1;
        }
    }
    Ok(format!(
        "{decided}/{} streams decided, all correct",
        cfg.omega_streams
    ))
}

fn pell_pairs() -> Outcome {
    let mut out = Vec::new();
    for b in [2i64, 3, 5, 6, 7, 8, 10] {
        let (d, e) = pell_pair(b).map_err(|e| e.to_string())?;
        let (dd, ee, bb) = (BigInt::from(d), BigInt::from(e), BigInt::from(b));
        ensure(d > 3 && e > 3 && &dd * &dd == &bb * &ee * &ee + 1, || {
            format!("b = {b}: ({d}, {e})")
        })?;
        out.push(format!("{b}:({d},{e})"));
    }
    Ok(out.join(" "))
}
