//! The `gridctl` command line.
//!
//! Output is line-oriented and deterministic. Exit status is 0 on success,
//! 1 on domain errors and 2 on usage errors.

use std::ffi::OsString;
use std::fs;
use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::automata::checkers::{
    compile_addition_checker, compile_eq_checker, compile_lt_checker, compile_mulconst_checker,
};
use crate::automata::{
    compile_school_adder, convolve, export_dot, format_trace, minimize, parse_tableau,
    school_trace, Dfa, LinearAutomaton,
};
use crate::automata::{LazyDfa, DEFAULT_STATE_CAP};
use crate::digits::LaurentDigits;
use crate::error::Error;
use crate::geometry::{
    compile_region_dfa, convex_polygon_contains, equilateral_third, rect_same_area, render_svg,
    rotate, triangle_contains, Point, Side, SvgScene, Triangle,
};
use crate::grids::{grid_by_name, parse_rational, shipped_grids, validate_grid, ConstKind, Grid};
use crate::mulconst::mul_by_grid_constant;
use crate::normalize::normalize;
use crate::omega::{omega_compare, omega_reduce, omega_sign, OmegaSpec, OmegaStream};
use crate::selftest::{run_all, run_criterion, SelftestConfig};
use crate::sign::{compare, compile_sign_dfa, digit_word, sign_of};

#[derive(Parser, Debug)]
#[command(
    name = "gridctl",
    version,
    about = "Exact arithmetic, automata and geometry over semiautomatic grids"
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List, show or validate grids.
    Grids {
        #[command(subcommand)]
        action: GridsAction,
    },
    /// Normal form of a digit vector.
    Normalize(GridValue),
    /// Sign of a digit vector.
    Sign(GridValue),
    /// Compare two digit vectors: Less, Equal or Greater.
    Cmp(GridPair),
    /// Normal form of the sum.
    Add(GridPair),
    /// Multiply by a constant: an integer, a digit vector, or one of
    /// c, 1/b, 1/2, c/2.
    Mul {
        #[arg(long)]
        grid: String,
        #[arg(long)]
        by: String,
        #[arg(allow_hyphen_values = true)]
        value: String,
    },
    /// Build a relation automaton; run it on inputs or export it.
    Automaton(AutomatonArgs),
    /// Plane geometry.
    Geo {
        #[command(subcommand)]
        action: GeoAction,
    },
    /// Digit streams in the base d + e√b.
    Omega {
        #[command(subcommand)]
        action: OmegaAction,
    },
    /// Exact evaluation.
    Oracle {
        #[command(subcommand)]
        action: OracleAction,
    },
    /// Run the acceptance checks.
    Selftest {
        /// Smaller sample sizes.
        #[arg(long)]
        quick: bool,
        /// Run only these criteria.
        #[arg(long, value_delimiter = ',')]
        only: Vec<usize>,
        #[arg(long)]
        seed: Option<u64>,
    },
}

#[derive(Args, Debug)]
struct GridValue {
    #[arg(long)]
    grid: String,
    #[arg(allow_hyphen_values = true)]
    value: String,
}

#[derive(Args, Debug)]
struct GridPair {
    #[arg(long)]
    grid: String,
    #[arg(allow_hyphen_values = true)]
    a: String,
    #[arg(allow_hyphen_values = true)]
    b: String,
}

#[derive(Subcommand, Debug)]
enum GridsAction {
    /// One line per shipped grid.
    List,
    /// The full specification as JSON.
    Show { name: String },
    /// Check invariants and fuzz the sign procedure.
    Validate {
        #[arg(long, default_value_t = 2000)]
        trials: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Grid names or JSON files; all shipped grids when empty.
        names: Vec<String>,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Relation {
    Add,
    Lt,
    Eq,
    Mulconst,
    Sign,
    School,
}

#[derive(Args, Debug)]
struct AutomatonArgs {
    #[arg(long, value_enum)]
    relation: Relation,
    /// Required except for the school adder.
    #[arg(long)]
    grid: Option<String>,
    /// Numerator for mulconst: accepts x·num = y·den.
    #[arg(long, allow_hyphen_values = true)]
    num: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    den: Option<String>,
    /// Base of the school adder.
    #[arg(long, default_value_t = 10)]
    base: i64,
    /// Write the explicit automaton in DOT format.
    #[arg(long)]
    dot: Option<String>,
    /// Minimize before reporting and exporting.
    #[arg(long)]
    minimize: bool,
    #[arg(long, default_value_t = DEFAULT_STATE_CAP)]
    max_states: usize,
    /// Digit vectors, one per track (tableau rows for the school adder).
    /// Without inputs the automaton is built explicitly and summarized.
    #[arg(allow_hyphen_values = true)]
    inputs: Vec<String>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SideArg {
    Plus,
    Minus,
}

#[derive(Subcommand, Debug)]
enum GeoAction {
    /// Rotate a point about the origin.
    Rotate {
        #[arg(long)]
        grid: String,
        #[arg(long, allow_hyphen_values = true)]
        angle: i64,
        #[arg(long)]
        svg: Option<String>,
        #[arg(allow_hyphen_values = true)]
        point: String,
    },
    /// Membership in a triangle or strictly convex polygon.
    Contains {
        #[arg(long)]
        grid: String,
        #[arg(long, allow_hyphen_values = true)]
        point: String,
        #[arg(long)]
        svg: Option<String>,
        #[arg(allow_hyphen_values = true, num_args = 3..)]
        vertices: Vec<String>,
    },
    /// Third vertex of an equilateral triangle.
    Equilateral {
        #[arg(long)]
        grid: String,
        #[arg(long, value_enum, default_value_t = SideArg::Plus)]
        side: SideArg,
        #[arg(long)]
        svg: Option<String>,
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        b: String,
    },
    /// Whether a rectangle with the given sides has area ℓ·p^k.
    RectArea {
        #[arg(long, default_value_t = 2)]
        p: u64,
        /// `ℓ,k`.
        #[arg(long, allow_hyphen_values = true)]
        area: String,
        width: String,
        height: String,
    },
    /// The triangle as a two-track automaton.
    Region {
        #[arg(long)]
        grid: String,
        /// Run the automaton on this point.
        #[arg(long, allow_hyphen_values = true)]
        point: Option<String>,
        #[arg(long)]
        dot: Option<String>,
        #[arg(long, default_value_t = DEFAULT_STATE_CAP)]
        max_states: usize,
        #[arg(allow_hyphen_values = true, num_args = 3)]
        vertices: Vec<String>,
    },
}

#[derive(Args, Debug)]
struct OmegaOpts {
    #[arg(long)]
    b: i64,
    /// Lowest materialized exponent; defaults to 16 below the lowest digit.
    #[arg(long, allow_hyphen_values = true)]
    depth: Option<i64>,
}

#[derive(Subcommand, Debug)]
enum OmegaAction {
    /// Sign of a stream.
    Sign {
        #[command(flatten)]
        opts: OmegaOpts,
        #[arg(allow_hyphen_values = true)]
        stream: String,
    },
    /// Sign of the difference of two streams.
    Cmp {
        #[command(flatten)]
        opts: OmegaOpts,
        #[arg(allow_hyphen_values = true)]
        left: String,
        #[arg(allow_hyphen_values = true)]
        right: String,
    },
    /// Apply reduction steps.
    Reduce {
        #[command(flatten)]
        opts: OmegaOpts,
        #[arg(long, default_value_t = 100)]
        steps: usize,
        #[arg(allow_hyphen_values = true)]
        stream: String,
    },
    /// The pair (d, e) used for b.
    Pell {
        #[arg(long)]
        b: i64,
    },
}

#[derive(Subcommand, Debug)]
enum OracleAction {
    /// An interval around the value, plus its sign.
    Value {
        #[arg(long)]
        grid: String,
        #[arg(long, default_value = "1e-12")]
        prec: String,
        #[arg(allow_hyphen_values = true)]
        value: String,
    },
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Domain(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse(_) => Failure::Usage(e.to_string()),
            e => Failure::Domain(e.to_string()),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Domain(e.to_string())
    }
}

type CliResult = std::result::Result<(), Failure>;

/// Parses `args` (including the program name) and runs the command.
/// Returns the exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion)
                || e.kind() == ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand
            {
                let _ = write!(out, "{e}");
                return if e.kind() == ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand {
                    2
                } else {
                    0
                };
            }
            // the first paragraph of clap's message, on one line
            let text = e.to_string();
            let line: Vec<&str> = text
                .lines()
                .take_while(|l| !l.trim().is_empty())
                .map(str::trim)
                .collect();
            let _ = writeln!(err, "{}", line.join(" "));
            return 2;
        }
    };
    match dispatch(cli.command, out, err) {
        Ok(()) => 0,
        Err(Failure::Usage(m)) => {
            let _ = writeln!(err, "error: {m}");
            2
        }
        Err(Failure::Domain(m)) => {
            let _ = writeln!(err, "error: {m}");
            1
        }
    }
}

fn digits(s: &str) -> Result<LaurentDigits, Failure> {
    LaurentDigits::parse(s).map_err(|e| Failure::from(Error::from(e)))
}

fn grid(name: &str) -> Result<Grid, Failure> {
    grid_by_name(name).map_err(|e| Failure::Usage(e.to_string()))
}

fn usage(m: impl Into<String>) -> Failure {
    Failure::Usage(m.into())
}

fn dispatch(cmd: Command, out: &mut dyn Write, err: &mut dyn Write) -> CliResult {
    match cmd {
        Command::Grids { action } => grids_cmd(action, out),
        Command::Normalize(a) => {
            let g = grid(&a.grid)?;
            writeln!(out, "{}", normalize(&g, &digits(&a.value)?))?;
            Ok(())
        }
        Command::Sign(a) => {
            let g = grid(&a.grid)?;
            let p = digits(&a.value)?;
            let p = if p.max_abs() > BigInt::from(g.input_bound()) {
                normalize(&g, &p)
            } else {
                p
            };
            writeln!(out, "{}", sign_of(&g, &p)?)?;
            Ok(())
        }
        Command::Cmp(a) => {
            let g = grid(&a.grid)?;
            let o = compare(&g, &digits(&a.a)?, &digits(&a.b)?)?;
            writeln!(out, "{o:?}")?;
            Ok(())
        }
        Command::Add(a) => {
            let g = grid(&a.grid)?;
            writeln!(out, "{}", normalize(&g, &(&digits(&a.a)? + &digits(&a.b)?)))?;
            Ok(())
        }
        Command::Mul {
            grid: name,
            by,
            value,
        } => {
            let g = grid(&name)?;
            let c = constant(&g, &by)?;
            let x = normalize(&g, &digits(&value)?);
            writeln!(out, "{}", mul_by_grid_constant(&g, &c, &x))?;
            Ok(())
        }
        Command::Automaton(a) => automaton_cmd(a, out, err),
        Command::Geo { action } => geo_cmd(action, out, err),
        Command::Omega { action } => omega_cmd(action, out),
        Command::Oracle { action } => oracle_cmd(action, out),
        Command::Selftest { quick, only, seed } => {
            let mut cfg = if quick {
                SelftestConfig::quick()
            } else {
                SelftestConfig::full()
            };
            if let Some(s) = seed {
                cfg.seed = s;
            }
            let results = if only.is_empty() {
                run_all(&cfg)
            } else {
                only.iter().map(|&id| run_criterion(id, &cfg)).collect()
            };
            for r in &results {
                writeln!(out, "{r}")?;
            }
            let failed = results.iter().filter(|r| !r.passed).count();
            writeln!(
                out,
                "selftest: {} passed, {failed} failed",
                results.len() - failed
            )?;
            if failed > 0 {
                return Err(Failure::Domain(format!("{failed} criteria failed")));
            }
            Ok(())
        }
    }
}

fn constant(g: &Grid, by: &str) -> Result<LaurentDigits, Failure> {
    let kind = match by.trim() {
        "c" => Some(ConstKind::C),
        "1/b" => Some(ConstKind::InvB),
        "1/2" => Some(ConstKind::Half),
        "c/2" => Some(ConstKind::HalfC),
        _ => None,
    };
    if let Some(k) = kind {
        return Ok(g.const_digits(k)?);
    }
    if let Ok(n) = by.trim().parse::<i64>() {
        return Ok(g.const_digits(ConstKind::Integer(n))?);
    }
    digits(by)
}

fn grids_cmd(action: GridsAction, out: &mut dyn Write) -> CliResult {
    match action {
        GridsAction::List => {
            for g in shipped_grids() {
                let s = g.spec();
                writeln!(
                    out,
                    "{} minpoly={:?} u~{:.6} digit_bound={} input_bound={}",
                    s.name,
                    s.minpoly,
                    crate::grids::u_approx(&g),
                    s.digit_bound,
                    s.input_bound
                )?;
            }
            Ok(())
        }
        GridsAction::Show { name } => {
            let g = grid(&name)?;
            let json = serde_json::to_string_pretty(g.spec())
                .map_err(|e| Failure::Domain(e.to_string()))?;
            writeln!(out, "{json}")?;
            Ok(())
        }
        GridsAction::Validate {
            trials,
            seed,
            names,
        } => {
            let grids: Vec<Grid> = if names.is_empty() {
                shipped_grids()
            } else {
                names.iter().map(|n| grid(n)).collect::<Result<_, _>>()?
            };
            let mut failed = 0;
            for g in &grids {
                let report = validate_grid(g.spec(), trials, seed);
                writeln!(out, "{report}")?;
                if !report.passed() {
                    failed += 1;
                }
            }
            if failed > 0 {
                return Err(Failure::Domain(format!(
                    "{failed} grid(s) failed validation"
                )));
            }
            Ok(())
        }
    }
}

fn write_file(path: &str, text: &str, err: &mut dyn Write) -> CliResult {
    fs::write(path, text)?;
    writeln!(err, "wrote {path}")?;
    Ok(())
}

fn report_dfa<C>(
    dfa: Dfa<C>,
    minimize_it: bool,
    dot: Option<&str>,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> CliResult
where
    C: Clone + Eq + std::hash::Hash + std::fmt::Display,
{
    writeln!(out, "states {}", dfa.state_count())?;
    writeln!(out, "letters {}", dfa.alphabet().len())?;
    let dfa = if minimize_it {
        let m = minimize(&dfa);
        writeln!(out, "minimal states {}", m.state_count())?;
        m
    } else {
        dfa
    };
    if let Some(path) = dot {
        write_file(path, &export_dot(&dfa), err)?;
    }
    Ok(())
}

fn verdict(accept: bool) -> &'static str {
    if accept {
        "accept"
    } else {
        "reject"
    }
}

fn run_linear(
    mut dfa: LazyDfa<LinearAutomaton>,
    inputs: &[String],
    tracks: usize,
    out: &mut dyn Write,
) -> CliResult {
    if inputs.len() != tracks {
        return Err(usage(format!(
            "expected {tracks} inputs, got {}",
            inputs.len()
        )));
    }
    let words: Vec<LaurentDigits> = inputs.iter().map(|s| digits(s)).collect::<Result<_, _>>()?;
    let accept = dfa.run(&convolve(&words).letters)?;
    writeln!(out, "{}", verdict(accept))?;
    Ok(())
}

fn automaton_cmd(a: AutomatonArgs, out: &mut dyn Write, err: &mut dyn Write) -> CliResult {
    if let Relation::School = a.relation {
        let adder = compile_school_adder(a.base)?;
        if a.inputs.is_empty() {
            return report_dfa(adder, a.minimize, a.dot.as_deref(), out, err);
        }
        let rows: Vec<&str> = a.inputs.iter().map(|s| s.as_str()).collect();
        if rows.len() != 3 {
            return Err(usage("the school adder takes three tableau rows"));
        }
        let t = parse_tableau(&rows)?;
        let (states, ok) = school_trace(&adder, &t)?;
        writeln!(out, "{}", format_trace(&states, t.fraction))?;
        writeln!(out, "{}", verdict(ok))?;
        return Ok(());
    }
    let name = a
        .grid
        .as_deref()
        .ok_or_else(|| usage("--grid is required"))?;
    let g = grid(name)?;
    if let Relation::Sign = a.relation {
        let mut dfa = compile_sign_dfa(&g);
        dfa.set_cap(a.max_states);
        if a.inputs.is_empty() {
            let explicit = dfa.materialize()?;
            return report_dfa(explicit, a.minimize, a.dot.as_deref(), out, err);
        }
        if a.inputs.len() != 1 {
            return Err(usage("the sign automaton takes one input"));
        }
        writeln!(out, "{}", dfa.run(&digit_word(&digits(&a.inputs[0])?))?)?;
        return Ok(());
    }
    let (dfa, tracks) = match a.relation {
        Relation::Add => (compile_addition_checker(&g)?, 3),
        Relation::Lt => (compile_lt_checker(&g)?, 2),
        Relation::Eq => (compile_eq_checker(&g)?, 2),
        Relation::Mulconst => {
            let num = digits(a.num.as_deref().ok_or_else(|| usage("--num is required"))?)?;
            let den = match a.den.as_deref() {
                Some(d) => digits(d)?,
                None => LaurentDigits::monomial(0, 1),
            };
            (compile_mulconst_checker(&g, &num, &den)?, 2)
        }
        Relation::Sign | Relation::School => unreachable!(),
    };
    let mut dfa = dfa;
    dfa.set_cap(a.max_states);
    if a.inputs.is_empty() {
        let explicit = dfa.materialize()?;
        return report_dfa(explicit, a.minimize, a.dot.as_deref(), out, err);
    }
    run_linear(dfa, &a.inputs, tracks, out)
}

fn points(g: &Grid, texts: &[String]) -> Result<Vec<Point>, Failure> {
    texts
        .iter()
        .map(|t| Point::parse(g, t).map_err(Failure::from))
        .collect()
}

fn parse_area(s: &str) -> Result<(i64, i64), Failure> {
    let (l, k) = s
        .split_once(',')
        .ok_or_else(|| usage(format!("area '{s}' is not ℓ,k")))?;
    let p = |t: &str| {
        t.trim()
            .parse::<i64>()
            .map_err(|_| usage(format!("bad area '{s}'")))
    };
    Ok((p(l)?, p(k)?))
}

fn geo_cmd(action: GeoAction, out: &mut dyn Write, err: &mut dyn Write) -> CliResult {
    match action {
        GeoAction::Rotate {
            grid: name,
            angle,
            svg,
            point,
        } => {
            let g = grid(&name)?;
            let p = Point::parse(&g, &point)?;
            let q = rotate(&g, &p, angle)?;
            writeln!(out, "{q}")?;
            if let Some(path) = svg {
                let scene = SvgScene {
                    polygons: vec![vec![Point::origin(), p.clone(), q.clone()]],
                    points: vec![(p, "p".into()), (q, format!("rotated {angle}°"))],
                };
                write_file(&path, &render_svg(&g, &scene), err)?;
            }
            Ok(())
        }
        GeoAction::Contains {
            grid: name,
            point,
            svg,
            vertices,
        } => {
            let g = grid(&name)?;
            let q = Point::parse(&g, &point)?;
            let vs = points(&g, &vertices)?;
            let inside = if vs.len() == 3 {
                let t = Triangle::new(vs[0].clone(), vs[1].clone(), vs[2].clone());
                triangle_contains(&g, &t, &q)?
            } else {
                convex_polygon_contains(&g, &vs, &q)?
            };
            writeln!(out, "{inside}")?;
            if let Some(path) = svg {
                let scene = SvgScene {
                    polygons: vec![vs],
                    points: vec![(q, if inside { "inside" } else { "outside" }.into())],
                };
                write_file(&path, &render_svg(&g, &scene), err)?;
            }
            Ok(())
        }
        GeoAction::Equilateral {
            grid: name,
            side,
            svg,
            a,
            b,
        } => {
            let g = grid(&name)?;
            let (a, b) = (Point::parse(&g, &a)?, Point::parse(&g, &b)?);
            let side = match side {
                SideArg::Plus => Side::Plus,
                SideArg::Minus => Side::Minus,
            };
            let c = equilateral_third(&g, &a, &b, side)?;
            writeln!(out, "{c}")?;
            if let Some(path) = svg {
                let scene = SvgScene {
                    polygons: vec![vec![a, b, c]],
                    points: vec![],
                };
                write_file(&path, &render_svg(&g, &scene), err)?;
            }
            Ok(())
        }
        GeoAction::RectArea {
            p,
            area,
            width,
            height,
        } => {
            let w = parse_rational(&width).map_err(|e| usage(e.to_string()))?;
            let h = parse_rational(&height).map_err(|e| usage(e.to_string()))?;
            let area = parse_area(&area)?;
            writeln!(out, "{}", rect_same_area(p, &w, &h, area)?)?;
            Ok(())
        }
        GeoAction::Region {
            grid: name,
            point,
            dot,
            max_states,
            vertices,
        } => {
            let g = grid(&name)?;
            let vs = points(&g, &vertices)?;
            let t = Triangle::new(vs[0].clone(), vs[1].clone(), vs[2].clone());
            let mut dfa = compile_region_dfa(&g, &t)?;
            dfa.set_cap(max_states);
            if let Some(p) = point {
                let q = Point::parse(&g, &p)?;
                writeln!(out, "{}", verdict(dfa.run(&convolve(&[q.x, q.y]).letters)?))?;
            }
            if let Some(path) = dot {
                let explicit = dfa.materialize()?;
                report_dfa(explicit, true, Some(&path), out, err)?;
            }
            Ok(())
        }
    }
}

fn stream(opts: &OmegaOpts, text: &str) -> Result<OmegaStream, Failure> {
    let d = digits(text)?;
    let depth = opts
        .depth
        .unwrap_or_else(|| d.lo().unwrap_or(0).min(0) - 16);
    Ok(OmegaStream::new(d, depth)?)
}

fn omega_cmd(action: OmegaAction, out: &mut dyn Write) -> CliResult {
    match action {
        OmegaAction::Sign { opts, stream: s } => {
            let spec = OmegaSpec::new(opts.b)?;
            writeln!(out, "{}", omega_sign(&spec, &stream(&opts, &s)?)?)?;
        }
        OmegaAction::Cmp { opts, left, right } => {
            let spec = OmegaSpec::new(opts.b)?;
            let v = omega_compare(&spec, &stream(&opts, &left)?, &stream(&opts, &right)?)?;
            writeln!(out, "{v}")?;
        }
        OmegaAction::Reduce {
            opts,
            steps,
            stream: s,
        } => {
            let spec = OmegaSpec::new(opts.b)?;
            let (r, used) = omega_reduce(&spec, &stream(&opts, &s)?, steps);
            writeln!(out, "{}", r.digits())?;
            writeln!(out, "steps {used}")?;
        }
        OmegaAction::Pell { b } => {
            let spec = OmegaSpec::new(b)?;
            writeln!(out, "{} {}", spec.d, spec.e)?;
        }
    }
    Ok(())
}

/// `1e-12`, `0.001` or `1/1000`.
fn parse_precision(s: &str) -> Result<BigRational, Failure> {
    let bad = || usage(format!("bad precision '{s}'"));
    let v = match s.split_once(['e', 'E']) {
        Some((m, e)) => {
            let m = parse_rational(m).map_err(|_| bad())?;
            let e: i32 = e.parse().map_err(|_| bad())?;
            let ten = BigRational::from_integer(BigInt::from(10));
            m * ten.pow(e)
        }
        None => parse_rational(s).map_err(|_| bad())?,
    };
    if !v.is_positive() {
        return Err(bad());
    }
    Ok(v)
}

/// Decimal with `places` digits, rounded down (`up = false`) or up.
fn decimal(r: &BigRational, places: usize, up: bool) -> String {
    let scale = num_traits::pow(BigInt::from(10), places);
    let scaled = r * BigRational::from_integer(scale.clone());
    let n = if up { scaled.ceil() } else { scaled.floor() }.to_integer();
    let neg = n.is_negative();
    let (int, frac) = n.abs().div_rem(&scale);
    let mut s = String::new();
    if neg {
        s.push('-');
    }
    s.push_str(&int.to_string());
    if places > 0 {
        let f = frac.to_string();
        s.push('.');
        s.push_str(&"0".repeat(places - f.len()));
        s.push_str(&f);
    }
    s
}

fn oracle_cmd(action: OracleAction, out: &mut dyn Write) -> CliResult {
    let OracleAction::Value {
        grid: name,
        prec,
        value,
    } = action;
    let g = grid(&name)?;
    let p = digits(&value)?;
    let prec = parse_precision(&prec)?;
    let (lo, hi) = g.oracle().approx_value(&p, &prec);
    // enough places to show the requested width
    let mut places = 0usize;
    let mut unit = BigRational::from_integer(BigInt::from(1));
    let tenth = BigRational::new(BigInt::from(1), BigInt::from(10));
    while unit > prec && places < 200 {
        unit *= &tenth;
        places += 1;
    }
    places += 1;
    writeln!(
        out,
        "[{}, {}]",
        decimal(&lo, places, false),
        decimal(&hi, places, true)
    )?;
    writeln!(out, "{}", g.oracle().sign_at(&p))?;
    if lo.is_zero() && hi.is_zero() {
        writeln!(out, "exact 0")?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let mut argv = vec!["gridctl"];
        argv.extend_from_slice(args);
        let code = run(argv, &mut out, &mut err);
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn command_definition_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }

    #[test]
    fn documented_examples() {
        assert_eq!(
            call(&["sign", "--grid", "sqrt2half", "{0:5}"]),
            (0, "Positive\n".into(), String::new())
        );
        assert_eq!(
            call(&["cmp", "--grid", "sqrt2half", "{-1:2,-2:-1}", "{0:2,-1:-2}"]).1,
            "Less\n"
        );
        assert_eq!(
            call(&[
                "geo",
                "rotate",
                "--grid",
                "sqrt3half",
                "--angle",
                "30",
                "(1,0)"
            ])
            .1,
            "({0:1,-1:-1}, {-1:4,-2:-2})\n"
        );
    }

    #[test]
    fn exit_codes() {
        let (code, _, err) = call(&["sign", "--grid", "sqrt2half"]);
        assert_eq!(code, 2);
        assert_eq!(err.lines().count(), 1);
        assert!(err.contains("<VALUE>"));
        assert_eq!(call(&["frobnicate"]).0, 2);
        assert_eq!(call(&["sign", "--grid", "nope", "{0:1}"]).0, 2);
        assert_eq!(call(&["sign", "--grid", "d10", "{0:"]).0, 2);
        let (code, _, err) = call(&["geo", "rotate", "--grid", "d10", "--angle", "30", "(1,0)"]);
        assert_eq!(code, 1);
        assert!(err.starts_with("error: rotation by 30 degrees"));
        assert_eq!(call(&["--help"]).0, 0);
    }

    #[test]
    fn precision_and_decimals() {
        assert_eq!(
            parse_precision("1e-3").unwrap(),
            BigRational::new(1.into(), 1000.into())
        );
        assert!(parse_precision("0").is_err());
        let r = BigRational::new(BigInt::from(-7), BigInt::from(4));
        assert_eq!(decimal(&r, 3, false), "-1.750");
        assert_eq!(
            decimal(&BigRational::new(1.into(), 3.into()), 2, true),
            "0.34"
        );
    }
}
