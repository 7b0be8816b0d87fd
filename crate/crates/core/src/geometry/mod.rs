//! Plane geometry over `G × G`.
//!
//! Every predicate reduces to the sign of a side functional
//! `f(v, w) = (w - y)(x' - x) - (v - x)(y' - y)` for the line through
//! `(x, y)` and `(x', y')`. The multipliers `x' - x` and `y' - y` are fixed
//! grid elements, so `f` only needs constant multiplication, addition and
//! the sign test.

use std::cmp::Ordering;
use std::fmt;

use crate::automata::{AllOf, LazyDfa, LinearAutomaton, LinearForm, SignSet};
use crate::digits::LaurentDigits;
use crate::error::{Error, Result};
use crate::grids::{ConstKind, Grid};
use crate::mulconst::mul_by_grid_constant;
use crate::normalize::normalize;
use crate::sign::{compare, equal, Sign};

mod rect;
mod rect_dfa;
mod svg;

pub use rect::{
    deinterleave, interleave, lowest_nonzero, offset_matches, padic_digits, rect_same_area,
};
pub use rect_dfa::{compile_rect_area_dfa, rect_area_word, RectAreaAutomaton, RectState};
pub use svg::{render_svg, SvgScene};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Point {
    pub x: LaurentDigits,
    pub y: LaurentDigits,
}

impl Point {
    pub fn new(x: LaurentDigits, y: LaurentDigits) -> Point {
        Point { x, y }
    }

    pub fn from_ints(grid: &Grid, x: i64, y: i64) -> Point {
        Point {
            x: normalize(grid, &LaurentDigits::monomial(0, x)),
            y: normalize(grid, &LaurentDigits::monomial(0, y)),
        }
    }

    pub fn origin() -> Point {
        Point::new(LaurentDigits::zero(), LaurentDigits::zero())
    }

    /// Parses `(x,y)` where each coordinate is an integer or a digit string
    /// such as `{0:1,-1:-1}`. Coordinates are normalized.
    pub fn parse(grid: &Grid, text: &str) -> Result<Point> {
        let bad = || Error::InvalidArgument(format!("bad point '{text}'"));
        let inner = text
            .trim()
            .strip_prefix('(')
            .and_then(|t| t.strip_suffix(')'))
            .ok_or_else(bad)?;
        let mut depth = 0;
        let mut split = None;
        for (i, ch) in inner.char_indices() {
            match ch {
                '{' => depth += 1,
                '}' => depth -= 1,
                ',' if depth == 0 => {
                    if split.is_some() {
                        return Err(bad());
                    }
                    split = Some(i);
                }
                _ => {}
            }
        }
        let i = split.ok_or_else(bad)?;
        let coord = |s: &str| -> Result<LaurentDigits> {
            let s = s.trim();
            let p = match s.parse::<i64>() {
                Ok(n) => LaurentDigits::monomial(0, n),
                Err(_) => s.parse::<LaurentDigits>()?,
            };
            Ok(normalize(grid, &p))
        };
        Ok(Point::new(coord(&inner[..i])?, coord(&inner[i + 1..])?))
    }

    /// Coordinates as floating point, for display.
    pub fn approx(&self, grid: &Grid) -> (f64, f64) {
        (
            grid.oracle().approx_f64(&self.x),
            grid.oracle().approx_f64(&self.y),
        )
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Triangle {
    pub a: Point,
    pub b: Point,
    pub c: Point,
}

impl Triangle {
    pub fn new(a: Point, b: Point, c: Point) -> Triangle {
        Triangle { a, b, c }
    }

    pub fn vertices(&self) -> [&Point; 3] {
        [&self.a, &self.b, &self.c]
    }

    /// Sides as `(from, to, opposite vertex)`.
    fn sides(&self) -> [(&Point, &Point, &Point); 3] {
        [
            (&self.a, &self.b, &self.c),
            (&self.b, &self.c, &self.a),
            (&self.c, &self.a, &self.b),
        ]
    }

    /// For each side, the sign that makes the functional non-negative on
    /// the interior.
    pub fn orientation(&self, grid: &Grid) -> Result<[Sign; 3]> {
        let mut out = [Sign::Zero; 3];
        for (o, (p, q, r)) in out.iter_mut().zip(self.sides()) {
            *o = side_sign(grid, p, q, r)?;
            if *o == Sign::Zero {
                return Err(Error::DegenerateTriangle);
            }
        }
        Ok(out)
    }
}

/// Axis-parallel rectangle given by its lower-left and upper-right corners.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxisRect {
    pub ll: Point,
    pub ur: Point,
}

impl AxisRect {
    pub fn new(grid: &Grid, ll: Point, ur: Point) -> Result<AxisRect> {
        if compare(grid, &ll.x, &ur.x)? != Ordering::Less
            || compare(grid, &ll.y, &ur.y)? != Ordering::Less
        {
            return Err(Error::InvalidArgument(
                "corners are not lower-left and upper-right".into(),
            ));
        }
        Ok(AxisRect { ll, ur })
    }

    pub fn contains(&self, grid: &Grid, q: &Point) -> Result<bool> {
        Ok(compare(grid, &self.ll.x, &q.x)? != Ordering::Greater
            && compare(grid, &q.x, &self.ur.x)? != Ordering::Greater
            && compare(grid, &self.ll.y, &q.y)? != Ordering::Greater
            && compare(grid, &q.y, &self.ur.y)? != Ordering::Greater)
    }
}

fn sum(grid: &Grid, a: &LaurentDigits, b: &LaurentDigits) -> LaurentDigits {
    normalize(grid, &(a + b))
}

fn diff(grid: &Grid, a: &LaurentDigits, b: &LaurentDigits) -> LaurentDigits {
    normalize(grid, &(a - b))
}

pub fn translate(grid: &Grid, p: &Point, v: &Point) -> Point {
    Point::new(sum(grid, &p.x, &v.x), sum(grid, &p.y, &v.y))
}

fn rotation_constants(grid: &Grid, angle: i64) -> Result<(LaurentDigits, LaurentDigits)> {
    let radicand = grid.spec().radicand;
    let square_root_of = |v: i64| radicand.is_some_and(|r| r.root == 2 && r.value == v);
    let unsupported = |missing: &str| Error::UnsupportedRotation {
        angle,
        missing: missing.to_string(),
    };
    match angle {
        30 | 60 => {
            if !square_root_of(3) {
                return Err(unsupported("√3/2"));
            }
            let half = grid
                .const_digits(ConstKind::Half)
                .map_err(|_| unsupported("1/2"))?;
            let r3 = grid
                .const_digits(ConstKind::HalfC)
                .map_err(|_| unsupported("√3/2"))?;
            Ok(if angle == 30 { (r3, half) } else { (half, r3) })
        }
        45 => {
            if !square_root_of(2) {
                return Err(unsupported("√2/2"));
            }
            let r2 = grid
                .const_digits(ConstKind::HalfC)
                .map_err(|_| unsupported("√2/2"))?;
            Ok((r2.clone(), r2))
        }
        _ => Err(unsupported(
            "an angle that is a multiple of 30 or 45 degrees",
        )),
    }
}

/// Counter-clockwise rotation about the origin by a multiple of 30 or 45
/// degrees.
pub fn rotate(grid: &Grid, p: &Point, angle: i64) -> Result<Point> {
    let a = angle.rem_euclid(360);
    let quarter = a / 90;
    let rest = a % 90;
    let mut q = if rest == 0 {
        p.clone()
    } else {
        let (cos, sin) = rotation_constants(grid, rest).map_err(|e| match e {
            Error::UnsupportedRotation { missing, .. } => {
                Error::UnsupportedRotation { angle, missing }
            }
            e => e,
        })?;
        let x = diff(
            grid,
            &mul_by_grid_constant(grid, &cos, &p.x),
            &mul_by_grid_constant(grid, &sin, &p.y),
        );
        let y = sum(
            grid,
            &mul_by_grid_constant(grid, &sin, &p.x),
            &mul_by_grid_constant(grid, &cos, &p.y),
        );
        Point::new(x, y)
    };
    for _ in 0..quarter {
        q = Point::new(-&q.y, q.x);
    }
    Ok(q)
}

/// Sign of the side functional of the line `a → b` at `q`: positive when
/// `q` lies to the left.
pub fn side_sign(grid: &Grid, a: &Point, b: &Point, q: &Point) -> Result<Sign> {
    let alpha = diff(grid, &b.x, &a.x);
    let beta = diff(grid, &b.y, &a.y);
    let dx = diff(grid, &q.x, &a.x);
    let dy = diff(grid, &q.y, &a.y);
    let left = mul_by_grid_constant(grid, &alpha, &dy);
    let right = mul_by_grid_constant(grid, &beta, &dx);
    Ok(Sign::from_i64(match compare(grid, &left, &right)? {
        Ordering::Less => -1,
        Ordering::Equal => 0,
        Ordering::Greater => 1,
    }))
}

/// Closed triangle membership.
pub fn triangle_contains(grid: &Grid, t: &Triangle, q: &Point) -> Result<bool> {
    let orient = t.orientation(grid)?;
    for (o, (a, b, _)) in orient.iter().zip(t.sides()) {
        if side_sign(grid, a, b, q)? * *o == Sign::Negative {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Checks that the polygon is strictly convex and returns the common
/// orientation of its edges.
pub fn convex_orientation(grid: &Grid, vertices: &[Point]) -> Result<Sign> {
    let n = vertices.len();
    if n < 3 {
        return Err(Error::NotConvex);
    }
    let mut orient = Sign::Zero;
    for i in 0..n {
        let (a, b) = (&vertices[i], &vertices[(i + 1) % n]);
        for (j, v) in vertices.iter().enumerate() {
            if j == i || j == (i + 1) % n {
                continue;
            }
            let s = side_sign(grid, a, b, v)?;
            if s == Sign::Zero || (orient != Sign::Zero && s != orient) {
                return Err(Error::NotConvex);
            }
            orient = s;
        }
    }
    Ok(orient)
}

/// Closed membership in a strictly convex polygon listed in order around
/// its boundary (either direction).
pub fn convex_polygon_contains(grid: &Grid, vertices: &[Point], q: &Point) -> Result<bool> {
    let orient = convex_orientation(grid, vertices)?;
    let n = vertices.len();
    for i in 0..n {
        if side_sign(grid, &vertices[i], &vertices[(i + 1) % n], q)? * orient == Sign::Negative {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Plus,
    Minus,
}

/// Third vertex of the equilateral triangle on the segment `ab`.
pub fn equilateral_third(grid: &Grid, a: &Point, b: &Point, side: Side) -> Result<Point> {
    let missing = |c: &str| Error::UnsupportedConstant {
        grid: grid.name().to_string(),
        constant: c.to_string(),
    };
    if !grid
        .spec()
        .radicand
        .is_some_and(|r| r.root == 2 && r.value == 3)
    {
        return Err(missing("√3"));
    }
    let half = grid
        .const_digits(ConstKind::Half)
        .map_err(|_| missing("1/2"))?;
    let r3 = grid.const_digits(ConstKind::HalfC)?;
    if equal(grid, &a.x, &b.x)? && equal(grid, &a.y, &b.y)? {
        return Err(Error::CoincidentPoints);
    }
    let mx = mul_by_grid_constant(grid, &half, &sum(grid, &a.x, &b.x));
    let my = mul_by_grid_constant(grid, &half, &sum(grid, &a.y, &b.y));
    let ox = mul_by_grid_constant(grid, &r3, &diff(grid, &a.y, &b.y));
    let oy = mul_by_grid_constant(grid, &r3, &diff(grid, &b.x, &a.x));
    Ok(match side {
        Side::Plus => Point::new(sum(grid, &mx, &ox), sum(grid, &my, &oy)),
        Side::Minus => Point::new(diff(grid, &mx, &ox), diff(grid, &my, &oy)),
    })
}

/// Squared distance as a digit vector (not normalized), for checks.
pub fn squared_distance(grid: &Grid, a: &Point, b: &Point) -> LaurentDigits {
    let dx = diff(grid, &a.x, &b.x);
    let dy = diff(grid, &a.y, &b.y);
    &dx.convolve_poly(&dx) + &dy.convolve_poly(&dy)
}

/// Two-track automaton accepting `conv(x, y)` iff `(x, y)` lies in the
/// closed triangle. Each side contributes the linear form
/// `o · (α·y - β·x + β·a.x - α·a.y)` with `α = b.x - a.x`, `β = b.y - a.y`
/// and `o` the orientation sign; the three are run in lockstep.
pub fn compile_region_dfa(grid: &Grid, t: &Triangle) -> Result<LazyDfa<AllOf<LinearAutomaton>>> {
    let orient = t.orientation(grid)?;
    let mut parts = Vec::new();
    for (o, (a, b, _)) in orient.iter().zip(t.sides()) {
        let s = num_bigint::BigInt::from(o.as_i64());
        let alpha = diff(grid, &b.x, &a.x);
        let beta = diff(grid, &b.y, &a.y);
        let k = normalize(
            grid,
            &(&beta.convolve_poly(&a.x) - &alpha.convolve_poly(&a.y)),
        );
        let form = LinearForm::new(vec![beta.scale(&-s.clone()), alpha.scale(&s)])
            .with_constant(k.scale(&s));
        parts.push(LinearAutomaton::new(grid, form, SignSet::NON_NEGATIVE)?);
    }
    Ok(LazyDfa::new(AllOf::new(parts)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automata::convolve;
    use crate::grids::{make_grid, GridKind};

    fn d(s: &str) -> LaurentDigits {
        s.parse().unwrap()
    }

    #[test]
    fn rotation_examples() {
        let g = make_grid(GridKind::SqrtB2m1Half(2)).unwrap();
        let e1 = Point::from_ints(&g, 1, 0);
        assert_eq!(rotate(&g, &e1, 90).unwrap(), Point::from_ints(&g, 0, 1));
        let r = rotate(&g, &e1, 30).unwrap();
        assert_eq!(r, Point::new(d("{0:1,-1:-1}"), d("{-1:4,-2:-2}")));
        assert_eq!(r.to_string(), "({0:1,-1:-1}, {-1:4,-2:-2})");
        let mut p = Point::new(d("{1:3,0:-2}"), d("{-1:5}"));
        let start = p.clone();
        for _ in 0..12 {
            p = rotate(&g, &p, 30).unwrap();
        }
        assert!(equal(&g, &p.x, &start.x).unwrap() && equal(&g, &p.y, &start.y).unwrap());
    }

    #[test]
    fn unsupported_rotations() {
        let g = make_grid(GridKind::Db(10)).unwrap();
        let p = Point::from_ints(&g, 1, 0);
        assert!(matches!(
            rotate(&g, &p, 30),
            Err(Error::UnsupportedRotation { angle: 30, .. })
        ));
        assert!(rotate(&g, &p, 270).is_ok());
        let g = make_grid(GridKind::Sqrt2Half).unwrap();
        assert!(rotate(&g, &p, 45).is_ok());
        assert!(matches!(
            rotate(&g, &p, 60),
            Err(Error::UnsupportedRotation { .. })
        ));
        assert!(rotate(&g, &p, 20).is_err());
    }

    #[test]
    fn side_sign_examples() {
        let g = make_grid(GridKind::Sqrt2Half).unwrap();
        let o = Point::origin();
        let e1 = Point::from_ints(&g, 1, 0);
        let e2 = Point::from_ints(&g, 0, 1);
        assert_eq!(side_sign(&g, &o, &e1, &e2).unwrap(), Sign::Positive);
        assert_eq!(side_sign(&g, &e1, &o, &e2).unwrap(), Sign::Negative);
        let mid = Point::new(g.const_digits(ConstKind::Half).unwrap(), d("{}"));
        assert_eq!(side_sign(&g, &o, &e1, &mid).unwrap(), Sign::Zero);
    }

    #[test]
    fn triangle_examples() {
        let g = make_grid(GridKind::Sqrt2Half).unwrap();
        let t = Triangle::new(
            Point::origin(),
            Point::from_ints(&g, 1, 0),
            Point::from_ints(&g, 0, 1),
        );
        for v in t.vertices() {
            assert!(triangle_contains(&g, &t, v).unwrap());
        }
        let half = g.const_digits(ConstKind::Half).unwrap();
        let quarter = mul_by_grid_constant(&g, &half, &half);
        assert!(triangle_contains(&g, &t, &Point::new(quarter.clone(), quarter)).unwrap());
        assert!(!triangle_contains(&g, &t, &Point::from_ints(&g, 1, 1)).unwrap());
        let flat = Triangle::new(
            Point::origin(),
            Point::from_ints(&g, 1, 1),
            Point::from_ints(&g, 2, 2),
        );
        assert!(matches!(
            triangle_contains(&g, &flat, &Point::origin()),
            Err(Error::DegenerateTriangle)
        ));
    }

    #[test]
    fn polygon_examples() {
        let g = make_grid(GridKind::Sqrt2Half).unwrap();
        let sq: Vec<Point> = [(0, 0), (1, 0), (1, 1), (0, 1)]
            .iter()
            .map(|&(x, y)| Point::from_ints(&g, x, y))
            .collect();
        let half = g.const_digits(ConstKind::Half).unwrap();
        assert!(convex_polygon_contains(&g, &sq, &Point::new(half.clone(), half)).unwrap());
        assert!(!convex_polygon_contains(&g, &sq, &Point::from_ints(&g, 2, 0)).unwrap());
        for v in &sq {
            assert!(convex_polygon_contains(&g, &sq, v).unwrap());
        }
        let bow: Vec<Point> = [(0, 0), (1, 1), (1, 0), (0, 1)]
            .iter()
            .map(|&(x, y)| Point::from_ints(&g, x, y))
            .collect();
        assert!(matches!(
            convex_polygon_contains(&g, &bow, &sq[0]),
            Err(Error::NotConvex)
        ));
    }

    #[test]
    fn equilateral_examples() {
        let g = make_grid(GridKind::SqrtB2m1Half(2)).unwrap();
        let a = Point::origin();
        let b = Point::from_ints(&g, 1, 0);
        let c = equilateral_third(&g, &a, &b, Side::Plus).unwrap();
        assert_eq!(c, Point::new(d("{-1:4,-2:-2}"), d("{0:1,-1:-1}")));
        let c2 = equilateral_third(&g, &a, &b, Side::Minus).unwrap();
        let mid = |p: &Point, q: &Point| Point::new(sum(&g, &p.x, &q.x), sum(&g, &p.y, &q.y));
        let m1 = mid(&c, &c2);
        let m2 = mid(&a, &b);
        assert!(equal(&g, &m1.x, &m2.x).unwrap() && equal(&g, &m1.y, &m2.y).unwrap());
        assert!(matches!(
            equilateral_third(&g, &a, &a, Side::Plus),
            Err(Error::CoincidentPoints)
        ));
        let g = make_grid(GridKind::Sqrt2Half).unwrap();
        assert!(matches!(
            equilateral_third(&g, &a, &b, Side::Plus),
            Err(Error::UnsupportedConstant { .. })
        ));
    }

    #[test]
    fn region_dfa_examples() {
        let g = make_grid(GridKind::Sqrt2Half).unwrap();
        let t = Triangle::new(
            Point::origin(),
            Point::from_ints(&g, 2, 0),
            Point::from_ints(&g, 0, 2),
        );
        let mut dfa = compile_region_dfa(&g, &t).unwrap();
        for v in t.vertices() {
            assert!(dfa
                .run(&convolve(&[v.x.clone(), v.y.clone()]).letters)
                .unwrap());
        }
        let far = Point::from_ints(&g, 30, -7);
        assert!(!dfa.run(&convolve(&[far.x, far.y]).letters).unwrap());
        let inside = Point::new(d("{-1:2,-2:-1}"), d("{0:1}"));
        assert!(dfa.run(&convolve(&[inside.x, inside.y]).letters).unwrap());
    }

    #[test]
    fn parse_points() {
        let g = make_grid(GridKind::SqrtB2m1Half(2)).unwrap();
        assert_eq!(
            Point::parse(&g, "(1,0)").unwrap(),
            Point::from_ints(&g, 1, 0)
        );
        let p = Point::parse(&g, "({0:1,-1:-1}, {-1:4,-2:-2})").unwrap();
        assert_eq!(p.x, d("{0:1,-1:-1}"));
        assert!(Point::parse(&g, "(1,2,3)").is_err());
        assert!(Point::parse(&g, "1,2").is_err());
    }
}
