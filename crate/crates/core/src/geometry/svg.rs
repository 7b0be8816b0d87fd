//! Minimal SVG output for scenes of points and polygons.

use std::fmt::Write;

use super::Point;
use crate::grids::Grid;

#[derive(Clone, Debug, Default)]
pub struct SvgScene {
    pub polygons: Vec<Vec<Point>>,
    pub points: Vec<(Point, String)>,
}

/// Renders the scene with coordinates evaluated in floating point and the
/// y axis pointing up.
pub fn render_svg(grid: &Grid, scene: &SvgScene) -> String {
    let polys: Vec<Vec<(f64, f64)>> = scene
        .polygons
        .iter()
        .map(|poly| poly.iter().map(|p| p.approx(grid)).collect())
        .collect();
    let pts: Vec<((f64, f64), &str)> = scene
        .points
        .iter()
        .map(|(p, l)| (p.approx(grid), l.as_str()))
        .collect();
    let all = polys
        .iter()
        .flatten()
        .copied()
        .chain(pts.iter().map(|(p, _)| *p));
    let (mut x0, mut y0, mut x1, mut y1) = (f64::MAX, f64::MAX, f64::MIN, f64::MIN);
    for (x, y) in all {
        x0 = x0.min(x);
        y0 = y0.min(y);
        x1 = x1.max(x);
        y1 = y1.max(y);
    }
    if x0 > x1 {
        (x0, y0, x1, y1) = (0.0, 0.0, 1.0, 1.0);
    }
    let span = (x1 - x0).max(y1 - y0).max(1e-9);
    let size = 400.0;
    let margin = 20.0;
    let scale = (size - 2.0 * margin) / span;
    let map = |(x, y): (f64, f64)| (margin + (x - x0) * scale, size - margin - (y - y0) * scale);

    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" viewBox="0 0 {size} {size}">"#
    );
    for poly in &polys {
        let coords: Vec<String> = poly
            .iter()
            .map(|&p| {
                let (x, y) = map(p);
                format!("{x:.2},{y:.2}")
            })
            .collect();
        let _ = writeln!(
            out,
            r#"  <polygon points="{}" fill="lightblue" stroke="navy" stroke-width="1.5"/>"#,
            coords.join(" ")
        );
    }
    for (p, label) in &pts {
        let (x, y) = map(*p);
        let _ = writeln!(
            out,
            r#"  <circle cx="{x:.2}" cy="{y:.2}" r="3" fill="crimson"/>"#
        );
        if !label.is_empty() {
            let _ = writeln!(
                out,
                r#"  <text x="{:.2}" y="{:.2}" font-size="12">{}</text>"#,
                x + 5.0,
                y - 5.0,
                escape(label)
            );
        }
    }
    out.push_str("</svg>\n");
    out
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}
