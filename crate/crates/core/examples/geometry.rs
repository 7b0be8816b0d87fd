//! Rotations, membership and an equilateral triangle, written out as SVG.

use semigrid::geometry::{
    equilateral_third, render_svg, rotate, triangle_contains, Point, Side, SvgScene, Triangle,
};
use semigrid::grids::grid_by_name;

fn main() -> semigrid::Result<()> {
    let g = grid_by_name("sqrt3half")?;
    let a = Point::origin();
    let b = Point::from_ints(&g, 2, 0);
    let c = equilateral_third(&g, &a, &b, Side::Plus)?;
    println!("third vertex over {a} {b}: {c}");

    let p = Point::from_ints(&g, 1, 0);
    for angle in [30, 60, 90, 150] {
        println!("rotate (1,0) by {angle}: {}", rotate(&g, &p, angle)?);
    }

    let t = Triangle::new(a.clone(), b.clone(), c.clone());
    let q = Point::parse(&g, "({0:1}, {-1:1})")?;
    let inside = triangle_contains(&g, &t, &q)?;
    println!("{q} inside: {inside}");

    let scene = SvgScene {
        polygons: vec![vec![a, b, c]],
        points: vec![(q, if inside { "q in" } else { "q out" }.into())],
    };
    let path = std::env::temp_dir().join("equilateral.svg");
    std::fs::write(&path, render_svg(&g, &scene)).expect("write svg");
    println!("wrote {}", path.display());
    Ok(())
}
