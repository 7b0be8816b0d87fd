//! Normal forms, signs and comparisons on the sqrt2half grid.

use semigrid::grids::grid_by_name;
use semigrid::normalize::normalize;
use semigrid::sign::{compare, sign_trace};
use semigrid::LaurentDigits;

fn main() -> semigrid::Result<()> {
    let g = grid_by_name("sqrt2half")?;
    let x: LaurentDigits = "{0:9,-1:-7,-3:5}".parse()?;
    let y: LaurentDigits = "{0:2,-1:-2}".parse()?;

    let nx = normalize(&g, &x);
    println!("{x} normalizes to {nx}");
    println!("value ~ {:.9}", g.oracle().approx_f64(&x));

    let t = sign_trace(&g, &nx)?;
    println!("sign of {nx}: {}", t.result);
    println!("{x} vs {y}: {:?}", compare(&g, &x, &y)?);

    let sum = normalize(&g, &(&x + &y));
    println!("{x} + {y} = {sum}");
    Ok(())
}
