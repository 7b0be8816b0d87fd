//! Exact evaluation and shipped grid validation.

use num_rational::BigRational;
use semigrid::grids::{shipped_grids, validate_grid};
use semigrid::LaurentDigits;

fn main() {
    let x: LaurentDigits = "{1:1,0:-3,-1:2}".parse().unwrap();
    let prec = BigRational::new(1.into(), 1_000_000.into());
    for g in shipped_grids() {
        let (lo, hi) = g.oracle().approx_value(&x, &prec);
        println!(
            "{}: {x} in [{:.8}, {:.8}], sign {}",
            g.name(),
            rat(&lo),
            rat(&hi),
            g.oracle().sign_at(&x)
        );
    }
    for g in shipped_grids() {
        let report = validate_grid(g.spec(), 200, 7);
        println!("{} validation passed: {}", g.name(), report.passed());
    }
}

fn rat(r: &BigRational) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap_or(f64::NAN)
}
