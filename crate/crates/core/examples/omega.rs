//! Signs of digit streams in base d + e√b.

use num_rational::BigRational;
use semigrid::omega::{
    omega_compare, omega_expand, omega_sign, omega_trace, OmegaSpec, OmegaStream,
};
use semigrid::LaurentDigits;

fn main() -> semigrid::Result<()> {
    let spec = OmegaSpec::new(2)?;
    println!(
        "b = 2: u = {} + {}√2 ~ {:.4}",
        spec.d,
        spec.e,
        spec.u_approx()
    );

    let s = OmegaStream::new("{0:1,-1:-30,-2:5}".parse::<LaurentDigits>()?, -20)?;
    let t = omega_trace(&spec, &s)?;
    println!("{s}: {:?} after {} steps", t.verdict, t.memory.len());
    println!("sign: {}", omega_sign(&spec, &s)?);

    let half = BigRational::new(1.into(), 2.into());
    let x = omega_expand(&spec, &half, 0, -12)?;
    println!("1/2 ~ {x}");
    let one_third = omega_expand(&spec, &BigRational::new(1.into(), 3.into()), 0, -12)?;
    println!("1/2 vs 1/3: {}", omega_compare(&spec, &x, &one_third)?);
    Ok(())
}
