//! Multiplication by grid constants and the language of multiples.

use semigrid::automata::checkers::{compile_mulconst_checker, multiples_language};
use semigrid::automata::{convolve, minimize};
use semigrid::grids::grid_by_name;
use semigrid::mulconst::mul_by_grid_constant;
use semigrid::{ConstKind, LaurentDigits};

fn main() -> semigrid::Result<()> {
    let g = grid_by_name("sqrt2half")?;
    let c = g.const_digits(ConstKind::HalfC)?;
    let x: LaurentDigits = "{0:1,-2:3}".parse()?;
    let y = mul_by_grid_constant(&g, &c, &x);
    println!("c/2 = {c}");
    println!("(c/2) * {x} = {y}");

    let one = LaurentDigits::monomial(0, 1);
    let mut check = compile_mulconst_checker(&g, &c, &one)?;
    println!(
        "checker accepts: {}",
        check.run(&convolve(&[x, y]).letters)?
    );

    let three = LaurentDigits::monomial(0, 3);
    let lang = multiples_language(&grid_by_name("d2")?, &three, &one, 0, 1, 100_000)?;
    println!(
        "binary multiples of 3: {} states",
        minimize(&lang).state_count()
    );
    Ok(())
}
