//! Relation checkers as automata: running, minimizing and exporting.

use semigrid::automata::checkers::{compile_addition_checker, compile_lt_checker};
use semigrid::automata::{
    compile_school_adder, convolve, export_dot, format_trace, minimize, parse_tableau, school_trace,
};
use semigrid::grids::grid_by_name;
use semigrid::LaurentDigits;

fn main() -> semigrid::Result<()> {
    let g = grid_by_name("d10")?;
    let d = |s: &str| s.parse::<LaurentDigits>().unwrap();

    let mut add = compile_addition_checker(&g)?;
    for (x, y, z) in [
        ("{0:4}", "{0:7}", "{1:1,0:1}"),
        ("{0:4}", "{0:7}", "{0:11}"),
    ] {
        let word = convolve(&[d(x), d(y), d(z)]);
        println!("{x} + {y} = {z}: {}", add.run(&word.letters)?);
    }

    let mut lt = compile_lt_checker(&g)?;
    let explicit = lt.materialize()?;
    let small = minimize(&explicit);
    println!(
        "less-than on d10: {} states, {} after minimization",
        explicit.state_count(),
        small.state_count()
    );

    // decimal addition read right to left, as done by hand
    let adder = compile_school_adder(10)?;
    let t = parse_tableau(&["# 2 3 5 8. 2 2 5", "# 6 7 0 1. 7 5 0", "# 9 0 5 9. 9 7 5"])?;
    let (states, ok) = school_trace(&adder, &t)?;
    println!("{}  -> {}", format_trace(&states, t.fraction), ok);
    let dot = export_dot(&minimize(&adder));
    println!("school adder as DOT: {} lines", dot.lines().count());
    Ok(())
}
