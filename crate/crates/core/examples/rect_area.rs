//! Same-area test for rectangles with dyadic sides, directly and by automaton.

use num_rational::BigRational;
use semigrid::geometry::{compile_rect_area_dfa, rect_area_word, rect_same_area};
use semigrid::grids::parse_rational;

fn main() -> semigrid::Result<()> {
    let sides: [(&str, &str); 4] = [("3", "2"), ("3/2", "4"), ("2", "2"), ("3/8", "16")];
    let mut dfa = compile_rect_area_dfa(3, 1)?;
    for (w, h) in sides {
        let (w, h): (BigRational, BigRational) = (parse_rational(w)?, parse_rational(h)?);
        let direct = rect_same_area(2, &w, &h, (3, 1))?;
        let by_dfa = dfa.run(&rect_area_word(&w, &h)?)?;
        println!("{w} x {h} has area 3*2: {direct} (automaton: {by_dfa})");
    }
    println!("states visited: {}", dfa.state_count());
    Ok(())
}
