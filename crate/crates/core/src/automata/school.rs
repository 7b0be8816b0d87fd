//! The school addition check for non-negative base-`b` numerals.
//!
//! The automaton reads `x + y = z` column by column from the least
//! significant end with three states: correct with a carry (`c`), correct
//! without a carry (`n`) and incorrect (`i`). Padding counts as 0.

use super::{digit_cells, full_alphabet, Cell, Dfa, Letter, ReadOrder};
use crate::error::{Error, Result};

const N: usize = 0;
const C: usize = 1;
const I: usize = 2;

pub fn compile_school_adder(b: i64) -> Result<Dfa<bool>> {
    if b < 2 {
        return Err(Error::InvalidArgument(format!("base {b} < 2")));
    }
    let alphabet = full_alphabet(3, &digit_cells(0, b - 1), false);
    let row = |carry: i64| -> Vec<usize> {
        alphabet
            .iter()
            .map(|l| {
                let s = l.cells[0].value() + l.cells[1].value() + carry;
                if s % b != l.cells[2].value() {
                    I
                } else if s >= b {
                    C
                } else {
                    N
                }
            })
            .collect()
    };
    let trans = vec![row(0), row(1), vec![I; alphabet.len()]];
    Dfa::new(
        3,
        ReadOrder::LsbFirst,
        false,
        alphabet,
        N,
        trans,
        vec![true, false, false],
        vec!["n".into(), "c".into(), "i".into()],
    )
}

/// Three stacked numeral rows, e.g. `"# 2 3 5 8. 2 2 5"`; a trailing `.`
/// marks the units column.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tableau {
    /// Columns, most significant first.
    pub columns: Vec<Letter>,
    /// Number of columns after the units column.
    pub fraction: usize,
}

pub fn parse_tableau(rows: &[&str]) -> Result<Tableau> {
    let mut grid: Vec<Vec<Cell>> = Vec::new();
    let mut units: Option<usize> = None;
    for row in rows {
        let mut cells = Vec::new();
        for (i, tok) in row.split_whitespace().enumerate() {
            let (tok, dot) = match tok.strip_suffix('.') {
                Some(t) => (t, true),
                None => (tok, false),
            };
            if dot {
                if units.is_some_and(|u| u != i) {
                    return Err(Error::InvalidArgument(
                        "rows disagree on the units column".into(),
                    ));
                }
                units = Some(i);
            }
            cells.push(match tok {
                "#" => Cell::Pad,
                t => Cell::Digit(
                    t.parse()
                        .map_err(|_| Error::InvalidArgument(format!("bad tableau cell '{t}'")))?,
                ),
            });
        }
        grid.push(cells);
    }
    let width = grid.first().map_or(0, |r| r.len());
    if grid.iter().any(|r| r.len() != width) {
        return Err(Error::InvalidArgument(
            "tableau rows differ in length".into(),
        ));
    }
    let units = units.unwrap_or(width.saturating_sub(1));
    let columns = (0..width)
        .map(|c| Letter::new(grid.iter().map(|r| r[c]).collect(), c == units))
        .collect();
    Ok(Tableau {
        columns,
        fraction: width - units - 1,
    })
}

/// State names visited on the tableau, starting with the initial state, and
/// the verdict.
pub fn school_trace(adder: &Dfa<bool>, t: &Tableau) -> Result<(Vec<String>, bool)> {
    let word: Vec<Letter> = t.columns.iter().rev().cloned().collect();
    let states = adder.trace(&word)?;
    let names = states.iter().map(|&s| adder.label(s).to_string()).collect();
    let last = *states.last().unwrap();
    Ok((names, *adder.class_of(last)))
}

/// Writes a trace the way it sits under the columns: final state first,
/// with a wider gap at the radix point.
pub fn format_trace(states: &[String], fraction: usize) -> String {
    let rev: Vec<&str> = states.iter().rev().map(|s| s.as_str()).collect();
    let split = rev.len().saturating_sub(fraction + 1);
    let (int, frac) = rev.split_at(split);
    if int.is_empty() {
        frac.join(" ")
    } else {
        format!("{}  {}", int.join(" "), frac.join(" "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automata::{export_dot, minimize};

    fn trace(rows: [&str; 3]) -> (String, bool) {
        let adder = compile_school_adder(10).unwrap();
        let t = parse_tableau(&rows).unwrap();
        let (states, ok) = school_trace(&adder, &t).unwrap();
        (format_trace(&states, t.fraction), ok)
    }

    #[test]
    fn tableaux() {
        assert_eq!(
            trace(["# 2 3 5 8. 2 2 5", "# 9 1 1 2. # # #", "1 1 4 7 0. 2 2 5"]),
            ("n c n n c  n n n n".to_string(), true)
        );
        assert_eq!(
            trace(["3 3 3 3. 3 3 #", "# # 2 2. 2 2 2", "# 1 5 5. 5 5 2"]),
            ("i i n n  n n n n".to_string(), false)
        );
        assert_eq!(
            trace(["9 9 1 2 3. 4 5 6", "# # 9 8 7. 6 5 4", "0 0 1 1 1. 1 1 #"]),
            ("c c c c c  c c c n".to_string(), false)
        );
    }

    #[test]
    fn minimal_and_labelled() {
        let adder = compile_school_adder(10).unwrap();
        let m = minimize(&adder);
        assert_eq!(m.state_count(), 3);
        let dot = export_dot(&m);
        for name in ["\"n | true\"", "\"c | false\"", "\"i | false\""] {
            assert!(dot.contains(name), "{name}");
        }
    }

    #[test]
    fn rejects_bad_rows() {
        assert!(parse_tableau(&["1 2", "1"]).is_err());
        assert!(parse_tableau(&["1. 2", "1 2."]).is_err());
        assert!(compile_school_adder(1).is_err());
    }
}
