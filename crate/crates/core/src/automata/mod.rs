//! Synchronous multi-track automata over convolution words.
//!
//! A convolution word lines up several digit vectors by exponent, most
//! significant position first. Each letter carries one cell per track
//! (a digit, or `#` outside that track's support) and a flag marking the
//! letter at exponent 0. The domain of a word is the smallest exponent
//! interval containing 0 and every track's support.

use std::fmt;
use std::hash::Hash;

use crate::digits::LaurentDigits;
use crate::error::{Error, Result};

mod dfa;
mod linear;
mod nfa;
mod school;

pub mod checkers;

pub use dfa::{equivalent, export_dot, minimize, product, Dfa, LazyDfa, DEFAULT_STATE_CAP};
pub use linear::{AllOf, LinState, LinearAutomaton, LinearForm, SignSet, Verdict};
pub use nfa::{determinize, project_track, Nfa};
pub use school::{compile_school_adder, format_trace, parse_tableau, school_trace, Tableau};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Cell {
    Digit(i64),
    Pad,
}

impl Cell {
    /// Padding reads as zero.
    pub fn value(self) -> i64 {
        match self {
            Cell::Digit(z) => z,
            Cell::Pad => 0,
        }
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Cell::Digit(z) => write!(f, "{z}"),
            Cell::Pad => write!(f, "#"),
        }
    }
}

/// One symbol of a convolution word.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub cells: Vec<Cell>,
    /// Set on the letter at exponent 0.
    pub units: bool,
}

impl Letter {
    pub fn new(cells: Vec<Cell>, units: bool) -> Letter {
        Letter { cells, units }
    }

    pub fn digits(ds: &[i64]) -> Letter {
        Letter {
            cells: ds.iter().map(|&z| Cell::Digit(z)).collect(),
            units: false,
        }
    }

    pub fn without_units(&self) -> Letter {
        Letter {
            cells: self.cells.clone(),
            units: false,
        }
    }

    pub fn is_all_pad(&self) -> bool {
        self.cells.iter().all(|c| *c == Cell::Pad)
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<String> = self.cells.iter().map(|c| c.to_string()).collect();
        write!(f, "({})", cells.join(","))?;
        if self.units {
            write!(f, ".")?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ReadOrder {
    MsbFirst,
    LsbFirst,
}

/// Letters of a convolution, most significant first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConvWord {
    /// Exponent of the first letter.
    pub top: i64,
    pub letters: Vec<Letter>,
}

impl ConvWord {
    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn tracks(&self) -> usize {
        self.letters.first().map_or(0, |l| l.cells.len())
    }

    /// Letter at exponent `k`, if inside the domain.
    pub fn at(&self, k: i64) -> Option<&Letter> {
        let i = self.top - k;
        if i < 0 {
            return None;
        }
        self.letters.get(i as usize)
    }

    /// The letters in the order an automaton reads them.
    pub fn in_order(&self, order: ReadOrder) -> Vec<Letter> {
        match order {
            ReadOrder::MsbFirst => self.letters.clone(),
            ReadOrder::LsbFirst => self.letters.iter().rev().cloned().collect(),
        }
    }

    /// Recovers the tracks, reading padding as zero.
    pub fn decode(&self) -> Vec<LaurentDigits> {
        (0..self.tracks())
            .map(|t| {
                LaurentDigits::from_pairs(
                    self.letters
                        .iter()
                        .enumerate()
                        .map(|(i, l)| (self.top - i as i64, l.cells[t].value())),
                )
            })
            .collect()
    }
}

impl fmt::Display for ConvWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.letters.iter().map(|l| l.to_string()).collect();
        f.write_str(&parts.join(" "))
    }
}

/// Convolution of digit vectors.
pub fn convolve(words: &[LaurentDigits]) -> ConvWord {
    let mut top = 0;
    let mut bottom = 0;
    for w in words {
        if let (Some(lo), Some(hi)) = (w.lo(), w.hi()) {
            top = top.max(hi);
            bottom = bottom.min(lo);
        }
    }
    let letters = (bottom..=top)
        .rev()
        .map(|k| {
            let cells = words
                .iter()
                .map(|w| match (w.lo(), w.hi()) {
                    (Some(lo), Some(hi)) if lo <= k && k <= hi => Cell::Digit(w.coeff_i64(k)),
                    _ => Cell::Pad,
                })
                .collect();
            Letter::new(cells, k == 0)
        })
        .collect();
    ConvWord { top, letters }
}

/// A deterministic automaton given by its transition function.
pub trait Automaton {
    type State: Clone + Eq + Hash + fmt::Debug;
    type Class: Clone + Eq + Hash + fmt::Debug;

    fn tracks(&self) -> usize;

    /// Letters the automaton is meant to read, for explicit construction.
    fn alphabet(&self) -> Vec<Letter>;

    fn read_order(&self) -> ReadOrder {
        ReadOrder::MsbFirst
    }

    /// Whether the exponent-0 flag on letters matters.
    fn uses_units(&self) -> bool {
        false
    }

    fn start(&self) -> Self::State;

    fn step(&self, state: &Self::State, letter: &Letter) -> Self::State;

    fn classify(&self, state: &Self::State) -> Self::Class;

    fn run_word(&self, word: &[Letter]) -> Self::Class {
        let mut s = self.start();
        for l in word {
            s = self.step(&s, l);
        }
        self.classify(&s)
    }
}

pub(crate) fn check_tracks(expected: usize, word: &[Letter]) -> Result<()> {
    match word.iter().find(|l| l.cells.len() != expected) {
        Some(l) => Err(Error::AlphabetMismatch(format!(
            "letter {l} has {} tracks, expected {expected}",
            l.cells.len()
        ))),
        None => Ok(()),
    }
}

/// All letters over `cells` per track (padding included), without the
/// exponent-0 flag; with `units`, each letter also appears flagged.
pub fn full_alphabet(tracks: usize, cells: &[Cell], units: bool) -> Vec<Letter> {
    let mut out: Vec<Vec<Cell>> = vec![Vec::new()];
    for _ in 0..tracks {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                cells.iter().map(move |c| {
                    let mut p = prefix.clone();
                    p.push(*c);
                    p
                })
            })
            .collect();
    }
    let mut letters: Vec<Letter> = Vec::new();
    for cs in out {
        if units {
            letters.push(Letter::new(cs.clone(), true));
        }
        letters.push(Letter::new(cs, false));
    }
    letters.sort();
    letters
}

/// Digit cells `lo..=hi` plus padding.
pub fn digit_cells(lo: i64, hi: i64) -> Vec<Cell> {
    let mut v: Vec<Cell> = (lo..=hi).map(Cell::Digit).collect();
    v.push(Cell::Pad);
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(s: &str) -> LaurentDigits {
        s.parse().unwrap()
    }

    #[test]
    fn convolve_examples() {
        let w = convolve(&[d("{0:1}"), d("{}")]);
        assert_eq!(w.to_string(), "(1,#).");
        let w = convolve(&[d("{0:1,-1:2}"), d("{0:3}")]);
        assert_eq!(w.to_string(), "(1,3). (2,#)");
        let x = d("{0:1,-1:1,-2:1,-3:2}");
        let y = d("{1:2,0:2,-1:2,-2:8,-3:9,-4:5}");
        let w = convolve(&[x.clone(), y.clone()]);
        assert_eq!(w.top, 1);
        assert_eq!(w.len(), 6);
        assert_eq!(w.at(1).unwrap().cells, vec![Cell::Pad, Cell::Digit(2)]);
        assert_eq!(w.to_string(), "(#,2) (1,2). (1,2) (1,8) (2,9) (#,5)");
        assert_eq!(w.decode(), vec![x, y]);
    }

    #[test]
    fn domain_contains_units_position() {
        let w = convolve(&[d("{-2:1}")]);
        assert_eq!(w.to_string(), "(#). (#) (1)");
        let w = convolve(&[d("{3:1}")]);
        assert_eq!(w.to_string(), "(1) (#) (#) (#).");
        assert_eq!(convolve(&[]).len(), 1);
    }

    #[test]
    fn alphabet_sizes() {
        assert_eq!(full_alphabet(2, &digit_cells(-1, 1), false).len(), 16);
        assert_eq!(full_alphabet(1, &digit_cells(0, 9), true).len(), 22);
    }
}
