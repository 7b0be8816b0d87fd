use std::collections::{BTreeSet, HashMap};

use super::{Dfa, Letter, ReadOrder};
use crate::error::{Error, Result};

/// Nondeterministic acceptor obtained by hiding a track.
///
/// Letters whose visible cells are all padding (and that do not mark
/// exponent 0) may also be skipped silently, but only on the flanks of the
/// word: before the first letter and after the last one. Those are the
/// positions where only the hidden track carries digits.
#[derive(Clone, Debug)]
pub struct Nfa {
    tracks: usize,
    order: ReadOrder,
    units: bool,
    alphabet: Vec<Letter>,
    index: HashMap<Letter, usize>,
    start: usize,
    trans: Vec<Vec<Vec<usize>>>,
    skip: Vec<Vec<usize>>,
    accept: Vec<bool>,
}

impl Nfa {
    pub fn state_count(&self) -> usize {
        self.accept.len()
    }

    pub fn alphabet(&self) -> &[Letter] {
        &self.alphabet
    }

    fn closure(&self, set: &BTreeSet<usize>) -> BTreeSet<usize> {
        let mut out = set.clone();
        let mut stack: Vec<usize> = set.iter().copied().collect();
        while let Some(s) = stack.pop() {
            for &t in &self.skip[s] {
                if out.insert(t) {
                    stack.push(t);
                }
            }
        }
        out
    }

    fn accepts_set(&self, set: &BTreeSet<usize>) -> bool {
        self.closure(set).iter().any(|&s| self.accept[s])
    }

    fn move_on(&self, set: &BTreeSet<usize>, li: usize) -> BTreeSet<usize> {
        set.iter()
            .flat_map(|&s| self.trans[s][li].iter().copied())
            .collect()
    }

    pub fn run(&self, word: &[Letter]) -> Result<bool> {
        let mut cur = self.closure(&BTreeSet::from([self.start]));
        for l in word {
            let key = if self.units {
                l.clone()
            } else {
                l.without_units()
            };
            let li = *self
                .index
                .get(&key)
                .ok_or_else(|| Error::AlphabetMismatch(format!("letter {l} not in alphabet")))?;
            cur = self.move_on(&cur, li);
        }
        Ok(self.accepts_set(&cur))
    }
}

/// Existential projection: the result accepts a word over the remaining
/// tracks iff some filling of track `track` is accepted by `a`.
pub fn project_track(a: &Dfa<bool>, track: usize) -> Result<Nfa> {
    if track >= a.tracks() {
        return Err(Error::InvalidArgument(format!(
            "track {track} out of range for {} tracks",
            a.tracks()
        )));
    }
    let mut alphabet: Vec<Letter> = Vec::new();
    let mut index: HashMap<Letter, usize> = HashMap::new();
    let mut map = Vec::with_capacity(a.alphabet().len());
    for l in a.alphabet() {
        let mut cells = l.cells.clone();
        cells.remove(track);
        let p = Letter::new(cells, l.units);
        let hidden = p.is_all_pad() && !p.units;
        let next = alphabet.len();
        let i = *index.entry(p.clone()).or_insert_with(|| {
            alphabet.push(p);
            next
        });
        map.push((i, hidden));
    }
    let n = a.state_count();
    let mut trans = vec![vec![Vec::new(); alphabet.len()]; n];
    let mut skip = vec![Vec::new(); n];
    for s in 0..n {
        for (li, &(pi, hidden)) in map.iter().enumerate() {
            let t = a.next(s, li);
            if !trans[s][pi].contains(&t) {
                trans[s][pi].push(t);
            }
            if hidden && !skip[s].contains(&t) {
                skip[s].push(t);
            }
        }
    }
    Ok(Nfa {
        tracks: a.tracks() - 1,
        order: a.read_order(),
        units: a.uses_units(),
        alphabet,
        index,
        start: a.start(),
        trans,
        skip,
        accept: (0..n).map(|s| *a.class_of(s)).collect(),
    })
}

/// Subset construction.
pub fn determinize(nfa: &Nfa, cap: usize) -> Result<Dfa<bool>> {
    let start = nfa.closure(&BTreeSet::from([nfa.start]));
    let mut ids: HashMap<BTreeSet<usize>, usize> = HashMap::from([(start.clone(), 0)]);
    let mut queue = vec![start];
    let mut trans = Vec::new();
    let mut i = 0;
    while i < queue.len() {
        let mut row = Vec::with_capacity(nfa.alphabet.len());
        for li in 0..nfa.alphabet.len() {
            let t = nfa.move_on(&queue[i], li);
            let id = match ids.get(&t) {
                Some(&id) => id,
                None => {
                    if queue.len() >= cap {
                        return Err(Error::StateExplosion { cap });
                    }
                    ids.insert(t.clone(), queue.len());
                    queue.push(t);
                    queue.len() - 1
                }
            };
            row.push(id);
        }
        trans.push(row);
        i += 1;
    }
    let class: Vec<bool> = queue.iter().map(|s| nfa.accepts_set(s)).collect();
    let labels = (0..queue.len()).map(|i| format!("S{i}")).collect();
    Dfa::new(
        nfa.tracks,
        nfa.order,
        nfa.units,
        nfa.alphabet.clone(),
        0,
        trans,
        class,
        labels,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automata::{digit_cells, full_alphabet, Cell};

    /// Two tracks over {0,1,#}: accepts iff the tracks agree everywhere
    /// (padding counting as 0).
    fn agree() -> Dfa<bool> {
        let alphabet = full_alphabet(2, &digit_cells(0, 1), false);
        let trans = vec![
            alphabet
                .iter()
                .map(|l| usize::from(l.cells[0].value() != l.cells[1].value()))
                .collect(),
            vec![1; alphabet.len()],
        ];
        Dfa::new(
            2,
            ReadOrder::MsbFirst,
            false,
            alphabet,
            0,
            trans,
            vec![true, false],
            vec!["ok".into(), "bad".into()],
        )
        .unwrap()
    }

    #[test]
    fn projection_of_agreement_is_total() {
        let nfa = project_track(&agree(), 1).unwrap();
        let dfa = determinize(&nfa, 100).unwrap();
        for word in [
            vec![],
            vec![Letter::digits(&[1])],
            vec![Letter::new(vec![Cell::Pad], true)],
        ] {
            assert!(dfa.run(&word).unwrap());
            assert!(nfa.run(&word).unwrap());
        }
        assert!(dfa.class_of(0));
    }

    #[test]
    fn bad_track() {
        assert!(project_track(&agree(), 2).is_err());
    }
}
