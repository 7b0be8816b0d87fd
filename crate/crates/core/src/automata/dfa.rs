use std::collections::{HashMap, VecDeque};
use std::fmt::{self, Write as _};
use std::hash::Hash;

use super::{check_tracks, Automaton, Letter, ReadOrder};
use crate::error::{Error, Result};

pub const DEFAULT_STATE_CAP: usize = 1_000_000;

/// Memoizing wrapper that interns the states of an [`Automaton`] as they are
/// reached.
pub struct LazyDfa<A: Automaton> {
    inner: A,
    states: Vec<A::State>,
    index: HashMap<A::State, usize>,
    trans: HashMap<(usize, Letter), usize>,
    classes: Vec<Option<A::Class>>,
    cap: usize,
}

impl<A: Automaton> LazyDfa<A> {
    pub fn new(inner: A) -> Self {
        Self::with_cap(inner, DEFAULT_STATE_CAP)
    }

    pub fn with_cap(inner: A, cap: usize) -> Self {
        let mut dfa = LazyDfa {
            inner,
            states: Vec::new(),
            index: HashMap::new(),
            trans: HashMap::new(),
            classes: Vec::new(),
            cap,
        };
        let s = dfa.inner.start();
        dfa.states.push(s.clone());
        dfa.index.insert(s, 0);
        dfa.classes.push(None);
        dfa
    }

    /// Changes the state cap; states already interned are kept.
    pub fn set_cap(&mut self, cap: usize) {
        self.cap = cap;
    }

    pub fn inner(&self) -> &A {
        &self.inner
    }

    /// Number of states interned so far.
    pub fn state_count(&self) -> usize {
        self.states.len()
    }

    pub fn state(&self, id: usize) -> &A::State {
        &self.states[id]
    }

    fn key(&self, letter: &Letter) -> Letter {
        if self.inner.uses_units() {
            letter.clone()
        } else {
            letter.without_units()
        }
    }

    pub fn step(&mut self, from: usize, letter: &Letter) -> Result<usize> {
        let key = (from, self.key(letter));
        if let Some(&to) = self.trans.get(&key) {
            return Ok(to);
        }
        let next = self.inner.step(&self.states[from], &key.1);
        let to = match self.index.get(&next) {
            Some(&i) => i,
            None => {
                if self.states.len() >= self.cap {
                    return Err(Error::StateExplosion { cap: self.cap });
                }
                let i = self.states.len();
                self.states.push(next.clone());
                self.index.insert(next, i);
                self.classes.push(None);
                i
            }
        };
        self.trans.insert(key, to);
        Ok(to)
    }

    pub fn classify(&mut self, id: usize) -> A::Class {
        if let Some(c) = &self.classes[id] {
            return c.clone();
        }
        let c = self.inner.classify(&self.states[id]);
        self.classes[id] = Some(c.clone());
        c
    }

    /// Runs a word given in reading order.
    pub fn run(&mut self, word: &[Letter]) -> Result<A::Class> {
        check_tracks(self.inner.tracks(), word)?;
        let mut s = 0;
        for l in word {
            s = self.step(s, l)?;
        }
        Ok(self.classify(s))
    }

    /// Builds the explicit automaton over the declared alphabet, visiting
    /// every reachable state.
    pub fn materialize(&mut self) -> Result<Dfa<A::Class>> {
        let alphabet = self.inner.alphabet();
        let mut order = vec![0usize];
        let mut pos: HashMap<usize, usize> = HashMap::from([(0, 0)]);
        let mut trans: Vec<Vec<usize>> = Vec::new();
        let mut i = 0;
        while i < order.len() {
            let s = order[i];
            let mut row = Vec::with_capacity(alphabet.len());
            for l in &alphabet {
                let t = self.step(s, l)?;
                let next = pos.len();
                let p = *pos.entry(t).or_insert_with(|| {
                    order.push(t);
                    next
                });
                row.push(p);
            }
            trans.push(row);
            i += 1;
        }
        let class: Vec<A::Class> = order.iter().map(|&s| self.classify(s)).collect();
        let labels = (0..order.len()).map(|i| format!("q{i}")).collect();
        Dfa::new(
            self.inner.tracks(),
            self.inner.read_order(),
            self.inner.uses_units(),
            alphabet,
            0,
            trans,
            class,
            labels,
        )
    }
}

/// An explicit deterministic automaton with a total transition table.
#[derive(Clone, Debug)]
pub struct Dfa<C> {
    tracks: usize,
    order: ReadOrder,
    units: bool,
    alphabet: Vec<Letter>,
    index: HashMap<Letter, usize>,
    start: usize,
    trans: Vec<Vec<usize>>,
    class: Vec<C>,
    labels: Vec<String>,
}

impl<C: Clone> Dfa<C> {
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        tracks: usize,
        order: ReadOrder,
        units: bool,
        alphabet: Vec<Letter>,
        start: usize,
        trans: Vec<Vec<usize>>,
        class: Vec<C>,
        labels: Vec<String>,
    ) -> Result<Dfa<C>> {
        let n = class.len();
        let bad = |m: String| Err(Error::InvalidArgument(m));
        if trans.len() != n || labels.len() != n || start >= n.max(1) {
            return bad("state tables disagree in length".into());
        }
        if let Some(l) = alphabet.iter().find(|l| l.cells.len() != tracks) {
            return bad(format!("letter {l} does not have {tracks} tracks"));
        }
        if trans
            .iter()
            .any(|row| row.len() != alphabet.len() || row.iter().any(|&t| t >= n))
        {
            return bad("transition table is not total".into());
        }
        let index: HashMap<Letter, usize> = alphabet
            .iter()
            .enumerate()
            .map(|(i, l)| (l.clone(), i))
            .collect();
        if index.len() != alphabet.len() {
            return bad("alphabet has repeated letters".into());
        }
        Ok(Dfa {
            tracks,
            order,
            units,
            alphabet,
            index,
            start,
            trans,
            class,
            labels,
        })
    }

    pub fn tracks(&self) -> usize {
        self.tracks
    }

    pub fn read_order(&self) -> ReadOrder {
        self.order
    }

    pub fn uses_units(&self) -> bool {
        self.units
    }

    pub fn alphabet(&self) -> &[Letter] {
        &self.alphabet
    }

    pub fn state_count(&self) -> usize {
        self.class.len()
    }

    pub fn start(&self) -> usize {
        self.start
    }

    pub fn class_of(&self, s: usize) -> &C {
        &self.class[s]
    }

    pub fn label(&self, s: usize) -> &str {
        &self.labels[s]
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Self {
        assert_eq!(labels.len(), self.labels.len());
        self.labels = labels;
        self
    }

    pub fn letter_index(&self, letter: &Letter) -> Option<usize> {
        if self.units {
            self.index.get(letter).copied()
        } else {
            self.index.get(&letter.without_units()).copied()
        }
    }

    pub fn next(&self, s: usize, letter_idx: usize) -> usize {
        self.trans[s][letter_idx]
    }

    /// State sequence of a run, starting with the initial state.
    pub fn trace(&self, word: &[Letter]) -> Result<Vec<usize>> {
        let mut s = self.start;
        let mut out = vec![s];
        for l in word {
            let i = self
                .letter_index(l)
                .ok_or_else(|| Error::AlphabetMismatch(format!("letter {l} not in alphabet")))?;
            s = self.trans[s][i];
            out.push(s);
        }
        Ok(out)
    }

    pub fn run(&self, word: &[Letter]) -> Result<C> {
        let states = self.trace(word)?;
        Ok(self.class[*states.last().unwrap()].clone())
    }
}

fn same_alphabet<A, B>(a: &Dfa<A>, b: &Dfa<B>) -> Result<()> {
    if a.tracks != b.tracks || a.order != b.order || a.units != b.units {
        return Err(Error::AlphabetMismatch(
            "track count, order or units flag differ".into(),
        ));
    }
    if a.alphabet.len() != b.alphabet.len() || a.alphabet.iter().any(|l| !b.index.contains_key(l)) {
        return Err(Error::AlphabetMismatch("letter sets differ".into()));
    }
    Ok(())
}

/// Synchronous product; the class of a pair state is `combine(class_a, class_b)`.
pub fn product<A: Clone, B: Clone, C: Clone>(
    a: &Dfa<A>,
    b: &Dfa<B>,
    combine: impl Fn(&A, &B) -> C,
) -> Result<Dfa<C>> {
    same_alphabet(a, b)?;
    let remap: Vec<usize> = a.alphabet.iter().map(|l| b.index[l]).collect();
    let mut ids: HashMap<(usize, usize), usize> = HashMap::new();
    let mut queue = vec![(a.start, b.start)];
    ids.insert((a.start, b.start), 0);
    let mut trans = Vec::new();
    let mut i = 0;
    while i < queue.len() {
        let (p, q) = queue[i];
        let row = (0..a.alphabet.len())
            .map(|li| {
                let t = (a.trans[p][li], b.trans[q][remap[li]]);
                let next = ids.len();
                *ids.entry(t).or_insert_with(|| {
                    queue.push(t);
                    next
                })
            })
            .collect();
        trans.push(row);
        i += 1;
    }
    let class = queue
        .iter()
        .map(|&(p, q)| combine(&a.class[p], &b.class[q]))
        .collect();
    let labels = queue
        .iter()
        .map(|&(p, q)| format!("{}*{}", a.labels[p], b.labels[q]))
        .collect();
    Dfa::new(
        a.tracks,
        a.order,
        a.units,
        a.alphabet.clone(),
        0,
        trans,
        class,
        labels,
    )
}

/// Minimal automaton with the same classification (Moore refinement over
/// the reachable part). States are numbered in breadth-first order and keep
/// the label of their first member.
pub fn minimize<C: Clone + Eq + Hash>(a: &Dfa<C>) -> Dfa<C> {
    let mut order = vec![a.start];
    let mut seen = vec![false; a.state_count()];
    seen[a.start] = true;
    let mut i = 0;
    while i < order.len() {
        for &t in &a.trans[order[i]] {
            if !seen[t] {
                seen[t] = true;
                order.push(t);
            }
        }
        i += 1;
    }
    let mut block = vec![usize::MAX; a.state_count()];
    let mut classes: HashMap<&C, usize> = HashMap::new();
    for &s in &order {
        let next = classes.len();
        block[s] = *classes.entry(&a.class[s]).or_insert(next);
    }
    let mut count = classes.len();
    loop {
        let mut sigs: HashMap<Vec<usize>, usize> = HashMap::new();
        let mut fresh = vec![usize::MAX; a.state_count()];
        for &s in &order {
            let mut sig = Vec::with_capacity(a.alphabet.len() + 1);
            sig.push(block[s]);
            sig.extend(a.trans[s].iter().map(|&t| block[t]));
            let next = sigs.len();
            fresh[s] = *sigs.entry(sig).or_insert(next);
        }
        block = fresh;
        if sigs.len() == count {
            break;
        }
        count = sigs.len();
    }
    // renumber blocks in breadth-first order of their first member
    let mut rename = vec![usize::MAX; count];
    let mut reps = Vec::new();
    for &s in &order {
        if rename[block[s]] == usize::MAX {
            rename[block[s]] = reps.len();
            reps.push(s);
        }
    }
    let trans = reps
        .iter()
        .map(|&s| a.trans[s].iter().map(|&t| rename[block[t]]).collect())
        .collect();
    let class = reps.iter().map(|&s| a.class[s].clone()).collect();
    let labels = reps.iter().map(|&s| a.labels[s].clone()).collect();
    Dfa::new(
        a.tracks,
        a.order,
        a.units,
        a.alphabet.clone(),
        0,
        trans,
        class,
        labels,
    )
    .expect("minimized automaton is well formed")
}

/// `None` when both automata classify every word alike; otherwise a
/// shortest word (in reading order) on which they differ.
pub fn equivalent<C: Clone + PartialEq>(a: &Dfa<C>, b: &Dfa<C>) -> Result<Option<Vec<Letter>>> {
    same_alphabet(a, b)?;
    let remap: Vec<usize> = a.alphabet.iter().map(|l| b.index[l]).collect();
    // pair -> (predecessor pair, letter index) on a shortest path
    type Pair = (usize, usize);
    let mut parent: HashMap<Pair, Option<(Pair, usize)>> = HashMap::new();
    let start = (a.start, b.start);
    parent.insert(start, None);
    let mut queue = VecDeque::from([start]);
    while let Some((p, q)) = queue.pop_front() {
        if a.class[p] != b.class[q] {
            let mut word = Vec::new();
            let mut cur = (p, q);
            while let Some(Some((prev, li))) = parent.get(&cur) {
                word.push(a.alphabet[*li].clone());
                cur = *prev;
            }
            word.reverse();
            return Ok(Some(word));
        }
        for (li, &lb) in remap.iter().enumerate() {
            let t = (a.trans[p][li], b.trans[q][lb]);
            if let std::collections::hash_map::Entry::Vacant(e) = parent.entry(t) {
                e.insert(Some(((p, q), li)));
                queue.push_back(t);
            }
        }
    }
    Ok(None)
}

/// Graphviz rendering with deterministic ordering. Each state shows its
/// label and class; parallel edges are merged into one labelled edge.
pub fn export_dot<C: Clone + fmt::Display>(a: &Dfa<C>) -> String {
    let mut out = String::new();
    writeln!(
        out,
        "digraph dfa {{ // {} states, {} letters",
        a.state_count(),
        a.alphabet.len()
    )
    .unwrap();
    for s in 0..a.state_count() {
        let style = if s == a.start { ", style=bold" } else { "" };
        let mut edges: Vec<(usize, Vec<String>)> = Vec::new();
        for (li, &t) in a.trans[s].iter().enumerate() {
            match edges.iter_mut().find(|(to, _)| *to == t) {
                Some((_, ls)) => ls.push(a.alphabet[li].to_string()),
                None => edges.push((t, vec![a.alphabet[li].to_string()])),
            }
        }
        edges.sort_by_key(|(t, _)| *t);
        write!(
            out,
            "  q{s} [label=\"{} | {}\"{style}];",
            a.labels[s], a.class[s]
        )
        .unwrap();
        for (t, ls) in edges {
            write!(out, " q{s} -> q{t} [label=\"{}\"];", ls.join(" ")).unwrap();
        }
        out.push('\n');
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Parity of the number of ones over {0,1}.
    fn parity() -> Dfa<bool> {
        let alphabet = vec![Letter::digits(&[0]), Letter::digits(&[1])];
        Dfa::new(
            1,
            ReadOrder::MsbFirst,
            false,
            alphabet,
            0,
            vec![vec![0, 1], vec![1, 0]],
            vec![true, false],
            vec!["even".into(), "odd".into()],
        )
        .unwrap()
    }

    /// Parity with a redundant copy of each state.
    fn bloated() -> Dfa<bool> {
        let alphabet = vec![Letter::digits(&[0]), Letter::digits(&[1])];
        Dfa::new(
            1,
            ReadOrder::MsbFirst,
            false,
            alphabet,
            0,
            vec![vec![2, 1], vec![3, 2], vec![0, 3], vec![1, 0]],
            vec![true, false, true, false],
            (0..4).map(|i| format!("s{i}")).collect(),
        )
        .unwrap()
    }

    fn w(bits: &[i64]) -> Vec<Letter> {
        bits.iter().map(|&b| Letter::digits(&[b])).collect()
    }

    #[test]
    fn run_and_mismatch() {
        let a = parity();
        assert!(a.run(&w(&[1, 0, 1])).unwrap());
        assert!(!a.run(&w(&[1])).unwrap());
        assert!(matches!(a.run(&w(&[2])), Err(Error::AlphabetMismatch(_))));
    }

    #[test]
    fn minimize_and_equivalence() {
        let m = minimize(&bloated());
        assert_eq!(m.state_count(), 2);
        assert_eq!(equivalent(&m, &parity()).unwrap(), None);
        let self_and = minimize(&product(&parity(), &parity(), |x, y| *x && *y).unwrap());
        assert_eq!(equivalent(&self_and, &parity()).unwrap(), None);
        let inverted = product(&parity(), &parity(), |x, _| !*x).unwrap();
        assert_eq!(equivalent(&inverted, &parity()).unwrap(), Some(vec![]));
    }

    #[test]
    fn shortest_counterexample() {
        let a = parity();
        // accepts every word
        let mut other = parity();
        other.trans = vec![vec![0, 1], vec![1, 0]];
        other.class = vec![true, true];
        let cex = equivalent(&a, &other).unwrap().unwrap();
        assert_eq!(cex, w(&[1]));
    }

    #[test]
    fn dot_output() {
        let trivial = Dfa::new(
            0,
            ReadOrder::MsbFirst,
            false,
            vec![],
            0,
            vec![vec![]],
            vec![true],
            vec!["q0".into()],
        )
        .unwrap();
        let dot = export_dot(&trivial);
        assert_eq!(dot.lines().count(), 3);
        assert!(dot.starts_with("digraph dfa { // 1 states, 0 letters"));
        let dot = export_dot(&parity());
        assert_eq!(dot, export_dot(&parity()));
        assert!(dot.contains("q0 -> q1 [label=\"(1)\"]"));
    }

    #[test]
    fn product_rejects_other_alphabets() {
        let mut other = parity();
        other.alphabet = vec![Letter::digits(&[0]), Letter::digits(&[2])];
        other.index = other
            .alphabet
            .iter()
            .enumerate()
            .map(|(i, l)| (l.clone(), i))
            .collect();
        assert!(matches!(
            product(&parity(), &other, |x, y| *x && *y),
            Err(Error::AlphabetMismatch(_))
        ));
    }
}
