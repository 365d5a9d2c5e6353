//! HLT coset enumeration with coincidence processing.
//!
//! Cosets are right cosets `Hw`; generators act on the right. Column `2g` holds the
//! action of generator `g`, column `2g + 1` the action of its inverse.

use std::collections::VecDeque;
use std::fmt::Write as _;

use crate::presentation::{Letter, Word};

const UNDEF: u32 = u32::MAX;

/// A coset table in standard form: coset 0 is the subgroup, cosets are numbered in
/// breadth-first order over the columns, and `reps[c]` is the breadth-first word reaching `c`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosetTable {
    pub rank: usize,
    rows: Vec<u32>,
    pub reps: Vec<Word>,
    /// Whether every entry is defined (the enumeration closed).
    pub complete: bool,
}

impl CosetTable {
    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    pub fn columns(&self) -> usize {
        2 * self.rank
    }

    /// Image of `coset` under a column, if defined.
    pub fn act(&self, coset: usize, column: usize) -> Option<usize> {
        let v = self.rows[coset * self.columns() + column];
        (v != UNDEF).then_some(v as usize)
    }

    pub fn act_letter(&self, coset: usize, l: Letter) -> Option<usize> {
        self.act(coset, l.column())
    }

    /// Traces a word from `coset`; `None` if the table runs out of definitions.
    pub fn trace(&self, coset: usize, w: &Word) -> Option<usize> {
        w.letters()
            .iter()
            .try_fold(coset, |c, &l| self.act_letter(c, l))
    }

    /// Structured text: one row per coset, `id: images...` over the generator columns.
    pub fn export(&self, names: &[String]) -> String {
        let mut out = String::from("# conepair coset-table v1\n");
        let header: Vec<String> = names
            .iter()
            .flat_map(|n| [n.clone(), format!("{n}^-1")])
            .collect();
        let _ = writeln!(out, "coset {}", header.join(" "));
        for c in 0..self.len() {
            let imgs: Vec<String> = (0..self.columns())
                .map(|x| self.act(c, x).map_or("-".to_string(), |v| v.to_string()))
                .collect();
            let _ = writeln!(out, "{c} {}", imgs.join(" "));
        }
        out
    }
}

/// Outcome of an enumeration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Enumeration {
    Complete(CosetTable),
    /// The cap was hit; `reached` cosets had been defined.
    Overflow {
        reached: usize,
        partial: CosetTable,
    },
}

impl Enumeration {
    pub fn complete(self) -> Option<CosetTable> {
        match self {
            Enumeration::Complete(t) => Some(t),
            Enumeration::Overflow { .. } => None,
        }
    }
}

struct Enumerator {
    cols: usize,
    table: Vec<u32>,
    parent: Vec<u32>,
    queue: VecDeque<u32>,
    max_cosets: usize,
    overflowed: bool,
}

impl Enumerator {
    fn new(rank: usize, max_cosets: usize) -> Self {
        let cols = 2 * rank;
        Enumerator {
            cols,
            table: vec![UNDEF; cols],
            parent: vec![0],
            queue: VecDeque::new(),
            max_cosets,
            overflowed: false,
        }
    }

    fn n(&self) -> usize {
        self.parent.len()
    }

    fn get(&self, c: u32, x: usize) -> u32 {
        self.table[c as usize * self.cols + x]
    }

    fn set(&mut self, c: u32, x: usize, v: u32) {
        self.table[c as usize * self.cols + x] = v;
    }

    fn live(&self, c: u32) -> bool {
        self.parent[c as usize] == c
    }

    fn rep(&mut self, c: u32) -> u32 {
        let mut r = c;
        while self.parent[r as usize] != r {
            r = self.parent[r as usize];
        }
        let mut c = c;
        while self.parent[c as usize] != r {
            let next = self.parent[c as usize];
            self.parent[c as usize] = r;
            c = next;
        }
        r
    }

    fn define(&mut self, c: u32, x: usize) -> bool {
        if self.n() >= self.max_cosets {
            self.overflowed = true;
            return false;
        }
        let d = self.n() as u32;
        self.parent.push(d);
        self.table.extend(std::iter::repeat_n(UNDEF, self.cols));
        self.set(c, x, d);
        self.set(d, x ^ 1, c);
        true
    }

    fn merge(&mut self, a: u32, b: u32) {
        let a = self.rep(a);
        let b = self.rep(b);
        if a == b {
            return;
        }
        let (keep, kill) = if a < b { (a, b) } else { (b, a) };
        self.parent[kill as usize] = keep;
        self.queue.push_back(kill);
    }

    fn coincidence(&mut self, a: u32, b: u32) {
        self.merge(a, b);
        while let Some(e) = self.queue.pop_front() {
            for x in 0..self.cols {
                let f = self.get(e, x);
                if f == UNDEF {
                    continue;
                }
                if self.get(f, x ^ 1) == e {
                    self.set(f, x ^ 1, UNDEF);
                }
                let e1 = self.rep(e);
                let f1 = self.rep(f);
                let ex = self.get(e1, x);
                if ex != UNDEF {
                    self.merge(f1, ex);
                } else {
                    let fx = self.get(f1, x ^ 1);
                    if fx != UNDEF {
                        self.merge(e1, fx);
                    } else {
                        self.set(e1, x, f1);
                        self.set(f1, x ^ 1, e1);
                    }
                }
            }
        }
    }

    /// Scan `word` at `c`, defining cosets as needed. Returns false on overflow.
    fn scan_and_fill(&mut self, c: u32, word: &[usize]) -> bool {
        if word.is_empty() {
            return true;
        }
        let mut f = c;
        let mut b = c;
        let mut i = 0usize;
        let mut j = word.len() - 1;
        loop {
            while i <= j && self.get(f, word[i]) != UNDEF {
                f = self.get(f, word[i]);
                i += 1;
            }
            if i > j {
                if f != b {
                    self.coincidence(f, b);
                }
                return true;
            }
            while j >= i && self.get(b, word[j] ^ 1) != UNDEF {
                b = self.get(b, word[j] ^ 1);
                if j == 0 {
                    // whole word traced backwards
                    if f != b {
                        self.coincidence(f, b);
                    }
                    return true;
                }
                j -= 1;
            }
            if j < i {
                self.coincidence(f, b);
                return true;
            }
            if i == j {
                self.set(f, word[i], b);
                self.set(b, word[i] ^ 1, f);
                return true;
            }
            if !self.define(f, word[i]) {
                return false;
            }
        }
    }

    fn run(&mut self, relators: &[Vec<usize>], subgroup: &[Vec<usize>]) {
        for h in subgroup {
            if !self.scan_and_fill(0, h) {
                return;
            }
        }
        let mut c: u32 = 0;
        while (c as usize) < self.n() {
            if self.live(c) {
                for r in relators {
                    if !self.scan_and_fill(c, r) {
                        return;
                    }
                    if !self.live(c) {
                        break;
                    }
                }
                if self.live(c) {
                    for x in 0..self.cols {
                        if self.get(c, x) == UNDEF && !self.define(c, x) {
                            return;
                        }
                    }
                }
            }
            c += 1;
        }
    }

    /// Renumber live cosets breadth-first from coset 0.
    fn standardize(&mut self, rank: usize) -> CosetTable {
        let n = self.n();
        let mut new_id = vec![UNDEF; n];
        let mut order: Vec<u32> = vec![self.rep(0)];
        let mut reps: Vec<Word> = vec![Word::empty()];
        new_id[order[0] as usize] = 0;
        let mut head = 0;
        while head < order.len() {
            let c = order[head];
            for x in 0..self.cols {
                let d = self.get(c, x);
                if d == UNDEF {
                    continue;
                }
                let d = self.rep(d);
                if new_id[d as usize] == UNDEF {
                    new_id[d as usize] = order.len() as u32;
                    order.push(d);
                    let mut w = reps[head].clone();
                    w.0.push(Letter::from_column(x));
                    reps.push(w);
                }
            }
            head += 1;
        }
        let mut rows = vec![UNDEF; order.len() * self.cols];
        let mut complete = true;
        for (i, &c) in order.iter().enumerate() {
            for x in 0..self.cols {
                let d = self.get(c, x);
                if d == UNDEF {
                    complete = false;
                } else {
                    let d = self.rep(d);
                    rows[i * self.cols + x] = new_id[d as usize];
                }
            }
        }
        CosetTable {
            rank,
            rows,
            reps,
            complete,
        }
    }
}

fn columns_of(w: &Word) -> Vec<usize> {
    w.freely_reduced()
        .letters()
        .iter()
        .map(|l| l.column())
        .collect()
}

/// Enumerate right cosets of `⟨subgroup⟩` in `⟨rank generators | relators⟩`.
///
/// On overflow the partially enumerated table is returned as well; every coincidence
/// discovered so far has been processed, so traces through it are sound.
pub fn enumerate(
    rank: usize,
    relators: &[Word],
    subgroup: &[Word],
    max_cosets: usize,
) -> Enumeration {
    let rels: Vec<Vec<usize>> = relators
        .iter()
        .map(columns_of)
        .filter(|r| !r.is_empty())
        .collect();
    let sub: Vec<Vec<usize>> = subgroup
        .iter()
        .map(columns_of)
        .filter(|r| !r.is_empty())
        .collect();
    let mut e = Enumerator::new(rank, max_cosets.max(1));
    e.run(&rels, &sub);
    let overflowed = e.overflowed;
    let reached = e.n();
    let table = e.standardize(rank);
    if overflowed || !table.complete {
        Enumeration::Overflow {
            reached,
            partial: table,
        }
    } else {
        Enumeration::Complete(table)
    }
}

/// The folded graph of a subgroup: scan the generators at the base coset, folding as
/// coincidences arise, and stop. Over a free group this is the Stallings graph, and the
/// Schreier graph of the subgroup is this graph with trees hanging off undefined entries.
pub fn subgroup_graph(rank: usize, subgroup: &[Word]) -> CosetTable {
    let sub: Vec<Vec<usize>> = subgroup
        .iter()
        .map(columns_of)
        .filter(|r| !r.is_empty())
        .collect();
    let mut e = Enumerator::new(rank, usize::MAX);
    for h in &sub {
        e.scan_and_fill(0, h);
    }
    e.standardize(rank)
}
