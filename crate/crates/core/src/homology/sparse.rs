use std::collections::BTreeMap;

use super::int::Int;

/// Sparse integer vector, entries sorted by index with no zeros.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct SparseVec(Vec<(u32, Int)>);

impl SparseVec {
    pub fn new() -> Self {
        SparseVec(Vec::new())
    }

    pub fn unit(i: u32) -> Self {
        SparseVec(vec![(i, Int::ONE)])
    }

    /// Sums duplicate indices and drops zeros.
    pub fn from_entries(entries: impl IntoIterator<Item = (u32, Int)>) -> Self {
        let mut m: BTreeMap<u32, Int> = BTreeMap::new();
        for (i, v) in entries {
            let e = m.entry(i).or_insert(Int::ZERO);
            *e = &*e + &v;
        }
        SparseVec(m.into_iter().filter(|(_, v)| !v.is_zero()).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn entries(&self) -> &[(u32, Int)] {
        &self.0
    }

    pub fn iter(&self) -> impl Iterator<Item = (u32, &Int)> {
        self.0.iter().map(|(i, v)| (*i, v))
    }

    pub fn get(&self, i: u32) -> Int {
        match self.0.binary_search_by_key(&i, |e| e.0) {
            Ok(p) => self.0[p].1.clone(),
            Err(_) => Int::ZERO,
        }
    }

    /// Largest index with a nonzero entry.
    pub fn low(&self) -> Option<(u32, &Int)> {
        self.0.last().map(|(i, v)| (*i, v))
    }

    /// `self + a·other`.
    pub fn axpy(&self, a: &Int, other: &SparseVec) -> SparseVec {
        if a.is_zero() {
            return self.clone();
        }
        let mut out = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut x, mut y) = (self.0.iter().peekable(), other.0.iter().peekable());
        loop {
            match (x.peek(), y.peek()) {
                (Some((i, u)), Some((j, v))) => {
                    if i < j {
                        out.push((*i, u.clone()));
                        x.next();
                    } else if j < i {
                        out.push((*j, a * v));
                        y.next();
                    } else {
                        let s = u + &(a * v);
                        if !s.is_zero() {
                            out.push((*i, s));
                        }
                        x.next();
                        y.next();
                    }
                }
                (Some((i, u)), None) => {
                    out.push((*i, u.clone()));
                    x.next();
                }
                (None, Some((j, v))) => {
                    out.push((*j, a * v));
                    y.next();
                }
                (None, None) => break,
            }
        }
        SparseVec(out)
    }

    /// `a·self + b·other`.
    pub fn combine(&self, a: &Int, b: &Int, other: &SparseVec) -> SparseVec {
        self.scale(a).axpy(b, other)
    }

    pub fn scale(&self, a: &Int) -> SparseVec {
        if a.is_zero() {
            return SparseVec::new();
        }
        if a.is_one() {
            return self.clone();
        }
        SparseVec(self.0.iter().map(|(i, v)| (*i, v * a)).collect())
    }

    pub fn neg(&self) -> SparseVec {
        SparseVec(self.0.iter().map(|(i, v)| (*i, -v)).collect())
    }

    /// Reindexes through `f`, summing collisions; `None` drops the entry.
    pub fn map_indices(&self, f: impl Fn(u32) -> Option<(u32, Int)>) -> SparseVec {
        SparseVec::from_entries(
            self.0
                .iter()
                .filter_map(|(i, v)| f(*i).map(|(j, s)| (j, &s * v))),
        )
    }

    /// Content of the vector: gcd of its entries.
    pub fn content(&self) -> Int {
        self.0.iter().fold(Int::ZERO, |g, (_, v)| Int::gcd(&g, v))
    }
}
