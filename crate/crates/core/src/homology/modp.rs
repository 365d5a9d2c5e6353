//! Column echelon over a prime field.

use std::collections::HashMap;

use super::sparse::SparseVec;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FpVec(Vec<(u32, u64)>);

impl FpVec {
    pub fn from_int(v: &SparseVec, p: u64) -> Self {
        FpVec(
            v.iter()
                .map(|(i, x)| (i, x.mod_u64(p)))
                .filter(|(_, x)| *x != 0)
                .collect(),
        )
    }

    pub fn unit(i: u32) -> Self {
        FpVec(vec![(i, 1)])
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn entries(&self) -> &[(u32, u64)] {
        &self.0
    }

    fn low(&self) -> Option<(u32, u64)> {
        self.0.last().copied()
    }

    /// `self + a·other` mod `p`.
    fn axpy(&self, a: u64, other: &FpVec, p: u64) -> FpVec {
        let mut out = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() || j < other.0.len() {
            let ki = self.0.get(i).map_or(u32::MAX, |e| e.0);
            let kj = other.0.get(j).map_or(u32::MAX, |e| e.0);
            if ki < kj {
                out.push(self.0[i]);
                i += 1;
            } else if kj < ki {
                out.push((kj, a * other.0[j].1 % p));
                j += 1;
            } else {
                let s = (self.0[i].1 + a * other.0[j].1) % p;
                if s != 0 {
                    out.push((ki, s));
                }
                i += 1;
                j += 1;
            }
        }
        FpVec(out)
    }
}

pub fn inv_mod(a: u64, p: u64) -> u64 {
    let (mut base, mut e, mut r) = (a % p, p - 2, 1u64);
    while e > 0 {
        if e & 1 == 1 {
            r = r * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    r
}

/// Echelon over `Z/p`, optionally tracking combinations.
#[derive(Clone, Debug)]
pub struct FpEchelon {
    p: u64,
    cols: Vec<FpVec>,
    combos: Option<Vec<FpVec>>,
    low_to: HashMap<u32, usize>,
}

impl FpEchelon {
    pub fn new(p: u64, track: bool) -> Self {
        assert!((2..(1 << 31)).contains(&p), "prime out of range");
        FpEchelon {
            p,
            cols: Vec::new(),
            combos: track.then(Vec::new),
            low_to: HashMap::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.cols.len()
    }

    /// Returns the combination if `v` reduces to zero.
    pub fn insert(&mut self, mut v: FpVec, mut combo: FpVec) -> Option<FpVec> {
        let p = self.p;
        while let Some((r, a)) = v.low() {
            match self.low_to.get(&r) {
                None => {
                    self.low_to.insert(r, self.cols.len());
                    self.cols.push(v);
                    if let Some(c) = &mut self.combos {
                        c.push(combo);
                    }
                    return None;
                }
                Some(&j) => {
                    let b = self.cols[j].low().expect("pivot").1;
                    let f = (p - a) * inv_mod(b, p) % p;
                    v = v.axpy(f, &self.cols[j], p);
                    if let Some(c) = &self.combos {
                        combo = combo.axpy(f, &c[j], p);
                    }
                }
            }
        }
        Some(combo)
    }

    /// Turns on tracking; existing pivots carry empty combinations.
    pub fn into_tracking(mut self) -> Self {
        self.combos = Some(vec![FpVec::default(); self.cols.len()]);
        self
    }

    /// Coefficients `c` with `v = Σ c_k·input_k` plus unlabelled inputs, if `v` is in the span.
    pub fn decompose(&self, v: &FpVec) -> Option<FpVec> {
        let p = self.p;
        let combos = self.combos.as_ref().expect("tracking echelon");
        let mut v = v.clone();
        let mut acc = FpVec::default();
        while let Some((r, a)) = v.low() {
            let &j = self.low_to.get(&r)?;
            let b = self.cols[j].low().expect("pivot").1;
            let f = (p - a) * inv_mod(b, p) % p;
            v = v.axpy(f, &self.cols[j], p);
            acc = acc.axpy(f, &combos[j], p);
        }
        Some(FpVec::default().axpy(p - 1, &acc, p))
    }

    pub fn reduce(&self, v: &FpVec) -> FpVec {
        let p = self.p;
        let mut v = v.clone();
        // reduce from the top so the remainder is canonical
        let mut lows: Vec<u32> = self.low_to.keys().copied().collect();
        lows.sort_unstable_by(|a, b| b.cmp(a));
        for r in lows {
            let Ok(pos) = v.0.binary_search_by_key(&r, |e| e.0) else { continue };
            let a = v.0[pos].1;
            let q = &self.cols[self.low_to[&r]];
            let b = q.low().expect("pivot").1;
            v = v.axpy((p - a) * inv_mod(b, p) % p, q, p);
        }
        v
    }

    pub fn contains(&self, v: &FpVec) -> bool {
        self.reduce(v).is_empty()
    }
}

/// Rank of a sparse integer matrix modulo `p`.
pub fn rank_mod_p(cols: &[SparseVec], p: u64) -> usize {
    let mut e = FpEchelon::new(p, false);
    for c in cols {
        e.insert(FpVec::from_int(c, p), FpVec::default());
    }
    e.rank()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homology::int::Int;

    #[test]
    fn rank_depends_on_characteristic() {
        // [[2, 0], [0, 3]]
        let cols = vec![
            SparseVec::from_entries([(0, Int::from(2))]),
            SparseVec::from_entries([(1, Int::from(3))]),
        ];
        assert_eq!(rank_mod_p(&cols, 2), 1);
        assert_eq!(rank_mod_p(&cols, 3), 1);
        assert_eq!(rank_mod_p(&cols, 5), 2);
        assert_eq!(inv_mod(3, 7), 5);
    }
}
