//! Incremental column echelon forms over the integers.
//!
//! Columns are kept with pairwise distinct lowest nonzero rows. When a new column
//! meets a pivot it cannot divide, the pair is replaced by its gcd combination,
//! a unimodular change, so the pivots always form a basis of the column lattice.

use std::collections::HashMap;

use super::int::Int;
use super::sparse::SparseVec;

#[derive(Clone, Debug, Default)]
pub struct Echelon {
    cols: Vec<SparseVec>,
    combos: Option<Vec<SparseVec>>,
    low_to: HashMap<u32, usize>,
}

impl Echelon {
    pub fn new() -> Self {
        Echelon::default()
    }

    /// Tracks, for every pivot, its expression in the inserted columns.
    pub fn tracking() -> Self {
        Echelon {
            combos: Some(Vec::new()),
            ..Echelon::default()
        }
    }

    pub fn rank(&self) -> usize {
        self.cols.len()
    }

    pub fn basis(&self) -> &[SparseVec] {
        &self.cols
    }

    pub fn pivot_of(&self, row: u32) -> Option<&SparseVec> {
        self.low_to.get(&row).map(|&j| &self.cols[j])
    }

    /// Inserts `v` labelled by `combo`. Returns the combination when `v` reduces to
    /// zero; without tracking that combination is meaningless.
    pub fn insert(&mut self, mut v: SparseVec, mut combo: SparseVec) -> Option<SparseVec> {
        loop {
            let Some((p, a)) = v.low() else {
                return Some(combo);
            };
            let a = a.clone();
            let Some(&j) = self.low_to.get(&p) else {
                self.low_to.insert(p, self.cols.len());
                self.cols.push(v);
                if let Some(c) = &mut self.combos {
                    c.push(combo);
                }
                return None;
            };
            let b = self.cols[j].low().expect("pivot is nonzero").1.clone();
            if let Some(q) = a.div_exact(&b) {
                let q = -q;
                v = v.axpy(&q, &self.cols[j]);
                if let Some(c) = &self.combos {
                    combo = combo.axpy(&q, &c[j]);
                }
            } else {
                let (g, s, t) = Int::ext_gcd(&b, &a);
                let bg = b.div_exact(&g).expect("gcd divides");
                let ag = a.div_exact(&g).expect("gcd divides");
                let q = &self.cols[j];
                let new_q = q.combine(&s, &t, &v);
                v = q.combine(&ag, &-&bg, &v);
                self.cols[j] = new_q;
                if let Some(c) = &mut self.combos {
                    let new_c = c[j].combine(&s, &t, &combo);
                    combo = c[j].combine(&ag, &-&bg, &combo);
                    c[j] = new_c;
                }
            }
        }
    }

    /// Coefficients of `v` in the pivot basis, if `v` lies in the lattice.
    pub fn coordinates(&self, v: &SparseVec) -> Option<Vec<(usize, Int)>> {
        let mut v = v.clone();
        let mut out = Vec::new();
        while let Some((p, a)) = v.low() {
            let &j = self.low_to.get(&p)?;
            let b = self.cols[j].low().expect("pivot is nonzero").1;
            let q = a.div_exact(b)?;
            v = v.axpy(&-&q, &self.cols[j]);
            out.push((j, q));
        }
        out.sort_by_key(|e| e.0);
        Some(out)
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.coordinates(v).is_some()
    }

    /// Membership in the rational span (some nonzero multiple lies in the lattice).
    pub fn contains_rational(&self, v: &SparseVec) -> bool {
        let mut v = v.clone();
        while let Some((p, a)) = v.low() {
            let Some(&j) = self.low_to.get(&p) else {
                return false;
            };
            let a = a.clone();
            let b = self.cols[j].low().expect("pivot is nonzero").1.clone();
            let g = Int::gcd(&a, &b);
            let (ag, bg) = (a.div_exact(&g).unwrap(), b.div_exact(&g).unwrap());
            v = v.combine(&bg, &-&ag, &self.cols[j]);
            let c = v.content();
            if !c.is_zero() && !c.is_one() {
                v = SparseVec::from_entries(v.iter().map(|(i, x)| (i, x.div_exact(&c).unwrap())));
            }
        }
        true
    }

    /// Canonical representative of `v` modulo the lattice: entries at pivot rows are
    /// brought into `0..|pivot|` from the top row down.
    pub fn reduce(&self, v: &SparseVec) -> SparseVec {
        let mut lows: Vec<u32> = self.low_to.keys().copied().collect();
        lows.sort_unstable_by(|a, b| b.cmp(a));
        let mut v = v.clone();
        for p in lows {
            let a = v.get(p);
            if a.is_zero() {
                continue;
            }
            let q = &self.cols[self.low_to[&p]];
            let b = q.low().expect("pivot is nonzero").1.abs();
            let k = a.div_floor(&b);
            if k.is_zero() {
                continue;
            }
            let k = if q.low().unwrap().1.is_negative() { k } else { -k };
            v = v.axpy(&k, q);
        }
        v
    }

    /// Combinations recorded for the pivots (tracking mode only).
    pub fn pivot_combos(&self) -> Option<&[SparseVec]> {
        self.combos.as_deref()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sv(e: &[(u32, i64)]) -> SparseVec {
        SparseVec::from_entries(e.iter().map(|&(i, v)| (i, Int::from(v))))
    }

    #[test]
    fn gcd_swap_keeps_lattice() {
        let mut e = Echelon::new();
        e.insert(sv(&[(0, 1), (1, 4)]), SparseVec::new());
        e.insert(sv(&[(1, 6)]), SparseVec::new());
        // lattice spanned by (1,4) and (0,6)
        assert_eq!(e.rank(), 2);
        assert!(e.contains(&sv(&[(0, 1), (1, 4)])));
        assert!(e.contains(&sv(&[(1, 6)])));
        assert!(e.contains(&sv(&[(0, 1), (1, -2)])));
        assert!(!e.contains(&sv(&[(1, 2)])));
        assert!(e.contains_rational(&sv(&[(1, 2)])));
    }

    #[test]
    fn kernel_from_tracking() {
        // columns (1,1), (1,1), (2,2): kernel rank 2
        let mut e = Echelon::tracking();
        let cols = [sv(&[(0, 1), (1, 1)]), sv(&[(0, 1), (1, 1)]), sv(&[(0, 2), (1, 2)])];
        let kernel: Vec<_> = cols
            .iter()
            .enumerate()
            .filter_map(|(k, c)| e.insert(c.clone(), SparseVec::unit(k as u32)))
            .collect();
        assert_eq!(kernel.len(), 2);
        for z in &kernel {
            let mut s = SparseVec::new();
            for (k, a) in z.iter() {
                s = s.axpy(a, &cols[k as usize]);
            }
            assert!(s.is_empty());
        }
    }

    #[test]
    fn reduce_is_canonical() {
        let mut e = Echelon::new();
        e.insert(sv(&[(0, 1), (1, 3)]), SparseVec::new());
        let a = e.reduce(&sv(&[(1, 7)]));
        let b = e.reduce(&sv(&[(0, 2), (1, 13)]));
        assert_eq!(a, b);
    }
}
