//! Subgroups of `Z^n` as integer lattices in Hermite normal form.

/// Row-style Hermite normal form: each row's leading entry is positive, lies strictly to
/// the right of the previous row's, and entries above a pivot are reduced into `[0, pivot)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lattice {
    dim: usize,
    rows: Vec<Vec<i64>>,
    pivots: Vec<usize>,
}

impl Lattice {
    pub fn new(dim: usize, generators: &[Vec<i64>]) -> Self {
        let mut m: Vec<Vec<i128>> = generators
            .iter()
            .map(|g| g.iter().map(|&x| x as i128).collect())
            .collect();
        let mut rows: Vec<Vec<i128>> = Vec::new();
        let mut pivots = Vec::new();
        for col in 0..dim {
            // gcd-reduce column `col` over the remaining rows
            loop {
                let nz: Vec<usize> = (0..m.len()).filter(|&i| m[i][col] != 0).collect();
                if nz.len() <= 1 {
                    break;
                }
                let p = *nz
                    .iter()
                    .min_by_key(|&&i| m[i][col].abs())
                    .expect("nonempty");
                let pv = m[p][col];
                for &i in &nz {
                    if i != p {
                        let q = m[i][col].div_euclid(pv);
                        let prow = m[p].clone();
                        for (x, y) in m[i].iter_mut().zip(&prow) {
                            *x -= q * y;
                        }
                    }
                }
            }
            if let Some(i) = (0..m.len()).find(|&i| m[i][col] != 0) {
                let mut r = m.remove(i);
                if r[col] < 0 {
                    r.iter_mut().for_each(|x| *x = -*x);
                }
                rows.push(r);
                pivots.push(col);
            }
        }
        // reduce above pivots
        for k in 0..rows.len() {
            let (c, p) = (pivots[k], rows[k][pivots[k]]);
            for j in 0..k {
                let q = rows[j][c].div_euclid(p);
                if q != 0 {
                    let rk = rows[k].clone();
                    for (x, y) in rows[j].iter_mut().zip(&rk) {
                        *x -= q * y;
                    }
                }
            }
        }
        Lattice {
            dim,
            rows: rows
                .into_iter()
                .map(|r| {
                    r.into_iter()
                        .map(|x| i64::try_from(x).expect("lattice entry fits i64"))
                        .collect()
                })
                .collect(),
            pivots,
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.rows
    }

    /// The canonical representative of `v + L`.
    pub fn reduce(&self, v: &[i64]) -> Vec<i64> {
        let mut v = v.to_vec();
        for (r, &c) in self.rows.iter().zip(&self.pivots) {
            let q = v[c].div_euclid(r[c]);
            if q != 0 {
                for (x, y) in v.iter_mut().zip(r) {
                    *x -= q * y;
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[i64]) -> bool {
        self.reduce(v).iter().all(|&x| x == 0)
    }

    /// `[Z^n : L]`, or `None` when infinite.
    pub fn index(&self) -> Option<u64> {
        (self.rank() == self.dim).then(|| {
            self.rows
                .iter()
                .zip(&self.pivots)
                .map(|(r, &c)| r[c] as u64)
                .product()
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hnf_of_small_lattices() {
        let l = Lattice::new(2, &[vec![4, 2], vec![2, 4]]);
        assert_eq!(l.index(), Some(12));
        assert!(l.contains(&[6, 6]));
        assert!(!l.contains(&[1, 0]));
        let l = Lattice::new(2, &[vec![1, 0]]);
        assert_eq!(l.reduce(&[5, -3]), vec![0, -3]);
        assert_eq!(l.index(), None);
    }

    #[test]
    fn reduction_is_a_class_invariant() {
        let l = Lattice::new(3, &[vec![2, 1, 0], vec![0, 3, 3]]);
        for a in -3i64..=3 {
            for b in -3i64..=3 {
                let v = [1, -2, 5];
                let w: Vec<i64> = (0..3)
                    .map(|i| v[i] + a * [2, 1, 0][i] + b * [0, 3, 3][i])
                    .collect();
                assert_eq!(l.reduce(&v), l.reduce(&w));
            }
        }
    }
}
