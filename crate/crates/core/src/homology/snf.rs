//! Smith normal form, dense with transforms and sparse by unit elimination.

use std::collections::BTreeSet;

use super::int::Int;
use super::sparse::SparseVec;

pub type Matrix = Vec<Vec<Int>>;

pub fn identity(n: usize) -> Matrix {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { Int::ONE } else { Int::ZERO }).collect())
        .collect()
}

pub fn matmul(a: &Matrix, b: &Matrix) -> Matrix {
    let n = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..n)
                .map(|j| {
                    row.iter()
                        .zip(b)
                        .filter(|(x, _)| !x.is_zero())
                        .fold(Int::ZERO, |s, (x, brow)| &s + &(x * &brow[j]))
                })
                .collect()
        })
        .collect()
}

/// `U·A·V = S` with `S` diagonal, `d₁ | d₂ | …`, divisors nonnegative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Snf {
    pub u: Matrix,
    pub u_inv: Matrix,
    pub s: Matrix,
    pub v: Matrix,
}

impl Snf {
    /// The diagonal of `S`, length `min(rows, cols)`.
    pub fn divisors(&self) -> Vec<Int> {
        let k = self.s.len().min(self.s.first().map_or(0, Vec::len));
        (0..k).map(|i| self.s[i][i].clone()).collect()
    }

    pub fn rank(&self) -> usize {
        self.divisors().iter().filter(|d| !d.is_zero()).count()
    }
}

struct Work {
    a: Matrix,
    u: Matrix,
    u_inv: Matrix,
    v: Matrix,
}

impl Work {
    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        self.a.swap(i, j);
        self.u.swap(i, j);
        for row in &mut self.u_inv {
            row.swap(i, j);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for row in self.a.iter_mut().chain(self.v.iter_mut()) {
            row.swap(i, j);
        }
    }

    /// row_i += k·row_t
    fn add_row(&mut self, i: usize, t: usize, k: &Int) {
        if k.is_zero() {
            return;
        }
        for m in [&mut self.a, &mut self.u] {
            let src = m[t].clone();
            for (x, y) in m[i].iter_mut().zip(&src) {
                if !y.is_zero() {
                    *x = &*x + &(k * y);
                }
            }
        }
        // inverse: col_t -= k·col_i
        for row in &mut self.u_inv {
            let y = row[i].clone();
            if !y.is_zero() {
                row[t] = &row[t] - &(k * &y);
            }
        }
    }

    /// col_j += k·col_t
    fn add_col(&mut self, j: usize, t: usize, k: &Int) {
        if k.is_zero() {
            return;
        }
        for row in self.a.iter_mut().chain(self.v.iter_mut()) {
            let y = row[t].clone();
            if !y.is_zero() {
                row[j] = &row[j] + &(k * &y);
            }
        }
    }

    fn negate_row(&mut self, t: usize) {
        for m in [&mut self.a, &mut self.u] {
            for x in &mut m[t] {
                *x = -&*x;
            }
        }
        for row in &mut self.u_inv {
            row[t] = -&row[t];
        }
    }
}

pub fn smith_normal_form(a: &Matrix) -> Snf {
    let m = a.len();
    let n = a.first().map_or(0, Vec::len);
    let mut w = Work {
        a: a.clone(),
        u: identity(m),
        u_inv: identity(m),
        v: identity(n),
    };
    for t in 0..m.min(n) {
        let mut best: Option<(usize, usize)> = None;
        for i in t..m {
            for j in t..n {
                let x = &w.a[i][j];
                if !x.is_zero() && best.is_none_or(|(bi, bj)| x.cmp_abs(&w.a[bi][bj]).is_lt()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((bi, bj)) = best else { break };
        w.swap_rows(t, bi);
        w.swap_cols(t, bj);
        loop {
            let p = w.a[t][t].clone();
            for i in t + 1..m {
                if !w.a[i][t].is_zero() {
                    let q = w.a[i][t].div_floor(&p);
                    w.add_row(i, t, &-q);
                }
            }
            for j in t + 1..n {
                if !w.a[t][j].is_zero() {
                    let q = w.a[t][j].div_floor(&p);
                    w.add_col(j, t, &-q);
                }
            }
            // smallest leftover in the pivot row or column moves to the pivot
            let mut move_to: Option<(bool, usize)> = None;
            let mut small = p.clone();
            for i in t + 1..m {
                let x = &w.a[i][t];
                if !x.is_zero() && x.cmp_abs(&small).is_lt() {
                    small = x.clone();
                    move_to = Some((true, i));
                }
            }
            for j in t + 1..n {
                let x = &w.a[t][j];
                if !x.is_zero() && x.cmp_abs(&small).is_lt() {
                    small = x.clone();
                    move_to = Some((false, j));
                }
            }
            match move_to {
                Some((true, i)) => {
                    w.swap_rows(t, i);
                    continue;
                }
                Some((false, j)) => {
                    w.swap_cols(t, j);
                    continue;
                }
                None => {}
            }
            // pivot row and column are clear; enforce divisibility of the rest
            let bad = (t + 1..m).find(|&i| (t + 1..n).any(|j| w.a[i][j].div_exact(&p).is_none()));
            match bad {
                Some(i) => w.add_row(t, i, &Int::ONE),
                None => break,
            }
        }
        if w.a[t][t].is_negative() {
            w.negate_row(t);
        }
    }
    Snf {
        u: w.u,
        u_inv: w.u_inv,
        s: w.a,
        v: w.v,
    }
}

/// What unit elimination leaves of a sparse matrix.
#[derive(Clone, Debug)]
pub struct Residual {
    /// Pivots of value `±1` removed, as `(row, column)`, in elimination order.
    pub units: Vec<(u32, u32)>,
    /// Pivot column at the time of its elimination (when requested).
    pub pivot_cols: Vec<SparseVec>,
    /// Remaining nonzero columns with their original column indices.
    pub cols: Vec<(u32, SparseVec)>,
    /// Rows that still carry entries, sorted.
    pub rows: Vec<u32>,
}

impl Residual {
    /// The remaining block as a dense matrix over `rows × cols`.
    pub fn dense(&self) -> Matrix {
        let pos = |r: u32| self.rows.binary_search(&r).expect("row index");
        let mut m = vec![vec![Int::ZERO; self.cols.len()]; self.rows.len()];
        for (j, (_, c)) in self.cols.iter().enumerate() {
            for (r, x) in c.iter() {
                m[pos(r)][j] = x.clone();
            }
        }
        m
    }
}

/// Eliminates `±1` pivots by column operations, dropping each pivot's row and column.
///
/// The cokernel of the residual (on the surviving rows) is isomorphic to the cokernel
/// of the input with the eliminated rows removed, and the elementary divisors differ
/// only by the removed units.
pub fn eliminate_units(cols: Vec<SparseVec>, nrows: usize, keep_pivots: bool) -> Residual {
    let mut cols: Vec<Option<SparseVec>> = cols.into_iter().map(|c| (!c.is_empty()).then_some(c)).collect();
    let mut row_cols: Vec<BTreeSet<u32>> = vec![BTreeSet::new(); nrows];
    for (j, c) in cols.iter().enumerate() {
        if let Some(c) = c {
            for (r, _) in c.iter() {
                row_cols[r as usize].insert(j as u32);
            }
        }
    }
    let mut order: Vec<usize> = (0..cols.len()).filter(|&j| cols[j].is_some()).collect();
    order.sort_by_key(|&j| (cols[j].as_ref().map_or(0, SparseVec::len), j));
    let mut units = Vec::new();
    let mut pivot_cols = Vec::new();
    loop {
        let before = units.len();
        for &c in &order {
            let Some(col) = &cols[c] else { continue };
            let pivot = col
                .iter()
                .filter(|(_, x)| x.is_unit())
                .min_by_key(|(r, _)| (row_cols[*r as usize].len(), *r));
            let Some((r, u)) = pivot else { continue };
            let (u, col) = (u.clone(), col.clone());
            let others: Vec<u32> = row_cols[r as usize].iter().copied().filter(|&x| x as usize != c).collect();
            for c2 in others {
                let old = cols[c2 as usize].take().expect("live column");
                let f = -(&old.get(r) * &u);
                let new = old.axpy(&f, &col);
                for (row, _) in col.iter() {
                    let (had, has) = (!old.get(row).is_zero(), !new.get(row).is_zero());
                    if had && !has {
                        row_cols[row as usize].remove(&c2);
                    } else if has && !had {
                        row_cols[row as usize].insert(c2);
                    }
                }
                cols[c2 as usize] = (!new.is_empty()).then_some(new);
            }
            for (row, _) in col.iter() {
                row_cols[row as usize].remove(&(c as u32));
            }
            cols[c] = None;
            units.push((r, c as u32));
            if keep_pivots {
                pivot_cols.push(col);
            }
        }
        if units.len() == before {
            break;
        }
    }
    let rest: Vec<(u32, SparseVec)> = cols
        .into_iter()
        .enumerate()
        .filter_map(|(j, c)| c.map(|c| (j as u32, c)))
        .collect();
    let rows: BTreeSet<u32> = rest.iter().flat_map(|(_, c)| c.iter().map(|(r, _)| r)).collect();
    Residual {
        units,
        pivot_cols,
        cols: rest,
        rows: rows.into_iter().collect(),
    }
}

/// Nonzero elementary divisors of a sparse matrix, ascending.
pub fn elementary_divisors(cols: Vec<SparseVec>, nrows: usize) -> Vec<Int> {
    let res = eliminate_units(cols, nrows, false);
    let mut out = vec![Int::ONE; res.units.len()];
    if !res.cols.is_empty() {
        let snf = smith_normal_form(&res.dense());
        out.extend(snf.divisors().into_iter().filter(|d| !d.is_zero()));
    }
    out.sort();
    out
}

/// Prime-power decomposition of invariant factors.
pub fn prime_powers(factors: &[Int]) -> Vec<Int> {
    let mut out = Vec::new();
    for d in factors {
        if d.is_zero() || d.is_unit() {
            continue;
        }
        match d.to_i64() {
            Some(mut n) => {
                let mut p = 2i64;
                while p * p <= n {
                    if n % p == 0 {
                        let mut q = 1i64;
                        while n % p == 0 {
                            n /= p;
                            q *= p;
                        }
                        out.push(Int::from(q));
                    }
                    p += 1;
                }
                if n > 1 {
                    out.push(Int::from(n));
                }
            }
            // beyond i64 the factor is reported whole
            None => out.push(d.abs()),
        }
    }
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> Matrix {
        rows.iter().map(|r| r.iter().map(|&x| Int::from(x)).collect()).collect()
    }

    fn check(a: &Matrix) -> Snf {
        let s = smith_normal_form(a);
        assert_eq!(matmul(&matmul(&s.u, a), &s.v), s.s);
        assert_eq!(matmul(&s.u, &s.u_inv), identity(a.len()));
        let d = s.divisors();
        for i in 0..s.s.len() {
            for j in 0..s.s[i].len() {
                if i != j {
                    assert!(s.s[i][j].is_zero());
                }
            }
        }
        for w in d.windows(2) {
            assert!(w[1].is_zero() || w[1].div_exact(&w[0]).is_some());
        }
        s
    }

    #[test]
    fn documented_divisors() {
        assert_eq!(check(&m(&[&[2, 0], &[0, 3]])).divisors(), vec![Int::from(1), Int::from(6)]);
        assert!(check(&m(&[&[0, 0], &[0, 0]])).divisors().iter().all(Int::is_zero));
        assert!(check(&identity(3)).divisors().iter().all(Int::is_one));
    }

    #[test]
    fn rectangular_and_sparse_agree() {
        let a = m(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16], &[1, 1, 1]]);
        let dense: Vec<Int> = check(&a).divisors().into_iter().filter(|d| !d.is_zero()).collect();
        let cols: Vec<SparseVec> = (0..3)
            .map(|j| SparseVec::from_entries((0..4).map(|i| (i as u32, a[i][j].clone()))))
            .collect();
        assert_eq!(elementary_divisors(cols, 4), dense);
    }

    #[test]
    fn prime_power_split() {
        let f = prime_powers(&[Int::from(1), Int::from(12), Int::from(0), Int::from(5)]);
        assert_eq!(f, vec![Int::from(3), Int::from(4), Int::from(5)]);
    }
}
