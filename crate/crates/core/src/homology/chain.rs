use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::Arc;

use super::int::Int;
use super::sparse::SparseVec;
use crate::coned_off::TwoComplex;
use crate::error::{Error, Result};

/// A finite simplicial complex; simplices are sorted vertex tuples, each dimension
/// in lexicographic order.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SimplicialComplex {
    dims: Vec<Vec<Vec<u32>>>,
    index: Vec<HashMap<Vec<u32>, u32>>,
}

impl SimplicialComplex {
    /// From per-dimension lists; sorts them and checks downward closure.
    pub fn from_dims(mut dims: Vec<Vec<Vec<u32>>>) -> Result<Self> {
        for (k, d) in dims.iter_mut().enumerate() {
            for s in d.iter_mut() {
                s.sort_unstable();
                if s.len() != k + 1 || s.windows(2).any(|w| w[0] == w[1]) {
                    return Err(Error::Invalid(format!("{s:?} is not a {k}-simplex")));
                }
            }
            d.sort();
            d.dedup();
        }
        while dims.last().is_some_and(Vec::is_empty) {
            dims.pop();
        }
        let cx = Self::indexed(dims);
        if let Some(s) = cx.closure_violation() {
            return Err(Error::Invalid(format!("face of {s:?} is missing")));
        }
        Ok(cx)
    }

    fn indexed(dims: Vec<Vec<Vec<u32>>>) -> Self {
        let index = dims
            .iter()
            .map(|d| d.iter().enumerate().map(|(i, s)| (s.clone(), i as u32)).collect())
            .collect();
        SimplicialComplex { dims, index }
    }

    /// All faces of the given simplices, capped at `dim_cap` when present.
    pub fn from_maximal(maximal: &[Vec<usize>], dim_cap: Option<usize>) -> Self {
        let mut sets: Vec<BTreeSet<Vec<u32>>> = Vec::new();
        for m in maximal {
            let mut m: Vec<u32> = m.iter().map(|&v| v as u32).collect();
            m.sort_unstable();
            m.dedup();
            let top = dim_cap.map_or(m.len(), |d| m.len().min(d + 1));
            for size in 1..=top {
                if sets.len() < size {
                    sets.resize(size, BTreeSet::new());
                }
                for f in itertools::Itertools::combinations(m.iter().copied(), size) {
                    sets[size - 1].insert(f);
                }
            }
        }
        Self::indexed(sets.into_iter().map(|s| s.into_iter().collect()).collect())
    }

    /// Top dimension, `None` when empty.
    pub fn dim(&self) -> Option<usize> {
        self.dims.len().checked_sub(1)
    }

    pub fn simplices(&self, k: usize) -> &[Vec<u32>] {
        self.dims.get(k).map_or(&[], Vec::as_slice)
    }

    pub fn count(&self, k: usize) -> usize {
        self.simplices(k).len()
    }

    pub fn total(&self) -> usize {
        self.dims.iter().map(Vec::len).sum()
    }

    pub fn index_of(&self, s: &[u32]) -> Option<u32> {
        self.index.get(s.len().checked_sub(1)?)?.get(s).copied()
    }

    pub fn contains(&self, s: &[u32]) -> bool {
        self.index_of(s).is_some()
    }

    /// First simplex with a missing facet.
    pub fn closure_violation(&self) -> Option<Vec<u32>> {
        for k in 1..self.dims.len() {
            for s in &self.dims[k] {
                for j in 0..s.len() {
                    let mut f = s.clone();
                    f.remove(j);
                    if !self.contains(&f) {
                        return Some(s.clone());
                    }
                }
            }
        }
        None
    }

    /// Euler characteristic.
    pub fn euler(&self) -> i64 {
        self.dims
            .iter()
            .enumerate()
            .map(|(k, d)| if k % 2 == 0 { d.len() as i64 } else { -(d.len() as i64) })
            .sum()
    }
}

/// Coefficient ring for homology.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Coefficients {
    Z,
    Q,
    Zp(u64),
}

impl fmt::Display for Coefficients {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coefficients::Z => write!(f, "Z"),
            Coefficients::Q => write!(f, "Q"),
            Coefficients::Zp(p) => write!(f, "Z{p}"),
        }
    }
}

impl std::str::FromStr for Coefficients {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "Z" => Ok(Coefficients::Z),
            "Q" => Ok(Coefficients::Q),
            _ => {
                let p: u64 = s
                    .strip_prefix('Z')
                    .and_then(|p| p.strip_prefix('_').unwrap_or(p).parse().ok())
                    .ok_or_else(|| Error::Invalid(format!("unknown coefficients `{s}`")))?;
                if p < 2 || (2..p).take_while(|d| d * d <= p).any(|d| p.is_multiple_of(d)) {
                    return Err(Error::Invalid(format!("{p} is not prime")));
                }
                Ok(Coefficients::Zp(p))
            }
        }
    }
}

/// Integer chain complex: basis sizes and boundary columns.
#[derive(Clone, Debug)]
pub struct ChainComplex {
    pub coefficients: Coefficients,
    sizes: Vec<usize>,
    /// `boundaries[k]`: columns of `∂_k` for `k ≥ 1`; `boundaries[0]` is empty.
    boundaries: Arc<Vec<Vec<SparseVec>>>,
}

/// Signed facets of a sorted tuple.
pub(crate) fn facets(s: &[u32]) -> impl Iterator<Item = (Vec<u32>, Int)> + '_ {
    (0..s.len()).map(move |j| {
        let mut f = s.to_vec();
        f.remove(j);
        (f, Int::from(if j % 2 == 0 { 1 } else { -1 }))
    })
}

impl ChainComplex {
    pub fn from_parts(sizes: Vec<usize>, boundaries: Vec<Vec<SparseVec>>, coefficients: Coefficients) -> Self {
        ChainComplex {
            coefficients,
            sizes,
            boundaries: Arc::new(boundaries),
        }
    }

    pub fn simplicial(cx: &SimplicialComplex, coefficients: Coefficients) -> Self {
        let top = cx.dims.len();
        let mut boundaries = vec![Vec::new()];
        for k in 1..top {
            boundaries.push(
                cx.simplices(k)
                    .iter()
                    .map(|s| {
                        SparseVec::from_entries(
                            facets(s).map(|(f, sign)| (cx.index_of(&f).expect("closed complex"), sign)),
                        )
                    })
                    .collect(),
            );
        }
        Self::from_parts((0..top).map(|k| cx.count(k)).collect(), boundaries, coefficients)
    }

    /// Cellular chains of a 2-complex: edges oriented from the smaller vertex id,
    /// faces by their cyclic vertex order.
    pub fn cellular(cx: &TwoComplex, coefficients: Coefficients) -> Self {
        let g = &cx.skeleton;
        let mut edges: Vec<(u32, u32)> = (0..g.vertex_count())
            .flat_map(|a| g.neighbors(a).iter().map(move |&b| (a as u32, b)))
            .filter(|(a, b)| a < b)
            .collect();
        edges.sort_unstable();
        let eid: HashMap<(u32, u32), u32> = edges.iter().enumerate().map(|(i, &e)| (e, i as u32)).collect();
        let d1 = edges
            .iter()
            .map(|&(a, b)| SparseVec::from_entries([(a, Int::from(-1)), (b, Int::ONE)]))
            .collect();
        let d2 = cx
            .faces
            .iter()
            .map(|f| {
                let n = f.len();
                SparseVec::from_entries((0..n).map(|i| {
                    let (a, b) = (f[i] as u32, f[(i + 1) % n] as u32);
                    let sign = Int::from(if a < b { 1 } else { -1 });
                    (eid[&(a.min(b), a.max(b))], sign)
                }))
            })
            .collect();
        let mut sizes = vec![g.vertex_count(), edges.len()];
        let mut boundaries = vec![Vec::new(), d1];
        if !cx.faces.is_empty() {
            sizes.push(cx.faces.len());
            boundaries.push(d2);
        }
        Self::from_parts(sizes, boundaries, coefficients)
    }

    pub fn with_coefficients(&self, coefficients: Coefficients) -> Self {
        ChainComplex {
            coefficients,
            ..self.clone()
        }
    }

    /// Number of degrees present.
    pub fn len(&self) -> usize {
        self.sizes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sizes.is_empty()
    }

    /// Rank of `C_k`; zero beyond the top.
    pub fn size(&self, k: usize) -> usize {
        self.sizes.get(k).copied().unwrap_or(0)
    }

    /// Columns of `∂_k`; empty for `k = 0` and beyond the top.
    pub fn boundary(&self, k: usize) -> &[SparseVec] {
        self.boundaries.get(k).map_or(&[], Vec::as_slice)
    }

    /// `∂_k`, with the augmentation `C_0 → Z` as `∂_0` when `reduced`.
    pub fn boundary_cols(&self, k: usize, reduced: bool) -> Vec<SparseVec> {
        if k == 0 && reduced {
            return (0..self.size(0)).map(|_| SparseVec::unit(0)).collect();
        }
        if k == 0 {
            return vec![SparseVec::new(); self.size(0)];
        }
        self.boundary(k).to_vec()
    }

    /// Row count of `∂_k`.
    pub fn target_size(&self, k: usize, reduced: bool) -> usize {
        match k {
            0 => usize::from(reduced),
            _ => self.size(k - 1),
        }
    }

    /// `∂_{k−1} ∘ ∂_k = 0` for every degree, checked exactly.
    pub fn check_dd(&self) -> std::result::Result<(), (usize, usize)> {
        for k in 2..self.len() {
            let lower = self.boundary(k - 1);
            for (j, col) in self.boundary(k).iter().enumerate() {
                let mut acc = SparseVec::new();
                for (i, a) in col.iter() {
                    acc = acc.axpy(a, &lower[i as usize]);
                }
                if !acc.is_empty() {
                    return Err((k, j));
                }
            }
        }
        Ok(())
    }

    pub fn apply_boundary(&self, k: usize, chain: &SparseVec) -> SparseVec {
        let cols = self.boundary(k);
        chain.iter().fold(SparseVec::new(), |acc, (i, a)| acc.axpy(a, &cols[i as usize]))
    }
}
