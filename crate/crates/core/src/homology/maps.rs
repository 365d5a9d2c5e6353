use super::chain::SimplicialComplex;
use super::groups::HomologyResult;
use super::int::Int;
use super::sparse::SparseVec;
use crate::error::{Error, Result};

/// A vertex map, indexed by source vertex label.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SimplicialMap {
    pub vertex_map: Vec<u32>,
}

impl SimplicialMap {
    pub fn identity(n: usize) -> Self {
        SimplicialMap {
            vertex_map: (0..n as u32).collect(),
        }
    }

    pub fn apply(&self, v: u32) -> Option<u32> {
        self.vertex_map.get(v as usize).copied().filter(|&w| w != u32::MAX)
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &SimplicialMap) -> SimplicialMap {
        SimplicialMap {
            vertex_map: self
                .vertex_map
                .iter()
                .map(|&v| if v == u32::MAX { v } else { other.apply(v).unwrap_or(u32::MAX) })
                .collect(),
        }
    }

    /// Image vertex set of a simplex, sorted and deduplicated.
    pub fn image(&self, s: &[u32]) -> Result<Vec<u32>> {
        let mut t: Vec<u32> = s
            .iter()
            .map(|&v| {
                self.apply(v)
                    .ok_or_else(|| Error::Invalid(format!("vertex {v} has no image")))
            })
            .collect::<Result<_>>()?;
        t.sort_unstable();
        t.dedup();
        Ok(t)
    }

    /// Checks that every simplex of `src` maps onto a simplex of `dst`; returns the
    /// first offending source simplex.
    pub fn violation(&self, src: &SimplicialComplex, dst: &SimplicialComplex) -> Option<Vec<u32>> {
        for k in 0..=src.dim().unwrap_or(0) {
            for s in src.simplices(k) {
                match self.image(s) {
                    Ok(t) if dst.contains(&t) => {}
                    _ => return Some(s.clone()),
                }
            }
        }
        None
    }
}

/// Images of the `k`-simplices of `src` as chains of `dst`; degenerate images are zero.
pub fn chain_map(
    m: &SimplicialMap,
    src: &SimplicialComplex,
    dst: &SimplicialComplex,
    k: usize,
) -> Result<Vec<SparseVec>> {
    src.simplices(k)
        .iter()
        .map(|s| {
            let img: Vec<u32> = s
                .iter()
                .map(|&v| m.apply(v).ok_or_else(|| Error::Invalid(format!("vertex {v} has no image"))))
                .collect::<Result<_>>()?;
            let mut sorted = img.clone();
            sorted.sort_unstable();
            sorted.dedup();
            let Some(idx) = dst.index_of(&sorted) else {
                return Err(Error::Invalid(format!("image of {s:?} is not a simplex: {sorted:?}")));
            };
            if sorted.len() < img.len() {
                return Ok(SparseVec::new());
            }
            // sign of the sorting permutation by inversion count
            let mut inv = 0usize;
            for a in 0..img.len() {
                for b in a + 1..img.len() {
                    inv += usize::from(img[a] > img[b]);
                }
            }
            let sign = Int::from(if inv.is_multiple_of(2) { 1 } else { -1 });
            Ok(SparseVec::from_entries([(idx, sign)]))
        })
        .collect()
}

/// Pushes a chain through precomputed images.
pub fn push_chain(images: &[SparseVec], z: &SparseVec) -> SparseVec {
    z.iter()
        .fold(SparseVec::new(), |acc, (i, a)| acc.axpy(a, &images[i as usize]))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InducedMap {
    /// Column `j`: coordinates of the image of source generator `j`.
    pub matrix: Vec<Vec<Int>>,
    pub is_zero: bool,
    /// Source generators whose image does not bound.
    pub nonzero: Vec<usize>,
}

/// `H_i(m)` in the generator bases of `src_h` and `dst_h`.
pub fn induced_map_on_homology(
    m: &SimplicialMap,
    src: &SimplicialComplex,
    dst: &SimplicialComplex,
    src_h: &HomologyResult,
    dst_h: &HomologyResult,
) -> Result<InducedMap> {
    if src_h.degree != dst_h.degree || src_h.reduced != dst_h.reduced {
        return Err(Error::Precondition("homology degrees differ".into()));
    }
    if let Some(s) = m.violation(src, dst) {
        return Err(Error::Invalid(format!("map is not simplicial at {s:?}")));
    }
    let images = chain_map(m, src, dst, src_h.degree)?;
    let mut matrix = Vec::with_capacity(src_h.rank());
    let mut nonzero = Vec::new();
    for (j, z) in src_h.generators.iter().enumerate() {
        let fz = push_chain(&images, z);
        let coords = dst_h.class_of(&fz)?;
        let bounds = dst_h.is_boundary(&fz);
        if bounds != coords.iter().all(Int::is_zero) {
            return Err(Error::Invalid(format!(
                "class coordinates and boundary membership disagree on generator {j}"
            )));
        }
        if !bounds {
            nonzero.push(j);
        }
        matrix.push(coords);
    }
    Ok(InducedMap {
        is_zero: nonzero.is_empty(),
        matrix,
        nonzero,
    })
}
