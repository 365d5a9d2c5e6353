use std::collections::BTreeSet;

use super::checks::{cone_hdist, window};
use super::{PairMap, Rational};
use crate::error::Result;
use crate::geometry::CosetVertex;

/// Pairs `(A, B)` of cone vertices with truncated `hdist(q(A), B) < M`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QDotRelation {
    pub src_cones: Vec<CosetVertex>,
    /// Target cones: those meeting the trusted target ball, then any other candidates.
    pub dst_cones: Vec<CosetVertex>,
    /// Whether each target cone meets the trusted target ball.
    pub dst_in_window: Vec<bool>,
    /// Indices into `src_cones` and `dst_cones`, sorted.
    pub pairs: Vec<(usize, usize)>,
    pub source_surjective: bool,
    pub target_surjective: bool,
    pub bijective: bool,
}

impl QDotRelation {
    fn degrees(&self) -> (Vec<usize>, Vec<usize>) {
        let mut s = vec![0; self.src_cones.len()];
        let mut t = vec![0; self.dst_cones.len()];
        for &(a, b) in &self.pairs {
            s[a] += 1;
            t[b] += 1;
        }
        (s, t)
    }

    fn flags(&self) -> (bool, bool, bool) {
        let (s, t) = self.degrees();
        let target = |want: fn(usize) -> bool| {
            t.iter()
                .zip(&self.dst_in_window)
                .all(|(&d, &w)| !w || want(d))
        };
        let src_surj = s.iter().all(|&d| d >= 1);
        let dst_surj = target(|d| d >= 1);
        let bij = s.iter().all(|&d| d == 1) && target(|d| d == 1) && t.iter().all(|&d| d <= 1);
        (src_surj, dst_surj, bij)
    }

    /// Whether the stored flags match the pair set.
    pub fn consistent(&self) -> bool {
        self.flags() == (self.source_surjective, self.target_surjective, self.bijective)
    }

    pub fn related(&self, a: &CosetVertex) -> Vec<&CosetVertex> {
        let Some(i) = self.src_cones.iter().position(|c| c == a) else {
            return Vec::new();
        };
        self.pairs
            .iter()
            .filter(|p| p.0 == i)
            .map(|p| &self.dst_cones[p.1])
            .collect()
    }
}

/// `q̇` for `q = f₁`, evaluated on the cones meeting `ball(radius)` and the target cones
/// meeting the ball trusted for `q`'s image.
pub fn build_qdot(q: &PairMap, m: Rational, radius: usize) -> Result<QDotRelation> {
    let win = window(q, radius)?;
    let n = q.trunc.ball.prefix(radius);
    let table = q.group_table();
    let dst = &q.dst;
    let ceil = m.ceil().to_integer();
    let limit = (ceil - 1).max(0) as usize;
    let mut src_cones = Vec::new();
    let mut images = Vec::new();
    for (c, ms) in q.trunc.members.iter().enumerate() {
        let imgs: Vec<_> = ms
            .iter()
            .filter(|&&g| (g as usize) < n)
            .map(|&g| table[g as usize].clone())
            .collect();
        if !imgs.is_empty() {
            src_cones.push(q.trunc.cones[c].clone());
            images.push(imgs);
        }
    }
    // a partner of A lies within M of q(a) for every a ∈ A; the first image suffices
    let probe = dst.model.ball(limit)?;
    let mut candidates: Vec<BTreeSet<CosetVertex>> = Vec::with_capacity(images.len());
    for imgs in &images {
        let mut set = BTreeSet::new();
        if ceil > 0 {
            for b in probe.elements() {
                let x = dst.model.mul(&imgs[0], b);
                for j in 0..dst.len() {
                    set.insert(dst.coset(j, &x));
                }
            }
        }
        candidates.push(set);
    }
    let mut dst_cones: Vec<CosetVertex> = win.trunc.cones.clone();
    let mut dst_in_window = vec![true; dst_cones.len()];
    let mut extra: BTreeSet<CosetVertex> = BTreeSet::new();
    for set in &candidates {
        for b in set {
            if win.trunc.cone_id(b).is_none() {
                extra.insert(b.clone());
            }
        }
    }
    dst_in_window.extend(std::iter::repeat_n(false, extra.len()));
    dst_cones.extend(extra);
    let index_of = |b: &CosetVertex| dst_cones.iter().position(|c| c == b).expect("listed");
    let mut pairs = Vec::new();
    for (a, (imgs, set)) in images.iter().zip(&candidates).enumerate() {
        for b in set {
            let (d, _) = cone_hdist(dst, imgs, b, &win, limit)?;
            if d.exact().is_some() && Rational::from_integer(d.value() as i64) < m {
                pairs.push((a, index_of(b)));
            }
        }
    }
    pairs.sort_unstable();
    let mut rel = QDotRelation {
        src_cones,
        dst_cones,
        dst_in_window,
        pairs,
        source_surjective: false,
        target_surjective: false,
        bijective: false,
    };
    (rel.source_surjective, rel.target_surjective, rel.bijective) = rel.flags();
    Ok(rel)
}
