use std::collections::{HashMap, VecDeque};

use super::graph::ConedOffGraph;
use super::loops::simple_cycles;
use crate::error::{Error, Result};
use crate::presentation::{BackendHint, GroupSpec, Letter, Word};

/// `Γ̂_l` on a truncation: the graph plus a 2-cell on every unicone loop of length `< l`
/// lying inside it.
#[derive(Clone, Debug)]
pub struct TwoComplex {
    pub skeleton: ConedOffGraph,
    pub l: usize,
    /// Face boundaries as cyclic vertex sequences.
    pub faces: Vec<Vec<usize>>,
}

pub fn attach_unicone_cells(graph: &ConedOffGraph, l: usize) -> Result<TwoComplex> {
    // a loop of length l − 1 through e reaches distance l − 3
    if l > 3 && graph.radius + 3 < l {
        return Err(Error::Margin(format!(
            "cells on loops of length {} need radius ≥ {}, got {}",
            l - 1,
            l - 3,
            graph.radius
        )));
    }
    let faces = if l <= 3 {
        Vec::new()
    } else {
        simple_cycles(graph, 3, l - 1, 1, None, None)
    };
    Ok(TwoComplex {
        skeleton: graph.clone(),
        l,
        faces,
    })
}

/// `π₁` of a 2-complex: generators are the edges off a breadth-first spanning tree.
#[derive(Clone, Debug)]
pub struct Pi1Presentation {
    pub spec: GroupSpec,
    /// Generator of each non-tree edge `(a, b)` with `a < b`, oriented `a → b`.
    edge_gen: HashMap<(u32, u32), usize>,
}

impl Pi1Presentation {
    pub fn rank(&self) -> usize {
        self.spec.rank()
    }

    /// The word of a closed edge path (cyclic vertex sequence).
    pub fn loop_word(&self, vertices: &[usize]) -> Word {
        let n = vertices.len();
        let mut w = Vec::new();
        for i in 0..n {
            let (a, b) = (vertices[i] as u32, vertices[(i + 1) % n] as u32);
            let key = (a.min(b), a.max(b));
            if let Some(&g) = self.edge_gen.get(&key) {
                w.push(Letter::new(g, a > b));
            }
        }
        Word(w).freely_reduced()
    }
}

pub fn pi1_presentation(cx: &TwoComplex, base: usize) -> Result<Pi1Presentation> {
    let g = &cx.skeleton;
    let nv = g.vertex_count();
    let mut seen = vec![false; nv];
    let mut tree = std::collections::HashSet::new();
    seen[base] = true;
    let mut q = VecDeque::from([base]);
    while let Some(v) = q.pop_front() {
        for &w in g.neighbors(v) {
            let w = w as usize;
            if !seen[w] {
                seen[w] = true;
                tree.insert((v.min(w) as u32, v.max(w) as u32));
                q.push_back(w);
            }
        }
    }
    if seen.iter().any(|s| !s) {
        return Err(Error::Disconnected);
    }
    let mut edges: Vec<(u32, u32)> = g.cayley_edges.iter().chain(&g.cone_edges).copied().collect();
    edges.sort_unstable();
    let mut edge_gen = HashMap::new();
    for e in edges.into_iter().filter(|e| !tree.contains(e)) {
        let k = edge_gen.len();
        edge_gen.insert(e, k);
    }
    let rank = edge_gen.len();
    let mut p = Pi1Presentation {
        spec: GroupSpec {
            generators: (0..rank).map(|i| format!("x{i}")).collect(),
            relators: Vec::new(),
            backend: BackendHint::GenericFp,
        },
        edge_gen,
    };
    let relators: Vec<Word> = cx.faces.iter().map(|f| p.loop_word(f)).filter(|w| !w.is_empty()).collect();
    p.spec = GroupSpec::new(p.spec.generators, relators, BackendHint::GenericFp)?;
    Ok(p)
}
