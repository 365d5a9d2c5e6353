use std::collections::BTreeMap;

use rayon::prelude::*;

use super::graph::ConedOffGraph;
use crate::error::{Error, Result};
use crate::geometry::CosetKey;
use crate::presentation::Element;

/// A vertex of `Γ̂` up to the truncation: a group element or a coset `(index, key)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CanonVertex {
    Group(Element),
    Cone(usize, CosetKey),
}

/// A simple edge loop with at most one cone vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniconeLoop {
    /// Cyclic vertex sequence (graph ids).
    pub vertices: Vec<usize>,
    pub cone_count: usize,
    /// Least rotation/reversal after translating a group vertex to the identity.
    pub canonical: Vec<CanonVertex>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LoopMode {
    /// Every loop through the identity, once per direction pair.
    BasedAtIdentity,
    /// One loop per orbit under left translation, rotation and reversal.
    OrbitReps,
}

/// Simple cycles with `min_len ≤ length ≤ max_len` and at most `max_cones` cone vertices.
///
/// Each cycle is reported once, starting at its least vertex (always a group vertex) and
/// oriented so that the second vertex is smaller than the last. `allowed` restricts the
/// vertex set; `starts` restricts the least vertex.
pub fn simple_cycles(
    graph: &ConedOffGraph,
    min_len: usize,
    max_len: usize,
    max_cones: usize,
    allowed: Option<&[bool]>,
    starts: Option<&[usize]>,
) -> Vec<Vec<usize>> {
    if max_len < 3 || min_len > max_len {
        return Vec::new();
    }
    let ok = |v: usize| allowed.is_none_or(|a| a[v]);
    let all: Vec<usize>;
    let starts = match starts {
        Some(s) => s,
        None => {
            all = (0..graph.group_count()).collect();
            &all
        }
    };
    starts
        .par_iter()
        .filter(|&&s| ok(s))
        .map(|&s| {
            let dist = graph.hop_distances(s, false);
            let mut out = Vec::new();
            let mut on_path = vec![false; graph.vertex_count()];
            let mut path = vec![s];
            on_path[s] = true;
            dfs(graph, &ok, &dist, min_len, max_len, max_cones, 0, &mut path, &mut on_path, &mut out);
            out
        })
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect()
}

#[allow(clippy::too_many_arguments)]
fn dfs(
    graph: &ConedOffGraph,
    ok: &impl Fn(usize) -> bool,
    dist: &[u32],
    min_len: usize,
    max_len: usize,
    max_cones: usize,
    cones: usize,
    path: &mut Vec<usize>,
    on_path: &mut [bool],
    out: &mut Vec<Vec<usize>>,
) {
    let s = path[0];
    let k = path.len();
    let last = path[k - 1];
    if k >= min_len.max(3) && graph.has_edge(last, s) && path[1] < last {
        out.push(path.clone());
    }
    if k == max_len {
        return;
    }
    for &w in graph.neighbors(last) {
        let w = w as usize;
        if w <= s || on_path[w] || !ok(w) {
            continue;
        }
        let c = cones + usize::from(graph.is_cone(w));
        if c > max_cones || dist[w] as usize > max_len - k {
            continue;
        }
        on_path[w] = true;
        path.push(w);
        dfs(graph, ok, dist, min_len, max_len, max_cones, c, path, on_path, out);
        path.pop();
        on_path[w] = false;
    }
}

fn canon_vertex(graph: &ConedOffGraph, shift: &Element, v: usize) -> CanonVertex {
    let pair = &graph.pair;
    let model = &pair.model;
    if graph.is_cone(v) {
        let c = &graph.trunc.cones[v - graph.group_count()];
        let rep = model.mul(shift, &c.representative);
        CanonVertex::Cone(c.collection_index, pair.key(c.collection_index, &rep))
    } else {
        CanonVertex::Group(model.mul(shift, graph.trunc.ball.element(v)))
    }
}

/// Canonical form of a cyclic vertex sequence under rotation, reversal and left translation.
pub fn canonical_form(graph: &ConedOffGraph, vertices: &[usize]) -> Vec<CanonVertex> {
    let l = vertices.len();
    let model = &graph.pair.model;
    let mut best: Option<Vec<CanonVertex>> = None;
    for dir in [false, true] {
        for r in 0..l {
            let seq: Vec<usize> = (0..l)
                .map(|i| if dir { vertices[(r + l - i) % l] } else { vertices[(r + i) % l] })
                .collect();
            if graph.is_cone(seq[0]) {
                continue;
            }
            let shift = model.inverse(graph.trunc.ball.element(seq[0]));
            let form: Vec<CanonVertex> = seq.iter().map(|&v| canon_vertex(graph, &shift, v)).collect();
            if best.as_ref().is_none_or(|b| form < *b) {
                best = Some(form);
            }
        }
    }
    best.expect("a loop has a group vertex")
}

fn make_loop(graph: &ConedOffGraph, vertices: Vec<usize>) -> UniconeLoop {
    let cone_count = vertices.iter().filter(|&&v| graph.is_cone(v)).count();
    let canonical = canonical_form(graph, &vertices);
    UniconeLoop {
        vertices,
        cone_count,
        canonical,
    }
}

/// Unicone loops of length exactly `l`.
///
/// Loops are simple cycles: a closed walk that repeats a vertex splits into shorter
/// closed walks with no more cone vertices, so simple cycles carry all the information
/// needed for attaching cells.
pub fn enumerate_unicone_loops(graph: &ConedOffGraph, l: usize, mode: LoopMode) -> Result<Vec<UniconeLoop>> {
    if l < 3 {
        return Err(Error::Precondition("loops have length ≥ 3".into()));
    }
    // group vertices of a loop through e lie within l − 2 of e
    if graph.radius + 2 < l {
        return Err(Error::Margin(format!(
            "loops of length {l} through the identity need radius ≥ {}, got {}",
            l - 2,
            graph.radius
        )));
    }
    let based = simple_cycles(graph, l, l, 1, None, Some(&[0]));
    match mode {
        LoopMode::BasedAtIdentity => Ok(based.into_iter().map(|v| make_loop(graph, v)).collect()),
        LoopMode::OrbitReps => {
            let mut reps: BTreeMap<Vec<CanonVertex>, UniconeLoop> = BTreeMap::new();
            for v in based {
                let lp = make_loop(graph, v);
                reps.entry(lp.canonical.clone()).or_insert(lp);
            }
            Ok(reps.into_values().collect())
        }
    }
}

/// `|{orbits of unicone loops of length l}|`.
pub fn count_loop_orbits(graph: &ConedOffGraph, l: usize) -> Result<usize> {
    Ok(enumerate_unicone_loops(graph, l, LoopMode::OrbitReps)?.len())
}
