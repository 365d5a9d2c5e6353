use std::collections::VecDeque;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::geometry::{PairModel, Truncation};

/// `Γ̂(G, 𝒫, S)` restricted to `ball(R)` and the cones meeting it.
///
/// Vertex ids: group vertices `0..n` in ball order, then cone `c` as `n + c`.
#[derive(Clone, Debug)]
pub struct ConedOffGraph {
    pub pair: PairModel,
    pub radius: usize,
    pub trunc: Truncation,
    adj: Vec<Vec<u32>>,
    pub cayley_edges: Vec<(u32, u32)>,
    pub cone_edges: Vec<(u32, u32)>,
}

pub fn build_coned_off(pair: &PairModel, radius: usize) -> Result<ConedOffGraph> {
    if radius < 1 {
        return Err(Error::Precondition("the coned-off graph needs radius ≥ 1".into()));
    }
    let trunc = Truncation::new(pair, radius)?;
    let n = trunc.ball.len();
    let model = &pair.model;
    let mut cayley_edges = Vec::new();
    for (i, g) in trunc.ball.elements().iter().enumerate() {
        for s in model.generators() {
            if let Some(j) = trunc.ball.index_of(&model.mul(g, s)) {
                if i < j {
                    cayley_edges.push((i as u32, j as u32));
                }
            }
        }
    }
    cayley_edges.sort_unstable();
    cayley_edges.dedup();
    let mut cone_edges = Vec::new();
    for (g, row) in trunc.membership.iter().enumerate() {
        for &c in row {
            cone_edges.push((g as u32, (n + c as usize) as u32));
        }
    }
    cone_edges.sort_unstable();
    cone_edges.dedup();
    let mut adj = vec![Vec::new(); n + trunc.cones.len()];
    for &(a, b) in cayley_edges.iter().chain(&cone_edges) {
        adj[a as usize].push(b);
        adj[b as usize].push(a);
    }
    for nb in &mut adj {
        nb.sort_unstable();
    }
    Ok(ConedOffGraph {
        pair: pair.clone(),
        radius,
        trunc,
        adj,
        cayley_edges,
        cone_edges,
    })
}

impl ConedOffGraph {
    pub fn group_count(&self) -> usize {
        self.trunc.ball.len()
    }

    pub fn cone_count(&self) -> usize {
        self.trunc.cones.len()
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.cayley_edges.len() + self.cone_edges.len()
    }

    pub fn is_cone(&self, v: usize) -> bool {
        v >= self.group_count()
    }

    pub fn neighbors(&self, v: usize) -> &[u32] {
        &self.adj[v]
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.adj[a].binary_search(&(b as u32)).is_ok()
    }

    /// Hop distances from `src` inside the truncation; `u32::MAX` if unreachable.
    pub fn hop_distances(&self, src: usize, group_only: bool) -> Vec<u32> {
        let mut d = vec![u32::MAX; self.vertex_count()];
        d[src] = 0;
        let mut q = VecDeque::from([src]);
        while let Some(v) = q.pop_front() {
            for &w in &self.adj[v] {
                let w = w as usize;
                if group_only && self.is_cone(w) {
                    continue;
                }
                if d[w] == u32::MAX {
                    d[w] = d[v] + 1;
                    q.push_back(w);
                }
            }
        }
        d
    }

    /// A shortest path `from → to`, optionally avoiding cone vertices.
    pub fn shortest_path(&self, from: usize, to: usize, group_only: bool) -> Option<Vec<usize>> {
        let d = self.hop_distances(to, group_only);
        if d[from] == u32::MAX {
            return None;
        }
        let mut path = vec![from];
        let mut v = from;
        while v != to {
            v = self.adj[v]
                .iter()
                .map(|&w| w as usize)
                .filter(|&w| !(group_only && self.is_cone(w)))
                .find(|&w| d[w] + 1 == d[v])
                .expect("distance labels are consistent");
            path.push(v);
        }
        Some(path)
    }

    pub fn label(&self, v: usize) -> String {
        let model = &self.pair.model;
        if self.is_cone(v) {
            let c = &self.trunc.cones[v - self.group_count()];
            let name = &self.pair.collection[c.collection_index].name;
            format!("{}{name}", model.render(&c.representative))
        } else {
            model.render(self.trunc.ball.element(v))
        }
    }

    /// Vertex lines then edge lines, in id order.
    pub fn export(&self) -> String {
        let mut out = String::from("# conepair coned-off v1\n");
        let _ = writeln!(
            out,
            "radius {} group_vertices {} cone_vertices {} edges {}",
            self.radius,
            self.group_count(),
            self.cone_count(),
            self.edge_count()
        );
        let model = &self.pair.model;
        for (i, g) in self.trunc.ball.elements().iter().enumerate() {
            let _ = writeln!(out, "v {i} group {} {}", model.render(g), self.trunc.ball.length(i));
        }
        for (c, cone) in self.trunc.cones.iter().enumerate() {
            let _ = writeln!(
                out,
                "v {} cone {} {}",
                self.group_count() + c,
                cone.collection_index,
                model.render(&cone.representative)
            );
        }
        for &(a, b) in &self.cayley_edges {
            let _ = writeln!(out, "e {a} {b}");
        }
        for &(a, b) in &self.cone_edges {
            let _ = writeln!(out, "e {a} {b}");
        }
        out
    }
}
