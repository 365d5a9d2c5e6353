use rayon::prelude::*;

use super::{PairMap, Rational};
use crate::coned_off::ConedOffGraph;
use crate::error::{Error, Result};
use crate::geometry::CosetVertex;
use crate::presentation::Element;

/// Image of one edge `[v, w]` (oriented from the lower id) as a path of target vertex ids.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeImage {
    pub edge: (u32, u32),
    pub path: Vec<u32>,
    pub cone_vertices: usize,
}

impl EdgeImage {
    pub fn len(&self) -> usize {
        self.path.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.path.len() <= 1
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConedOffImage {
    pub edges: Vec<EdgeImage>,
    pub max_length: usize,
    /// `L̂ = max{L + C, M + 1}`.
    pub bound: Rational,
    /// Edges whose path is too long or changes the number of cone vertices.
    pub violations: Vec<(u32, u32)>,
}

fn geodesic_path(f: &PairMap, dst: &ConedOffGraph, x: &Element, y: &Element) -> Result<Vec<u32>> {
    let dm = &f.dst.model;
    let margin = |e: &Element| Error::Margin(format!("path vertex {} leaves the target ball", dm.render(e)));
    let start = dst.trunc.ball.index_of(x).ok_or_else(|| margin(x))?;
    let word = dm.geodesic(&dm.mul(&dm.inverse(x), y)).ok_or_else(|| {
        Error::Margin(format!("no geodesic from {} to {} within the caps", dm.render(x), dm.render(y)))
    })?;
    let mut path = vec![start as u32];
    let mut cur = x.clone();
    for s in word {
        cur = dm.mul(&cur, &dm.generators()[s]);
        path.push(dst.trunc.ball.index_of(&cur).ok_or_else(|| margin(&cur))? as u32);
    }
    Ok(path)
}

/// A nearest point of the coset `b` to `x`, searched within `limit`.
fn nearest_in(f: &PairMap, x: &Element, b: &CosetVertex, limit: usize) -> Result<Option<Element>> {
    let ball = f.dst.model.ball(limit)?;
    Ok(ball.elements().iter().find_map(|s| {
        let u = f.dst.model.mul(x, s);
        (f.dst.key(b.collection_index, &u) == b.key).then_some(u)
    }))
}

/// The cellular extension of `f₁ ⊔ f₂` to coned-off graphs: group edges go to geodesics,
/// a cone edge `(g, A)` to a geodesic from `f₁(g)` to a nearest `u ∈ f₂(A)` followed by
/// the edge to `f₂(A)`.
pub fn induced_coned_off_map(f: &PairMap, src: &ConedOffGraph, dst: &ConedOffGraph) -> Result<ConedOffImage> {
    if !f.src.same_as(&src.pair) || !f.dst.same_as(&dst.pair) {
        return Err(Error::Precondition("graphs are not over the map's pairs".into()));
    }
    if src.radius > f.radius() {
        return Err(Error::Margin(format!(
            "map is tabulated on radius {}, the graph has radius {}",
            f.radius(),
            src.radius
        )));
    }
    let n = src.group_count();
    let limit = f.constants.m.floor().to_integer().max(0) as usize;
    let group = |v: u32| -> &Element { f.image(src.trunc.ball.element(v as usize)).expect("inside the table") };
    let map_edge = |&(a, b): &(u32, u32)| -> Result<EdgeImage> {
        let path = if (b as usize) < n {
            geodesic_path(f, dst, group(a), group(b))?
        } else {
            let x = group(a);
            let cone = &src.trunc.cones[b as usize - n];
            let img = f.cone_image(cone).ok_or_else(|| Error::Margin("cone outside the table".into()))?;
            let u = nearest_in(f, x, img, limit)?.ok_or_else(|| {
                Error::Precondition(format!(
                    "no point of the image cone within M of {}",
                    f.dst.model.render(x)
                ))
            })?;
            let mut path = geodesic_path(f, dst, x, &u)?;
            let c = dst.trunc.cone_id(img).ok_or_else(|| {
                Error::Margin(format!(
                    "image cone of {} is not in the target graph",
                    f.src.model.render(&cone.representative)
                ))
            })?;
            path.push((dst.group_count() + c) as u32);
            path
        };
        if let Some(w) = path.windows(2).find(|w| !dst.has_edge(w[0] as usize, w[1] as usize)) {
            return Err(Error::Invalid(format!("{}–{} is not an edge of the target", w[0], w[1])));
        }
        let cone_vertices = path.iter().filter(|&&v| dst.is_cone(v as usize)).count();
        Ok(EdgeImage {
            edge: (a, b),
            path,
            cone_vertices,
        })
    };
    let all: Vec<(u32, u32)> = src.cayley_edges.iter().chain(&src.cone_edges).copied().collect();
    let edges: Vec<EdgeImage> = all.par_iter().map(map_edge).collect::<Result<_>>()?;
    let bound = f.constants.l_hat();
    let violations = edges
        .iter()
        .filter(|e| {
            let expected = usize::from((e.edge.1 as usize) >= n);
            Rational::from_integer(e.len() as i64) > bound || e.cone_vertices != expected
        })
        .map(|e| e.edge)
        .collect();
    Ok(ConedOffImage {
        max_length: edges.iter().map(EdgeImage::len).max().unwrap_or(0),
        edges,
        bound,
        violations,
    })
}
