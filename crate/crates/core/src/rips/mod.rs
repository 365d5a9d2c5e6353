//! Unicone Rips complexes on truncations.
//!
//! Vertex ids: group vertices `0..n` in ball order, then one id per cone vertex of the
//! truncation. Simplices are sorted id tuples, so cone vertices come last.

use std::collections::{BTreeSet, HashMap};
use std::fmt::Write as _;

use num_rational::Ratio;
use rayon::prelude::*;

use crate::coned_off::CanonVertex;
use crate::error::{Error, Result};
use crate::geometry::{CosetVertex, Distance, PairModel, Truncation};
use crate::homology::{SimplicialComplex, SimplicialMap};
use crate::pair_maps::PairMap;
use crate::presentation::Element;

mod probe;

pub use probe::{essential_triviality_probe, ProbeCell, ProbeLine, Schedule, TrivialityReport, Verdict};

#[derive(Clone, Debug)]
pub struct UniconeRipsComplex {
    pub pair: PairModel,
    pub alpha: usize,
    pub radius: usize,
    pub dim_cap: usize,
    pub trunc: Truncation,
    pub complex: SimplicialComplex,
    /// `false` when coset membership or distances were only partially decided.
    pub exact: bool,
}

impl UniconeRipsComplex {
    pub fn group_count(&self) -> usize {
        self.trunc.ball.len()
    }

    pub fn cone_count(&self) -> usize {
        self.trunc.cones.len()
    }

    pub fn vertex_count(&self) -> usize {
        self.group_count() + self.cone_count()
    }

    pub fn is_cone(&self, v: u32) -> bool {
        v as usize >= self.group_count()
    }

    pub fn cone(&self, v: u32) -> &CosetVertex {
        &self.trunc.cones[v as usize - self.group_count()]
    }

    pub fn vertex_id(&self, v: &RipsVertex) -> Option<u32> {
        match v {
            RipsVertex::Group(g) => self.trunc.ball.index_of(g).map(|i| i as u32),
            RipsVertex::Cone(c) => self.trunc.cone_id(c).map(|i| (self.group_count() + i) as u32),
        }
    }

    pub fn vertex(&self, v: u32) -> RipsVertex {
        if self.is_cone(v) {
            RipsVertex::Cone(self.cone(v).clone())
        } else {
            RipsVertex::Group(self.trunc.ball.element(v as usize).clone())
        }
    }

    pub fn label(&self, v: u32) -> String {
        let model = &self.pair.model;
        if self.is_cone(v) {
            let c = self.cone(v);
            format!("{}{}", model.render(&c.representative), self.pair.collection[c.collection_index].name)
        } else {
            model.render(self.trunc.ball.element(v as usize))
        }
    }

    /// Whether every group vertex of `s` lies in `ball(radius − alpha)`.
    pub fn is_reliable(&self, s: &[u32]) -> bool {
        let r = self.radius.saturating_sub(self.alpha) as u32;
        s.iter()
            .all(|&v| self.is_cone(v) || self.trunc.ball.length(v as usize) <= r)
    }

    /// Subcomplex of simplices inside the reliable region, same vertex ids.
    pub fn reliable_subcomplex(&self) -> SimplicialComplex {
        let dims = (0..=self.complex.dim().unwrap_or(0))
            .map(|k| {
                self.complex
                    .simplices(k)
                    .iter()
                    .filter(|s| self.is_reliable(s))
                    .cloned()
                    .collect()
            })
            .collect();
        SimplicialComplex::from_dims(dims).expect("a filter by vertices keeps faces")
    }

    /// Vertex table, then one simplex per line, dimension-major.
    pub fn export(&self) -> String {
        let mut out = format!(
            "# conepair rips v1\nalpha {}\nradius {}\ndim_cap {}\nexact {}\n",
            self.alpha, self.radius, self.dim_cap, self.exact
        );
        for v in 0..self.vertex_count() as u32 {
            let _ = writeln!(out, "vertex {v} {}", self.label(v));
        }
        for k in 0..=self.complex.dim().unwrap_or(0) {
            for s in self.complex.simplices(k) {
                let ids: Vec<String> = s.iter().map(u32::to_string).collect();
                let _ = writeln!(out, "simplex {k} {}", ids.join(" "));
            }
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RipsVertex {
    Group(Element),
    Cone(CosetVertex),
}

/// Three-valued answer for partially decidable membership.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Tri {
    Yes,
    No,
    Unknown,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum UniconeWitness {
    /// For each group vertex (position in the input) a coset element within alpha and its distance.
    Holds(Vec<(usize, Element, u32)>),
    TwoCones(usize, usize),
    Diameter(usize, usize, Distance),
    FarFromCone(usize),
    Undecided(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniconeCheck {
    pub verdict: Tri,
    pub witness: UniconeWitness,
}

pub fn is_unicone_subset(pair: &PairModel, u: &[RipsVertex], alpha: usize) -> Result<UniconeCheck> {
    let model = &pair.model;
    let cones: Vec<usize> = (0..u.len()).filter(|&i| matches!(u[i], RipsVertex::Cone(_))).collect();
    if cones.len() > 1 {
        return Ok(UniconeCheck {
            verdict: Tri::No,
            witness: UniconeWitness::TwoCones(cones[0], cones[1]),
        });
    }
    let groups: Vec<(usize, &Element)> = u
        .iter()
        .enumerate()
        .filter_map(|(i, v)| match v {
            RipsVertex::Group(g) => Some((i, g)),
            RipsVertex::Cone(_) => None,
        })
        .collect();
    let mut undecided = None;
    for (a, &(i, g)) in groups.iter().enumerate() {
        for &(j, h) in &groups[a + 1..] {
            match model.distance(g, h) {
                Distance::Exact(d) if d as usize <= alpha => {}
                Distance::LowerBound(d) if d as usize <= alpha => {
                    undecided.get_or_insert_with(|| format!("distance between vertices {i} and {j} is only bounded below"));
                }
                d => {
                    return Ok(UniconeCheck {
                        verdict: Tri::No,
                        witness: UniconeWitness::Diameter(i, j, d),
                    })
                }
            }
        }
    }
    let mut near = Vec::new();
    if let Some(&c) = cones.first() {
        let RipsVertex::Cone(cone) = &u[c] else { unreachable!() };
        let ball = model.ball(alpha)?;
        for &(i, g) in &groups {
            match pair.distance_to_coset(g, cone, &ball) {
                Some(d) => {
                    let idx = ball
                        .elements()
                        .iter()
                        .position(|b| pair.key(cone.collection_index, &model.mul(g, b)) == cone.key)
                        .expect("distance was witnessed");
                    near.push((i, model.mul(g, ball.element(idx)), d));
                }
                None if pair.is_exact() => {
                    return Ok(UniconeCheck {
                        verdict: Tri::No,
                        witness: UniconeWitness::FarFromCone(i),
                    })
                }
                None => {
                    undecided.get_or_insert_with(|| format!("coset membership near vertex {i} is undecided"));
                }
            }
        }
    }
    Ok(match undecided {
        Some(msg) => UniconeCheck {
            verdict: Tri::Unknown,
            witness: UniconeWitness::Undecided(msg),
        },
        None => UniconeCheck {
            verdict: Tri::Yes,
            witness: UniconeWitness::Holds(near),
        },
    })
}

fn intersect(a: &[u32], b: &[u32]) -> Vec<u32> {
    let (mut i, mut j, mut out) = (0, 0, Vec::new());
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out
}

/// Cliques `prefix ∪ {v} ∪ …` with increasing vertices drawn from `cand`, up to `max` vertices.
fn extend_cliques(up: &[Vec<u32>], prefix: &mut Vec<u32>, cand: &[u32], max: usize, out: &mut Vec<Vec<u32>>) {
    for (k, &v) in cand.iter().enumerate() {
        prefix.push(v);
        out.push(prefix.clone());
        if prefix.len() < max {
            let next = intersect(&cand[k + 1..], &up[v as usize]);
            if !next.is_empty() {
                extend_cliques(up, prefix, &next, max, out);
            }
        }
        prefix.pop();
    }
}

pub fn build_unicone_rips(pair: &PairModel, alpha: usize, radius: usize, dim_cap: usize) -> Result<UniconeRipsComplex> {
    if dim_cap < 1 {
        return Err(Error::Precondition("dim_cap must be at least 1".into()));
    }
    if radius < alpha + 1 {
        return Err(Error::Margin(format!(
            "radius {radius} must be at least alpha + 1 = {}",
            alpha + 1
        )));
    }
    let trunc = Truncation::new(pair, radius)?;
    let steps = pair.model.ball(alpha)?;
    let model = &pair.model;
    let n = trunc.ball.len();
    let k = pair.len();
    // neighbours within alpha, and cones within alpha, for every group vertex
    let adjacency: Vec<(Vec<u32>, Vec<u32>)> = (0..n)
        .into_par_iter()
        .map(|i| {
            let g = trunc.ball.element(i);
            let mut up = Vec::new();
            let mut cones = BTreeSet::new();
            for b in steps.elements() {
                let h = model.mul(g, b);
                if let Some(j) = trunc.ball.index_of(&h) {
                    if j > i {
                        up.push(j as u32);
                    }
                }
                for c in 0..k {
                    if let Some(id) = trunc.cone_of(pair, c, &h) {
                        cones.insert(id as u32);
                    }
                }
            }
            up.sort_unstable();
            (up, cones.into_iter().collect())
        })
        .collect();
    let up: Vec<Vec<u32>> = adjacency.iter().map(|a| a.0.clone()).collect();
    let mut near: Vec<Vec<u32>> = vec![Vec::new(); trunc.cones.len()];
    for (i, (_, cs)) in adjacency.iter().enumerate() {
        for &c in cs {
            near[c as usize].push(i as u32);
        }
    }
    let max = dim_cap + 1;
    let group_part: Vec<Vec<Vec<u32>>> = (0..n as u32)
        .into_par_iter()
        .map(|v| {
            let mut out = vec![vec![v]];
            if max > 1 {
                extend_cliques(&up, &mut vec![v], &up[v as usize], max, &mut out);
            }
            out
        })
        .collect();
    let cone_part: Vec<Vec<Vec<u32>>> = near
        .par_iter()
        .enumerate()
        .map(|(c, members)| {
            let id = (n + c) as u32;
            let mut cliques = Vec::new();
            extend_cliques(&up, &mut Vec::new(), members, max - 1, &mut cliques);
            let mut out = vec![vec![id]];
            out.extend(cliques.into_iter().map(|mut s| {
                s.push(id);
                s
            }));
            out
        })
        .collect();
    let mut dims: Vec<Vec<Vec<u32>>> = vec![Vec::new(); max];
    for s in group_part.into_iter().chain(cone_part).flatten() {
        dims[s.len() - 1].push(s);
    }
    let complex = SimplicialComplex::from_dims(dims)?;
    Ok(UniconeRipsComplex {
        pair: pair.clone(),
        alpha,
        radius,
        dim_cap,
        exact: trunc.exact && model.is_exact(),
        trunc,
        complex,
    })
}

/// The identity-on-vertices inclusion `R̂_α ⊂ R̂_β` at a common radius.
pub fn filtration_inclusion(small: &UniconeRipsComplex, big: &UniconeRipsComplex) -> Result<SimplicialMap> {
    if small.alpha > big.alpha {
        return Err(Error::Precondition(format!(
            "alpha {} exceeds alpha {}",
            small.alpha, big.alpha
        )));
    }
    if small.radius != big.radius || !small.pair.same_as(&big.pair) {
        return Err(Error::Precondition("inclusion needs the same pair and radius".into()));
    }
    let m = SimplicialMap::identity(small.vertex_count());
    if let Some(s) = m.violation(&small.complex, &big.complex) {
        return Err(Error::Invalid(format!("containment violation at {s:?}")));
    }
    Ok(m)
}

/// Inclusion of a complex at a smaller radius and scale into one at a larger radius
/// and scale, matching vertices by element and coset.
pub fn embedding(small: &UniconeRipsComplex, big: &UniconeRipsComplex) -> Result<SimplicialMap> {
    if small.alpha > big.alpha || small.radius > big.radius || !small.pair.same_as(&big.pair) {
        return Err(Error::Precondition("embedding needs a smaller scale and radius on the same pair".into()));
    }
    let vertex_map = (0..small.vertex_count() as u32)
        .map(|v| {
            big.vertex_id(&small.vertex(v))
                .ok_or_else(|| Error::Invalid(format!("vertex {} missing from the larger complex", small.label(v))))
        })
        .collect::<Result<Vec<u32>>>()?;
    let m = SimplicialMap { vertex_map };
    if let Some(s) = m.violation(&small.complex, &big.complex) {
        return Err(Error::Invalid(format!("containment violation at {s:?}")));
    }
    Ok(m)
}

/// `f₁ ⊔ f₂` on vertices, verified simplexwise.
pub fn induced_simplicial_map(f: &PairMap, src: &UniconeRipsComplex, dst: &UniconeRipsComplex) -> Result<SimplicialMap> {
    if !f.src.same_as(&src.pair) || !f.dst.same_as(&dst.pair) {
        return Err(Error::Precondition("complexes are not over the map's pairs".into()));
    }
    let c = &f.constants;
    let need = c.l * Ratio::from_integer(src.alpha as i64) + c.c + c.m;
    if Ratio::from_integer(dst.alpha as i64) < need {
        return Err(Error::Precondition(format!(
            "target scale {} is below L·alpha + C + M = {need}",
            dst.alpha
        )));
    }
    let mut vertex_map = Vec::with_capacity(src.vertex_count());
    for v in 0..src.vertex_count() as u32 {
        let img = match src.vertex(v) {
            RipsVertex::Group(g) => {
                let h = f.image(&g).ok_or_else(|| {
                    Error::Margin(format!("map is not tabulated at {}", src.label(v)))
                })?;
                RipsVertex::Group(h.clone())
            }
            RipsVertex::Cone(a) => RipsVertex::Cone(
                f.cone_image(&a)
                    .ok_or_else(|| Error::Margin(format!("map is not tabulated at cone {}", src.label(v))))?
                    .clone(),
            ),
        };
        let id = dst
            .vertex_id(&img)
            .ok_or_else(|| Error::Margin(format!("image of {} escapes the target truncation", src.label(v))))?;
        vertex_map.push(id);
    }
    let m = SimplicialMap { vertex_map };
    if let Some(s) = m.violation(&src.complex, &dst.complex) {
        let labels: Vec<String> = s.iter().map(|&v| src.label(v)).collect();
        return Err(Error::Invalid(format!("image of simplex {{{}}} is not a simplex", labels.join(", "))));
    }
    Ok(m)
}

fn translate(pair: &PairModel, shift: &Element, v: &RipsVertex) -> CanonVertex {
    match v {
        RipsVertex::Group(g) => CanonVertex::Group(pair.model.mul(shift, g)),
        RipsVertex::Cone(c) => {
            let rep = pair.model.mul(shift, &c.representative);
            CanonVertex::Cone(c.collection_index, pair.key(c.collection_index, &rep))
        }
    }
}

/// Least translate of a simplex moving one of its group vertices to the identity.
pub fn simplex_canonical_form(cx: &UniconeRipsComplex, s: &[u32]) -> Vec<CanonVertex> {
    let verts: Vec<RipsVertex> = s.iter().map(|&v| cx.vertex(v)).collect();
    let mut best: Option<Vec<CanonVertex>> = None;
    for v in &verts {
        let RipsVertex::Group(g) = v else { continue };
        let shift = cx.pair.model.inverse(g);
        let mut form: Vec<CanonVertex> = verts.iter().map(|w| translate(&cx.pair, &shift, w)).collect();
        form.sort();
        if best.as_ref().is_none_or(|b| form < *b) {
            best = Some(form);
        }
    }
    best.unwrap_or_else(|| {
        // a lone cone vertex: its orbit is its collection entry
        let c = cx.cone(s[0]);
        vec![CanonVertex::Cone(c.collection_index, cx.pair.key(c.collection_index, &cx.pair.model.identity()))]
    })
}

/// Left-translation orbits of `dim`-simplices, from the simplices at the identity.
pub fn count_simplex_orbits(cx: &UniconeRipsComplex, dim: usize) -> Result<usize> {
    if cx.radius < 2 * cx.alpha {
        return Err(Error::Margin(format!(
            "orbit representatives need radius ≥ 2·alpha = {}, got {}",
            2 * cx.alpha,
            cx.radius
        )));
    }
    if dim > cx.dim_cap {
        return Err(Error::Precondition(format!("dimension {dim} exceeds dim_cap {}", cx.dim_cap)));
    }
    let mut forms: HashMap<Vec<CanonVertex>, ()> = HashMap::new();
    for s in cx.complex.simplices(dim) {
        let at_identity = s.first() == Some(&0);
        let lone_cone = s.len() == 1 && cx.is_cone(s[0]);
        if at_identity || lone_cone {
            forms.insert(simplex_canonical_form(cx, s), ());
        }
    }
    Ok(forms.len())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::load_fixture;

    fn pair(name: &str) -> PairModel {
        PairModel::new(load_fixture(name).unwrap().pair().unwrap()).unwrap()
    }

    #[test]
    fn margins() {
        let p = pair("Z_mod_2Z");
        assert!(build_unicone_rips(&p, 2, 2, 2).unwrap_err().is_margin());
        assert!(matches!(build_unicone_rips(&p, 1, 4, 0), Err(Error::Precondition(_))));
    }

    #[test]
    fn zero_scale() {
        let p = pair("Z_mod_2Z");
        let cx = build_unicone_rips(&p, 0, 3, 2).unwrap();
        assert_eq!(cx.complex.count(0), cx.vertex_count());
        // every edge is {g, A} with g ∈ A
        for e in cx.complex.simplices(1) {
            assert!(cx.is_cone(e[1]) && !cx.is_cone(e[0]));
            let members = &cx.trunc.members[e[1] as usize - cx.group_count()];
            assert!(members.contains(&e[0]));
        }
        assert_eq!(cx.complex.count(1), cx.group_count());
        assert_eq!(cx.complex.count(2), 0);
    }
}
