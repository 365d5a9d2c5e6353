use std::cmp::Ordering;
use std::collections::HashMap;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use super::lattice::Lattice;
use super::model::{Ball, GroupModel};
use super::todd_coxeter::{enumerate, subgroup_graph, CosetTable, Enumeration};
use crate::error::{Error, Result};
use crate::presentation::{
    BackendHint, Element, GroupPairSpec, SubgroupSpec, Word, GENERIC_BUDGET,
};

/// Identity of a left coset `gP` inside one collection entry.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CosetKey {
    /// Vertex of the Stallings graph reached by `g⁻¹`, plus the unread tail.
    Schreier { vertex: u32, tail: Word },
    /// Hermite-reduced representative of `g` modulo the lattice.
    Lattice(Vec<i64>),
    /// Least element id of `gP` in a finite group.
    Least(u32),
    /// Row of a partial coset table reached by `g⁻¹`.
    Row(u32),
    /// Unresolved: only the representative is known.
    Representative(Element),
}

impl CosetKey {
    pub fn is_resolved(&self) -> bool {
        !matches!(self, CosetKey::Representative(_))
    }
}

/// A cone vertex `gP ∈ G/𝒫`. Equality and order look at the collection index and key only.
#[derive(Clone, Debug)]
pub struct CosetVertex {
    pub collection_index: usize,
    pub key: CosetKey,
    pub representative: Element,
}

impl PartialEq for CosetVertex {
    fn eq(&self, other: &Self) -> bool {
        self.collection_index == other.collection_index && self.key == other.key
    }
}

impl Eq for CosetVertex {}

impl Hash for CosetVertex {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.collection_index.hash(state);
        self.key.hash(state);
    }
}

impl PartialOrd for CosetVertex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for CosetVertex {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.collection_index, &self.key).cmp(&(other.collection_index, &other.key))
    }
}

#[derive(Clone, Debug)]
enum Oracle {
    Free(CosetTable),
    Abelian(Lattice),
    Finite(Vec<u32>),
    Generic(CosetTable),
}

/// A group pair bound to a [`GroupModel`]: membership oracles for every collection entry.
#[derive(Clone, Debug)]
pub struct PairModel {
    pub model: GroupModel,
    pub collection: Vec<SubgroupSpec>,
    oracles: Arc<Vec<Oracle>>,
}

impl PairModel {
    pub fn new(spec: &GroupPairSpec) -> Result<Self> {
        Self::from_model(GroupModel::new(&spec.group)?, spec.collection.clone())
    }

    /// Subgroup words are read over the model's spec generators; each subgroup is
    /// expected to lie in `⟨S⟩`.
    pub fn from_model(model: GroupModel, collection: Vec<SubgroupSpec>) -> Result<Self> {
        if collection.is_empty() {
            return Err(Error::Invalid("the subgroup collection is empty".into()));
        }
        let spec = model.spec();
        let rank = spec.rank();
        let mut oracles = Vec::with_capacity(collection.len());
        for p in &collection {
            if p.generator_words
                .iter()
                .any(|w| w.max_gen().is_some_and(|g| g >= rank))
            {
                return Err(Error::Invalid(format!(
                    "subgroup `{}` uses an undeclared generator",
                    p.name
                )));
            }
            oracles.push(match spec.backend {
                BackendHint::Free => Oracle::Free(subgroup_graph(rank, &p.generator_words)),
                BackendHint::FreeAbelian => Oracle::Abelian(Lattice::new(
                    rank,
                    &p.generator_words
                        .iter()
                        .map(|w| w.exponent_vector(rank))
                        .collect::<Vec<_>>(),
                )),
                BackendHint::FiniteTable => {
                    let order = model.order().expect("finite table has an order");
                    let wp = model.word_problem();
                    let gens: Vec<Element> =
                        p.generator_words.iter().map(|w| wp.element(w)).collect();
                    let mut members = vec![wp.identity()];
                    let mut seen = vec![false; order];
                    if let Element::Index(i) = &members[0] {
                        seen[*i as usize] = true;
                    }
                    let mut head = 0;
                    while head < members.len() {
                        for s in &gens {
                            if let Element::Index(i) = wp.mul(&members[head], s) {
                                if !seen[i as usize] {
                                    seen[i as usize] = true;
                                    members.push(Element::Index(i));
                                }
                            }
                        }
                        head += 1;
                    }
                    let mut least = vec![u32::MAX; order];
                    for g in 0..order as u32 {
                        if least[g as usize] != u32::MAX {
                            continue;
                        }
                        for m in &members {
                            if let Element::Index(i) = wp.mul(&Element::Index(g), m) {
                                least[i as usize] = g;
                            }
                        }
                    }
                    Oracle::Finite(least)
                }
                BackendHint::GenericFp => {
                    let t =
                        match enumerate(rank, &spec.relators, &p.generator_words, GENERIC_BUDGET) {
                            Enumeration::Complete(t) => t,
                            Enumeration::Overflow { partial, .. } => partial,
                        };
                    Oracle::Generic(t)
                }
            });
        }
        Ok(PairModel {
            model,
            collection,
            oracles: Arc::new(oracles),
        })
    }

    pub fn spec_pair(&self) -> Result<GroupPairSpec> {
        GroupPairSpec::new(
            self.model.spec().clone(),
            self.collection
                .iter()
                .map(|s| (s.name.clone(), s.generator_words.clone()))
                .collect(),
        )
    }

    /// Same spec, generating set and collection.
    pub fn same_as(&self, other: &PairModel) -> bool {
        self.model.spec() == other.model.spec()
            && self.model.generating_words() == other.model.generating_words()
            && self.collection == other.collection
    }

    pub fn len(&self) -> usize {
        self.collection.len()
    }

    pub fn is_empty(&self) -> bool {
        self.collection.is_empty()
    }

    /// Whether every coset key is decided exactly.
    pub fn is_exact(&self) -> bool {
        self.model.is_exact()
            && self.oracles.iter().all(|o| match o {
                Oracle::Generic(t) => t.complete,
                _ => true,
            })
    }

    pub fn key(&self, index: usize, g: &Element) -> CosetKey {
        match &self.oracles[index] {
            Oracle::Free(graph) => {
                let Element::Word(w) = self.model.inverse(g) else {
                    unreachable!("free groups use word elements")
                };
                let mut c = 0usize;
                for (i, &l) in w.letters().iter().enumerate() {
                    match graph.act_letter(c, l) {
                        Some(d) => c = d,
                        None => {
                            return CosetKey::Schreier {
                                vertex: c as u32,
                                tail: Word(w.0[i..].to_vec()),
                            }
                        }
                    }
                }
                CosetKey::Schreier {
                    vertex: c as u32,
                    tail: Word::empty(),
                }
            }
            Oracle::Abelian(l) => match g {
                Element::Vector(v) => CosetKey::Lattice(l.reduce(v)),
                _ => unreachable!("abelian groups use vector elements"),
            },
            Oracle::Finite(least) => match g {
                Element::Index(i) => CosetKey::Least(least[*i as usize]),
                _ => unreachable!("finite groups use index elements"),
            },
            Oracle::Generic(t) => {
                let w = self.model.word_of(g).inverse();
                match t.trace(0, &w) {
                    Some(c) => CosetKey::Row(c as u32),
                    None => CosetKey::Representative(g.clone()),
                }
            }
        }
    }

    pub fn coset(&self, index: usize, g: &Element) -> CosetVertex {
        CosetVertex {
            collection_index: index,
            key: self.key(index, g),
            representative: g.clone(),
        }
    }

    /// `g⁻¹h ∈ P_index`, or `None` when undecided.
    pub fn same_coset(&self, index: usize, g: &Element, h: &Element) -> Option<bool> {
        let (a, b) = (self.key(index, g), self.key(index, h));
        if a == b {
            Some(true)
        } else if a.is_resolved() && b.is_resolved() {
            Some(false)
        } else {
            None
        }
    }

    /// `d(g, A)` witnessed by an element of `ball` (a ball around the identity):
    /// the least `|b|` with `g·b ∈ A`.
    pub fn distance_to_coset(&self, g: &Element, cone: &CosetVertex, ball: &Ball) -> Option<u32> {
        ball.elements().iter().enumerate().find_map(|(i, b)| {
            let x = self.model.mul(g, b);
            (self.key(cone.collection_index, &x) == cone.key).then(|| ball.length(i))
        })
    }
}

/// `(coset v) ∩ ball(R)`, with an exactness flag.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosetElements {
    pub elements: Vec<Element>,
    pub exact: bool,
}

/// Elements of the coset `v` inside `ball(R)`. For unresolved keys the result is the part
/// reachable from the representative by products of at most `depth` subgroup generators.
pub fn coset_elements(
    pair: &PairModel,
    v: &CosetVertex,
    radius: usize,
    depth: usize,
) -> Result<CosetElements> {
    let ball = pair.model.ball(radius)?;
    if pair.is_exact() {
        let elements = ball
            .elements()
            .iter()
            .filter(|g| pair.key(v.collection_index, g) == v.key)
            .cloned()
            .collect();
        return Ok(CosetElements {
            elements,
            exact: true,
        });
    }
    let model = &pair.model;
    let gens: Vec<Element> = pair.collection[v.collection_index]
        .generator_words
        .iter()
        .flat_map(|w| [model.element(w), model.element(&w.inverse())])
        .collect();
    let mut seen = vec![v.representative.clone()];
    let mut frontier = seen.clone();
    for _ in 0..depth {
        let mut next = Vec::new();
        for g in &frontier {
            for s in &gens {
                let h = model.mul(g, s);
                if !seen.contains(&h) {
                    seen.push(h.clone());
                    next.push(h);
                }
            }
        }
        frontier = next;
    }
    let mut elements: Vec<Element> = seen.into_iter().filter(|g| ball.contains(g)).collect();
    elements.sort_by_key(|g| ball.index_of(g));
    Ok(CosetElements {
        elements,
        exact: false,
    })
}

/// Symmetrized Hausdorff distance between two finite sets. This is the distance of the
/// truncations, not of the full cosets they come from.
pub fn truncated_hausdorff(model: &GroupModel, a: &[Element], b: &[Element]) -> Result<u32> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::Invalid("Hausdorff distance of an empty set".into()));
    }
    let one_sided = |x: &[Element], y: &[Element]| {
        x.iter()
            .map(|p| {
                y.iter()
                    .map(|q| model.distance(p, q).value())
                    .min()
                    .expect("nonempty")
            })
            .max()
            .expect("nonempty")
    };
    Ok(one_sided(a, b).max(one_sided(b, a)))
}

/// A ball together with the cone vertices meeting it.
#[derive(Clone, Debug)]
pub struct Truncation {
    pub ball: Ball,
    pub cones: Vec<CosetVertex>,
    /// `membership[g][i]` is the cone of collection entry `i` containing group vertex `g`.
    pub membership: Vec<Vec<u32>>,
    /// Group vertices of each cone, ascending.
    pub members: Vec<Vec<u32>>,
    cone_index: HashMap<CosetVertex, u32>,
    pub exact: bool,
}

impl Truncation {
    /// Cones are ordered by collection index, then by the first ball element they contain.
    pub fn new(pair: &PairModel, radius: usize) -> Result<Self> {
        let ball = pair.model.ball(radius)?;
        let k = pair.len();
        let keys: Vec<Vec<CosetKey>> = ball
            .elements()
            .iter()
            .map(|g| (0..k).map(|i| pair.key(i, g)).collect())
            .collect();
        let mut cones = Vec::new();
        let mut cone_index: HashMap<CosetVertex, u32> = HashMap::new();
        let mut membership = vec![vec![0u32; k]; ball.len()];
        for i in 0..k {
            for (g, row) in keys.iter().enumerate() {
                let v = CosetVertex {
                    collection_index: i,
                    key: row[i].clone(),
                    representative: ball.element(g).clone(),
                };
                let id = *cone_index.entry(v.clone()).or_insert_with(|| {
                    cones.push(v);
                    (cones.len() - 1) as u32
                });
                membership[g][i] = id;
            }
        }
        let mut members = vec![Vec::new(); cones.len()];
        for (g, row) in membership.iter().enumerate() {
            for &c in row {
                members[c as usize].push(g as u32);
            }
        }
        Ok(Truncation {
            ball,
            cones,
            membership,
            members,
            cone_index,
            exact: pair.is_exact(),
        })
    }

    pub fn cone_id(&self, v: &CosetVertex) -> Option<usize> {
        self.cone_index.get(v).map(|&c| c as usize)
    }

    /// Cone of entry `index` containing `g`, if that coset meets the ball.
    pub fn cone_of(&self, pair: &PairModel, index: usize, g: &Element) -> Option<usize> {
        match self.ball.index_of(g) {
            Some(i) => Some(self.membership[i][index] as usize),
            None => self.cone_id(&pair.coset(index, g)),
        }
    }
}
