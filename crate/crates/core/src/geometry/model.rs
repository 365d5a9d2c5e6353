use std::collections::HashMap;
use std::fmt::Write as _;
use std::sync::{Arc, Mutex};

use crate::error::{Error, Result};
use crate::presentation::{BackendHint, Element, GroupSpec, Word, WordProblem};

/// Limits on breadth-first exploration of infinite groups.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Caps {
    pub max_radius: usize,
    pub max_elements: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            max_radius: 64,
            max_elements: 4_000_000,
        }
    }
}

/// A word-metric distance, exact or bounded below.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Distance {
    Exact(u32),
    /// The true distance is at least this value.
    LowerBound(u32),
}

impl Distance {
    pub fn exact(self) -> Option<u32> {
        match self {
            Distance::Exact(d) => Some(d),
            Distance::LowerBound(_) => None,
        }
    }

    pub fn value(self) -> u32 {
        match self {
            Distance::Exact(d) | Distance::LowerBound(d) => d,
        }
    }
}

#[derive(Default)]
struct Bfs {
    layers: Vec<Vec<Element>>,
    /// Length and the generator used to reach each element (`u32::MAX` at the identity).
    info: HashMap<Element, (u32, u32)>,
    total: usize,
    exhausted: bool,
}

/// A group with a designated finite generating set `S` and a word-problem backend.
///
/// `S` is given by words over the spec's generators; the modelled group is `⟨S⟩`,
/// which lets a model describe a finite-index subgroup with its own word metric.
/// Clones share the breadth-first cache.
#[derive(Clone)]
pub struct GroupModel {
    inner: Arc<Inner>,
}

struct Inner {
    wp: Arc<WordProblem>,
    words: Vec<Word>,
    gen_words: Vec<Word>,
    gens: Vec<Element>,
    standard: bool,
    caps: Caps,
    bfs: Mutex<Bfs>,
}

impl std::fmt::Debug for GroupModel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("GroupModel")
            .field("backend", &self.inner.wp.backend())
            .field("generators", &self.inner.words)
            .finish()
    }
}

impl GroupModel {
    /// The spec's own generators, symmetrized.
    pub fn new(spec: &GroupSpec) -> Result<Self> {
        let words = (0..spec.rank()).map(|g| Word::letter(g, false)).collect();
        Self::with_generating_set(spec, words)
    }

    pub fn with_generating_set(spec: &GroupSpec, words: Vec<Word>) -> Result<Self> {
        Self::from_parts(Arc::new(WordProblem::new(spec)?), words, Caps::default())
    }

    /// Same backend, different generating set.
    pub fn regenerate(&self, words: Vec<Word>) -> Result<Self> {
        Self::from_parts(self.inner.wp.clone(), words, self.inner.caps)
    }

    pub fn with_caps(self, caps: Caps) -> Self {
        Self::from_parts(self.inner.wp.clone(), self.inner.words.clone(), caps)
            .expect("generating set already validated")
    }

    fn from_parts(wp: Arc<WordProblem>, words: Vec<Word>, caps: Caps) -> Result<Self> {
        let rank = wp.spec().rank();
        if words.iter().any(|w| w.max_gen().is_some_and(|g| g >= rank)) {
            return Err(Error::Invalid(
                "generating word uses an undeclared generator".into(),
            ));
        }
        let standard = matches!(wp.backend(), BackendHint::Free | BackendHint::FreeAbelian)
            && words.len() == rank
            && words
                .iter()
                .enumerate()
                .all(|(g, w)| *w == Word::letter(g, false));
        let id = wp.identity();
        let mut gen_words = Vec::new();
        let mut gens: Vec<Element> = Vec::new();
        for w in &words {
            for s in [w.freely_reduced(), w.inverse().freely_reduced()] {
                let e = wp.element(&s);
                if e != id && !gens.contains(&e) {
                    gens.push(e);
                    gen_words.push(s);
                }
            }
        }
        if gens.is_empty() && !words.is_empty() && wp.order() != Some(1) {
            return Err(Error::Invalid("generating set is trivial".into()));
        }
        let mut bfs = Bfs::default();
        bfs.info.insert(id.clone(), (0, u32::MAX));
        bfs.layers.push(vec![id]);
        bfs.total = 1;
        Ok(GroupModel {
            inner: Arc::new(Inner {
                wp,
                words,
                gen_words,
                gens,
                standard,
                caps,
                bfs: Mutex::new(bfs),
            }),
        })
    }

    pub fn word_problem(&self) -> &WordProblem {
        &self.inner.wp
    }

    pub fn spec(&self) -> &GroupSpec {
        self.inner.wp.spec()
    }

    pub fn caps(&self) -> Caps {
        self.inner.caps
    }

    /// The words the generating set was built from, before symmetrization.
    pub fn generating_words(&self) -> &[Word] {
        &self.inner.words
    }

    /// Words for the elements of [`GroupModel::generators`], index for index.
    pub fn generator_words(&self) -> &[Word] {
        &self.inner.gen_words
    }

    /// The symmetrized generating set `S` (closed under inverses, identity excluded).
    pub fn generators(&self) -> &[Element] {
        &self.inner.gens
    }

    pub fn is_standard(&self) -> bool {
        self.inner.standard
    }

    pub fn is_exact(&self) -> bool {
        self.inner.wp.is_exact()
    }

    pub fn order(&self) -> Option<usize> {
        self.inner.wp.order()
    }

    pub fn identity(&self) -> Element {
        self.inner.wp.identity()
    }

    pub fn element(&self, w: &Word) -> Element {
        self.inner.wp.element(w)
    }

    pub fn mul(&self, a: &Element, b: &Element) -> Element {
        self.inner.wp.mul(a, b)
    }

    pub fn inverse(&self, a: &Element) -> Element {
        self.inner.wp.inverse(a)
    }

    pub fn word_of(&self, e: &Element) -> Word {
        self.inner.wp.word_of(e)
    }

    pub fn render(&self, e: &Element) -> String {
        self.inner.wp.render(e)
    }

    /// Word length `|g|_S`.
    pub fn length(&self, g: &Element) -> Distance {
        if self.inner.standard {
            return Distance::Exact(match g {
                Element::Word(w) => w.len() as u32,
                Element::Vector(v) => v.iter().map(|x| x.unsigned_abs()).sum::<u64>() as u32,
                Element::Index(_) => unreachable!("standard models are free or free abelian"),
            });
        }
        let mut bfs = self.inner.bfs.lock().expect("bfs cache poisoned");
        loop {
            if let Some(&(len, _)) = bfs.info.get(g) {
                return Distance::Exact(len);
            }
            let radius = bfs.layers.len() - 1;
            if bfs.exhausted
                || radius >= self.inner.caps.max_radius
                || bfs.total >= self.inner.caps.max_elements
            {
                return Distance::LowerBound(radius as u32 + 1);
            }
            self.expand(&mut bfs);
        }
    }

    /// `d_S(g, h) = |g⁻¹h|_S`.
    pub fn distance(&self, g: &Element, h: &Element) -> Distance {
        self.length(&self.mul(&self.inverse(g), h))
    }

    fn expand(&self, bfs: &mut Bfs) {
        let Bfs {
            layers,
            info,
            total,
            exhausted,
        } = bfs;
        let len = layers.len() as u32;
        let mut next = Vec::new();
        for g in layers.last().expect("identity layer") {
            for (s, e) in self.inner.gens.iter().enumerate() {
                let h = self.inner.wp.mul(g, e);
                if let std::collections::hash_map::Entry::Vacant(v) = info.entry(h) {
                    next.push(v.key().clone());
                    v.insert((len, s as u32));
                }
            }
        }
        if next.is_empty() {
            *exhausted = true;
        } else {
            *total += next.len();
            layers.push(next);
        }
    }

    /// Elements at distance `≤ radius` from the identity, in breadth-first order.
    pub fn ball(&self, radius: usize) -> Result<Ball> {
        let mut bfs = self.inner.bfs.lock().expect("bfs cache poisoned");
        while bfs.layers.len() <= radius && !bfs.exhausted {
            if bfs.layers.len() > self.inner.caps.max_radius {
                return Err(Error::CapExceeded(format!(
                    "ball radius {radius} exceeds the cap {}",
                    self.inner.caps.max_radius
                )));
            }
            if bfs.total > self.inner.caps.max_elements {
                return Err(Error::CapExceeded(format!(
                    "ball of radius {radius} exceeds {} elements",
                    self.inner.caps.max_elements
                )));
            }
            self.expand(&mut bfs);
        }
        let mut elements = Vec::new();
        let mut lengths = Vec::new();
        for (len, layer) in bfs.layers.iter().enumerate().take(radius + 1) {
            elements.extend(layer.iter().cloned());
            lengths.extend(std::iter::repeat_n(len as u32, layer.len()));
        }
        if elements.len() > self.inner.caps.max_elements {
            return Err(Error::CapExceeded(format!(
                "ball of radius {radius} has {} elements",
                elements.len()
            )));
        }
        Ok(Ball::new(radius, elements, lengths))
    }

    /// A geodesic word for `g` as indices into [`GroupModel::generators`], if `g` has been reached.
    pub fn geodesic(&self, g: &Element) -> Option<Vec<usize>> {
        self.length(g).exact()?;
        let bfs = self.inner.bfs.lock().expect("bfs cache poisoned");
        if self.inner.standard && !bfs.info.contains_key(g) {
            drop(bfs);
            return Some(self.standard_geodesic(g));
        }
        let mut path = Vec::new();
        let mut cur = g.clone();
        loop {
            let &(_, s) = bfs.info.get(&cur)?;
            if s == u32::MAX {
                break;
            }
            path.push(s as usize);
            cur = self
                .inner
                .wp
                .mul(&cur, &self.inner.wp.inverse(&self.inner.gens[s as usize]));
        }
        path.reverse();
        Some(path)
    }

    fn standard_geodesic(&self, g: &Element) -> Vec<usize> {
        let col = |gen: usize, inv: bool| 2 * gen + usize::from(inv);
        match g {
            Element::Word(w) => w
                .letters()
                .iter()
                .map(|l| col(l.gen(), l.is_inverse()))
                .collect(),
            Element::Vector(v) => v
                .iter()
                .enumerate()
                .flat_map(|(i, &x)| std::iter::repeat_n(col(i, x < 0), x.unsigned_abs() as usize))
                .collect(),
            Element::Index(_) => unreachable!(),
        }
    }
}

/// A finite ball around the identity with exact word lengths.
#[derive(Clone, Debug)]
pub struct Ball {
    pub radius: usize,
    elements: Vec<Element>,
    lengths: Vec<u32>,
    index: HashMap<Element, usize>,
}

impl Ball {
    fn new(radius: usize, elements: Vec<Element>, lengths: Vec<u32>) -> Self {
        let index = elements
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, e)| (e, i))
            .collect();
        Ball {
            radius,
            elements,
            lengths,
            index,
        }
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[Element] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &Element {
        &self.elements[i]
    }

    pub fn length(&self, i: usize) -> u32 {
        self.lengths[i]
    }

    pub fn index_of(&self, e: &Element) -> Option<usize> {
        self.index.get(e).copied()
    }

    pub fn contains(&self, e: &Element) -> bool {
        self.index.contains_key(e)
    }

    /// Number of elements of length at most `r`.
    pub fn prefix(&self, r: usize) -> usize {
        self.lengths.partition_point(|&l| l as usize <= r)
    }

    /// One element per line with its word length.
    pub fn export(&self, model: &GroupModel) -> String {
        let mut out = format!("# conepair ball v1\nradius {}\n", self.radius);
        for (e, l) in self.elements.iter().zip(&self.lengths) {
            let _ = writeln!(out, "{} {l}", model.render(e));
        }
        out
    }
}
