//! Word-problem backends and canonical forms.

use std::fmt;

use super::spec::{BackendHint, GroupSpec};
use super::word::Word;
use crate::error::{Error, Result};
use crate::geometry::todd_coxeter::{enumerate, CosetTable, Enumeration};

/// Coset cap for closing a `finite_table` presentation.
pub const FINITE_TABLE_CAP: usize = 1 << 20;
/// Default coset budget for the partial table behind `generic_fp`.
pub const GENERIC_BUDGET: usize = 20_000;

/// A group element in backend normal form.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Element {
    /// Freely reduced word (free groups; generic groups, possibly non-canonical).
    Word(Word),
    /// Exponent vector (free abelian groups).
    Vector(Vec<i64>),
    /// Element id in the regular coset table (finite groups).
    Index(u32),
}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Element::Word(w) => write!(f, "w{:?}", w.0),
            Element::Vector(v) => write!(f, "v{v:?}"),
            Element::Index(i) => write!(f, "#{i}"),
        }
    }
}

/// Normal form together with a claim about canonicity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Normalized {
    pub element: Element,
    /// False when the backend cannot certify that equal elements share this form.
    pub canonical: bool,
}

#[derive(Clone, Debug)]
enum Kind {
    Free,
    Abelian,
    Finite(CosetTable),
    Generic(CosetTable),
}

/// Multiplication and normal forms for one [`GroupSpec`].
#[derive(Clone, Debug)]
pub struct WordProblem {
    spec: GroupSpec,
    kind: Kind,
}

impl WordProblem {
    pub fn new(spec: &GroupSpec) -> Result<Self> {
        Self::with_budget(spec, GENERIC_BUDGET)
    }

    /// `budget` bounds the partial coset table used by `generic_fp`.
    pub fn with_budget(spec: &GroupSpec, budget: usize) -> Result<Self> {
        let rank = spec.rank();
        let kind = match spec.backend {
            BackendHint::Free => Kind::Free,
            BackendHint::FreeAbelian => Kind::Abelian,
            BackendHint::FiniteTable => {
                match enumerate(rank, &spec.relators, &[], FINITE_TABLE_CAP) {
                    Enumeration::Complete(t) => Kind::Finite(t),
                    Enumeration::Overflow { reached, .. } => return Err(Error::Overflow(reached)),
                }
            }
            BackendHint::GenericFp => {
                let t = match enumerate(rank, &spec.relators, &[], budget) {
                    Enumeration::Complete(t) => t,
                    Enumeration::Overflow { partial, .. } => partial,
                };
                Kind::Generic(t)
            }
        };
        Ok(WordProblem {
            spec: spec.clone(),
            kind,
        })
    }

    pub fn spec(&self) -> &GroupSpec {
        &self.spec
    }

    pub fn backend(&self) -> BackendHint {
        self.spec.backend
    }

    pub fn is_exact(&self) -> bool {
        match &self.kind {
            Kind::Generic(t) => t.complete,
            _ => true,
        }
    }

    /// Group order when the backend knows it is finite.
    pub fn order(&self) -> Option<usize> {
        match &self.kind {
            Kind::Finite(t) => Some(t.len()),
            Kind::Generic(t) if t.complete => Some(t.len()),
            _ => None,
        }
    }

    pub fn normalize(&self, w: &Word) -> Normalized {
        let rank = self.spec.rank();
        match &self.kind {
            Kind::Free => Normalized {
                element: Element::Word(w.freely_reduced()),
                canonical: true,
            },
            Kind::Abelian => Normalized {
                element: Element::Vector(w.exponent_vector(rank)),
                canonical: true,
            },
            Kind::Finite(t) => Normalized {
                element: Element::Index(t.trace(0, w).expect("complete table") as u32),
                canonical: true,
            },
            Kind::Generic(t) => match t.trace(0, w) {
                Some(c) if t.complete => Normalized {
                    element: Element::Word(t.reps[c].clone()),
                    canonical: true,
                },
                Some(c) => Normalized {
                    element: Element::Word(t.reps[c].clone()),
                    canonical: false,
                },
                None => Normalized {
                    element: Element::Word(w.freely_reduced()),
                    canonical: false,
                },
            },
        }
    }

    pub fn element(&self, w: &Word) -> Element {
        self.normalize(w).element
    }

    /// A word over the spec's generators representing `e`.
    pub fn word_of(&self, e: &Element) -> Word {
        match (e, &self.kind) {
            (Element::Word(w), _) => w.clone(),
            (Element::Vector(v), _) => v
                .iter()
                .enumerate()
                .flat_map(|(g, &x)| Word::power_of(g, x).0)
                .collect(),
            (Element::Index(i), Kind::Finite(t)) => t.reps[*i as usize].clone(),
            (Element::Index(_), _) => unreachable!("index elements belong to finite tables"),
        }
    }

    pub fn identity(&self) -> Element {
        self.element(&Word::empty())
    }

    pub fn mul(&self, a: &Element, b: &Element) -> Element {
        match (a, b, &self.kind) {
            (Element::Vector(x), Element::Vector(y), _) => {
                Element::Vector(x.iter().zip(y).map(|(p, q)| p + q).collect())
            }
            (Element::Word(x), Element::Word(y), Kind::Free) => {
                Element::Word(x.concat(y).freely_reduced())
            }
            (Element::Index(x), Element::Index(_), Kind::Finite(t)) => {
                let w = self.word_of(b);
                Element::Index(t.trace(*x as usize, &w).expect("complete table") as u32)
            }
            _ => self.element(&self.word_of(a).concat(&self.word_of(b))),
        }
    }

    /// `a · w` for a word `w`.
    pub fn mul_word(&self, a: &Element, w: &Word) -> Element {
        match (a, &self.kind) {
            (Element::Index(x), Kind::Finite(t)) => {
                Element::Index(t.trace(*x as usize, w).expect("complete table") as u32)
            }
            _ => self.mul(a, &self.element(w)),
        }
    }

    pub fn inverse(&self, a: &Element) -> Element {
        match a {
            Element::Vector(x) => Element::Vector(x.iter().map(|v| -v).collect()),
            Element::Word(w) if matches!(self.kind, Kind::Free) => Element::Word(w.inverse()),
            _ => self.element(&self.word_of(a).inverse()),
        }
    }

    pub fn render(&self, e: &Element) -> String {
        self.spec.render_word(&self.word_of(e))
    }
}

/// One-shot normalization. Builds the backend state on every call; hold a
/// [`WordProblem`] to normalize many words.
pub fn normalize_word(spec: &GroupSpec, w: &Word) -> Result<Normalized> {
    if w.max_gen().is_some_and(|g| g >= spec.rank()) {
        return Err(Error::Invalid("word uses an undeclared generator".into()));
    }
    Ok(WordProblem::new(spec)?.normalize(w))
}
