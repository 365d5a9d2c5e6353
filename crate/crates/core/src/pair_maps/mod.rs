//! Tabulated Lipschitz maps of group pairs and the checks built on them.
//!
//! A [`PairMap`] stores `f₁` on a source ball and `f₂` on the cone vertices meeting that
//! ball, together with constants `(L, C, M)`. Lipschitz bounds are non-strict, Hausdorff
//! bounds on cones are strict.

mod checks;
mod coned;
mod finite_index;
mod malnormal;
mod qdot;
mod square;

use std::fmt;
use std::fmt::Write as _;

use num_rational::Ratio;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::geometry::{CosetVertex, PairModel, Truncation};
use crate::presentation::{parse_word, Element, Word};

pub use checks::{
    check_lipschitz_pair, check_quasi_retraction, measure_constants, retraction_displacement,
    CheckResult, MapWitness,
};
pub use coned::{induced_coned_off_map, ConedOffImage, EdgeImage};
pub use finite_index::{finite_index_pair, FiniteIndexPair};
pub use malnormal::{malnormality_probe, MalnormalVerdict};
pub use qdot::{build_qdot, QDotRelation};
pub use square::{homotopy_square_check, SquareScales, SquareVerdict};

pub type Rational = Ratio<i64>;

/// `(L, C, M)` with `L ≥ 1`, `C ≥ 0`, `M ≥ 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Constants {
    pub l: Rational,
    pub c: Rational,
    pub m: Rational,
}

impl Constants {
    pub fn new(l: Rational, c: Rational, m: Rational) -> Result<Self> {
        let zero = Rational::from_integer(0);
        if l < Rational::from_integer(1) || c < zero || m < zero {
            return Err(Error::Invalid(format!(
                "constants need L ≥ 1, C ≥ 0, M ≥ 0, got L={l} C={c} M={m}"
            )));
        }
        Ok(Constants { l, c, m })
    }

    pub fn integers(l: i64, c: i64, m: i64) -> Result<Self> {
        Self::new(
            Rational::from_integer(l),
            Rational::from_integer(c),
            Rational::from_integer(m),
        )
    }

    /// `L̂ = max{L + C, M + 1}`.
    pub fn l_hat(&self) -> Rational {
        (self.l + self.c).max(self.m + Rational::from_integer(1))
    }

    /// Componentwise maximum.
    pub fn join(&self, other: &Constants) -> Constants {
        Constants {
            l: self.l.max(other.l),
            c: self.c.max(other.c),
            m: self.m.max(other.m),
        }
    }

    pub fn dominates(&self, other: &Constants) -> bool {
        self.l >= other.l && self.c >= other.c && self.m >= other.m
    }

    /// `⌈L·α + C + M⌉`, the smallest admissible target scale for a source scale `α`.
    pub fn target_scale(&self, alpha: usize) -> usize {
        let v = self.l * Rational::from_integer(alpha as i64) + self.c + self.m;
        v.ceil().to_integer() as usize
    }
}

impl fmt::Display for Constants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "L={} C={} M={}", self.l, self.c, self.m)
    }
}

/// A map of pairs tabulated on `ball(R)` of the source and on the cones meeting it.
#[derive(Clone, Debug)]
pub struct PairMap {
    pub name: String,
    pub src: PairModel,
    pub dst: PairModel,
    /// Source truncation carrying the table's domain.
    pub trunc: Truncation,
    f1: Vec<Element>,
    f2: Vec<CosetVertex>,
    pub constants: Constants,
}

impl PairMap {
    /// Tabulates `f₁` and `f₂` on `ball(radius)`; `f₂` receives each cone vertex of the
    /// source truncation.
    pub fn tabulate<F1, F2>(
        name: impl Into<String>,
        src: &PairModel,
        dst: &PairModel,
        radius: usize,
        f1: F1,
        f2: F2,
        constants: Constants,
    ) -> Result<Self>
    where
        F1: Fn(&Element) -> Result<Element> + Sync,
        F2: Fn(&CosetVertex) -> Result<CosetVertex> + Sync,
    {
        let trunc = Truncation::new(src, radius)?;
        let t1: Vec<Element> = trunc
            .ball
            .elements()
            .par_iter()
            .map(&f1)
            .collect::<Result<_>>()?;
        let t2: Vec<CosetVertex> = trunc.cones.par_iter().map(&f2).collect::<Result<_>>()?;
        if let Some(v) = t2.iter().find(|v| v.collection_index >= dst.len()) {
            return Err(Error::Invalid(format!(
                "cone image uses collection index {} of a {}-entry target collection",
                v.collection_index,
                dst.len()
            )));
        }
        Ok(PairMap {
            name: name.into(),
            src: src.clone(),
            dst: dst.clone(),
            trunc,
            f1: t1,
            f2: t2,
            constants,
        })
    }

    pub fn radius(&self) -> usize {
        self.trunc.ball.radius
    }

    pub fn image(&self, g: &Element) -> Option<&Element> {
        self.trunc.ball.index_of(g).map(|i| &self.f1[i])
    }

    pub fn cone_image(&self, a: &CosetVertex) -> Option<&CosetVertex> {
        self.trunc.cone_id(a).map(|i| &self.f2[i])
    }

    /// `f₁` in ball order.
    pub fn group_table(&self) -> &[Element] {
        &self.f1
    }

    /// `f₂` in truncation cone order.
    pub fn cone_table(&self) -> &[CosetVertex] {
        &self.f2
    }

    pub fn with_constants(mut self, constants: Constants) -> Self {
        self.constants = constants;
        self
    }

    /// Replaces the constants by the least ones valid on the table.
    pub fn measured(self) -> Result<Self> {
        let c = measure_constants(&self)?;
        Ok(self.with_constants(c))
    }

    /// Largest word length of an `f₁`-image.
    pub fn image_radius(&self) -> Result<usize> {
        self.f1
            .iter()
            .map(|h| {
                self.dst.model.length(h).exact().map(|d| d as usize).ok_or_else(|| {
                    Error::Margin(format!(
                        "length of {} is beyond the target's search caps",
                        self.dst.model.render(h)
                    ))
                })
            })
            .try_fold(0, |acc, d| d.map(|d| acc.max(d)))
    }

    /// The same map on a smaller ball.
    pub fn restrict(&self, radius: usize) -> Result<PairMap> {
        if radius > self.radius() {
            return Err(Error::Precondition(format!(
                "cannot restrict a radius-{} table to radius {radius}",
                self.radius()
            )));
        }
        PairMap::tabulate(
            self.name.clone(),
            &self.src,
            &self.dst,
            radius,
            |g| Ok(self.image(g).expect("inside the table").clone()),
            |a| Ok(self.cone_image(a).expect("inside the table").clone()),
            self.constants,
        )
    }

    /// `next ∘ self`, tabulated where both tables reach. The constants are the composite
    /// bounds `(L₂L₁, L₂C₁ + C₂, L₂M₁ + C₂ + M₂)`.
    pub fn then(&self, next: &PairMap) -> Result<PairMap> {
        let (a, b) = (&self.constants, &next.constants);
        let constants = Constants::new(a.l * b.l, b.l * a.c + b.c, b.l * a.m + b.c + b.m)?;
        PairMap::tabulate(
            format!("{}∘{}", next.name, self.name),
            &self.src,
            &next.dst,
            self.radius(),
            |g| {
                let h = self.image(g).expect("inside the table");
                next.image(h).cloned().ok_or_else(|| {
                    Error::Margin(format!(
                        "{} leaves the second table",
                        self.dst.model.render(h)
                    ))
                })
            },
            |a| {
                let b = self.cone_image(a).expect("inside the table");
                next.cone_image(b).cloned().ok_or_else(|| {
                    Error::Margin(format!(
                        "cone {} leaves the second table",
                        self.dst.model.render(&b.representative)
                    ))
                })
            },
            constants,
        )
    }

    /// Table text: `g -> h` lines then `cone i:rep -> cone j:rep` lines.
    pub fn export(&self) -> String {
        let (sm, dm) = (&self.src.model, &self.dst.model);
        let mut out = String::from("# conepair map v1\n");
        let _ = writeln!(out, "# {} radius {} {}", self.name, self.radius(), self.constants);
        for (g, h) in self.trunc.ball.elements().iter().zip(&self.f1) {
            let _ = writeln!(out, "{} -> {}", sm.render(g), dm.render(h));
        }
        for (a, b) in self.trunc.cones.iter().zip(&self.f2) {
            let _ = writeln!(
                out,
                "cone {}:{} -> cone {}:{}",
                a.collection_index,
                sm.render(&a.representative),
                b.collection_index,
                dm.render(&b.representative)
            );
        }
        out
    }

    /// Parses a table; every ball element and every cone meeting the ball needs a line.
    pub fn from_table(
        name: impl Into<String>,
        src: &PairModel,
        dst: &PairModel,
        radius: usize,
        text: &str,
        constants: Constants,
    ) -> Result<PairMap> {
        let sgens = &src.model.spec().generators;
        let dgens = &dst.model.spec().generators;
        let word = |s: &str, gens: &[String], line: usize| {
            parse_word(s.trim(), gens).map_err(|e| {
                Error::Invalid(format!("map table line {line}: {e}"))
            })
        };
        let cone = |s: &str, gens: &[String], line: usize| -> Result<(usize, Word)> {
            let s = s.trim();
            let rest = s.strip_prefix("cone").ok_or_else(|| {
                Error::Invalid(format!("map table line {line}: expected `cone i:rep`"))
            })?;
            let (i, w) = rest.split_once(':').ok_or_else(|| {
                Error::Invalid(format!("map table line {line}: expected `cone i:rep`"))
            })?;
            let i: usize = i.trim().parse().map_err(|_| {
                Error::Invalid(format!("map table line {line}: bad collection index `{}`", i.trim()))
            })?;
            Ok((i, word(w, gens, line)?))
        };
        let mut groups = std::collections::HashMap::new();
        let mut cones = std::collections::HashMap::new();
        for (n, raw) in text.lines().enumerate() {
            let line = n + 1;
            let t = raw.trim();
            if t.is_empty() || t.starts_with('#') {
                continue;
            }
            let (lhs, rhs) = t.split_once("->").ok_or_else(|| {
                Error::Invalid(format!("map table line {line}: missing `->`"))
            })?;
            if lhs.trim_start().starts_with("cone") {
                let (i, u) = cone(lhs, sgens, line)?;
                let (j, v) = cone(rhs, dgens, line)?;
                if i >= src.len() || j >= dst.len() {
                    return Err(Error::Invalid(format!(
                        "map table line {line}: collection index out of range"
                    )));
                }
                let a = src.coset(i, &src.model.element(&u));
                let b = dst.coset(j, &dst.model.element(&v));
                if cones.insert(a, b).is_some() {
                    return Err(Error::Invalid(format!("map table line {line}: repeated cone")));
                }
            } else {
                let g = src.model.element(&word(lhs, sgens, line)?);
                let h = dst.model.element(&word(rhs, dgens, line)?);
                if groups.insert(g, h).is_some() {
                    return Err(Error::Invalid(format!("map table line {line}: repeated element")));
                }
            }
        }
        PairMap::tabulate(
            name,
            src,
            dst,
            radius,
            |g| {
                groups.get(g).cloned().ok_or_else(|| {
                    Error::Invalid(format!("map table misses {}", src.model.render(g)))
                })
            },
            |a| {
                cones.get(a).cloned().ok_or_else(|| {
                    Error::Invalid(format!(
                        "map table misses cone {}:{}",
                        a.collection_index,
                        src.model.render(&a.representative)
                    ))
                })
            },
            constants,
        )
    }

    /// The identity between two models of the same pair (possibly with different
    /// generating sets).
    pub fn identity_between(src: &PairModel, dst: &PairModel, radius: usize) -> Result<PairMap> {
        if src.model.spec() != dst.model.spec() || src.collection != dst.collection {
            return Err(Error::Precondition("identity needs the same group and collection".into()));
        }
        let c = Constants::integers(1, 0, 1)?;
        PairMap::tabulate(
            "id",
            src,
            dst,
            radius,
            |g| Ok(g.clone()),
            |a| Ok(dst.coset(a.collection_index, &a.representative)),
            c,
        )
    }

    /// The identity of a pair, with constants `(1, 0, 1)`.
    pub fn identity(pair: &PairModel, radius: usize) -> Result<PairMap> {
        Self::identity_between(pair, pair, radius)
    }

    /// The identity from `pair` to the same pair over the generating set `words`, with
    /// measured constants.
    pub fn generating_set_change(pair: &PairModel, words: Vec<Word>, radius: usize) -> Result<PairMap> {
        let dst = regenerated(pair, words)?;
        let mut f = Self::identity_between(pair, &dst, radius)?.measured()?;
        f.name = "generating-set change".into();
        Ok(f)
    }

    /// The map induced by a homomorphism given on the source spec's generators, sending
    /// entry `i` of the source collection to entry `cone_index[i]` of the target's.
    pub fn homomorphism(
        src: &PairModel,
        dst: &PairModel,
        images: &[Word],
        cone_index: &[usize],
        radius: usize,
    ) -> Result<PairMap> {
        let sspec = src.model.spec();
        if images.len() != sspec.rank() || cone_index.len() != src.len() {
            return Err(Error::Invalid(
                "a homomorphism needs one image per generator and one target entry per subgroup".into(),
            ));
        }
        let dm = &dst.model;
        let phi = |w: &Word| -> Element {
            let mut acc = dm.identity();
            for l in w.letters() {
                let x = dm.element(&images[l.gen()]);
                acc = dm.mul(&acc, &if l.is_inverse() { dm.inverse(&x) } else { x });
            }
            acc
        };
        for r in sspec.presentation_relators() {
            if phi(&r) != dm.identity() {
                return Err(Error::Invalid(format!(
                    "relator {} does not map to the identity",
                    sspec.render_word(&r)
                )));
            }
        }
        let e = dm.identity();
        for (i, p) in src.collection.iter().enumerate() {
            let j = *cone_index.get(i).filter(|&&j| j < dst.len()).ok_or_else(|| {
                Error::Invalid(format!("target entry for subgroup `{}` out of range", p.name))
            })?;
            for w in &p.generator_words {
                if dst.same_coset(j, &e, &phi(w)) != Some(true) {
                    return Err(Error::Invalid(format!(
                        "image of subgroup `{}` is not inside `{}`",
                        p.name, dst.collection[j].name
                    )));
                }
            }
        }
        let sm = &src.model;
        let f = PairMap::tabulate(
            "homomorphism",
            src,
            dst,
            radius,
            |g| Ok(phi(&sm.word_of(g))),
            |a| Ok(dst.coset(cone_index[a.collection_index], &phi(&sm.word_of(&a.representative)))),
            Constants::integers(1, 0, 1)?,
        )?;
        f.measured()
    }
}

/// The pair over a different generating set of the same group.
pub fn regenerated(pair: &PairModel, words: Vec<Word>) -> Result<PairModel> {
    PairModel::from_model(pair.model.regenerate(words)?, pair.collection.clone())
}
