//! Word metric, balls, cosets, Hausdorff distances and coset enumeration.

mod cosets;
pub mod lattice;
mod model;
pub mod todd_coxeter;

pub use cosets::{
    coset_elements, truncated_hausdorff, CosetElements, CosetKey, CosetVertex, PairModel,
    Truncation,
};
pub use model::{Ball, Caps, Distance, GroupModel};
pub use todd_coxeter::{CosetTable, Enumeration};

use crate::error::Result;
use crate::presentation::{Element, SubgroupSpec};

pub fn ball(model: &GroupModel, radius: usize) -> Result<Ball> {
    model.ball(radius)
}

pub fn word_distance(model: &GroupModel, g: &Element, h: &Element) -> Distance {
    model.distance(g, h)
}

/// Right cosets of `p` in the model's group, acted on by the spec generators.
pub fn coset_enumerate(model: &GroupModel, p: &SubgroupSpec, max_cosets: usize) -> Enumeration {
    let spec = model.spec();
    todd_coxeter::enumerate(
        spec.rank(),
        &spec.presentation_relators(),
        &p.generator_words,
        max_cosets,
    )
}
