//! Group pairs and their coned-off Cayley graphs, unicone Rips complexes and homology.

pub mod error;
pub mod fixtures;
pub mod coned_off;
pub mod geometry;
pub mod homology;
pub mod pair_maps;
pub mod perm_algebra;
pub mod presentation;
pub mod rips;

pub use error::{Error, Result};
pub use geometry::{Ball, CosetVertex, Distance, GroupModel, PairModel};
pub use presentation::{Element, GroupPairSpec, GroupSpec, SubgroupSpec, Word};
