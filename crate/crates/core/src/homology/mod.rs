//! Chain complexes, Smith normal form and homology over Z, Q and Z/p.

mod bounds;
mod chain;
pub mod echelon;
mod groups;
pub mod int;
mod maps;
pub mod modp;
pub mod snf;
pub mod sparse;

pub use bounds::BoundarySpace;
pub use chain::{ChainComplex, Coefficients, SimplicialComplex};
pub use groups::{homology, homology_summary, universal_coefficients_violation, GroupSummary, HomologyResult};
pub use int::Int;
pub use maps::{chain_map, induced_map_on_homology, push_chain, InducedMap, SimplicialMap};
pub use snf::{elementary_divisors, smith_normal_form, Snf};
pub use sparse::SparseVec;

pub fn chain_complex(cx: &SimplicialComplex, coefficients: Coefficients) -> ChainComplex {
    ChainComplex::simplicial(cx, coefficients)
}
