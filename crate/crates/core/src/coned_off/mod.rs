//! The coned-off Cayley graph, unicone loops, `Γ̂_l` and the simple-connectivity probe.

mod complex;
mod graph;
mod loops;
mod probe;
mod surgery;
pub mod tietze;

pub use complex::{attach_unicone_cells, pi1_presentation, Pi1Presentation, TwoComplex};
pub use graph::{build_coned_off, ConedOffGraph};
pub use loops::{canonical_form, count_loop_orbits, enumerate_unicone_loops, simple_cycles, CanonVertex, LoopMode, UniconeLoop};
pub use probe::{probe_unicone_simply_connected, ProbeBudget, ScReport, ScVerdict};
pub use surgery::{reduce_loop_to_unicone, Surgery, SurgeryCertificate};
pub use tietze::{simplify, Simplified, TietzeBudget};
