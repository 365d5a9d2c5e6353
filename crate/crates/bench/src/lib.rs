//! Inputs shared by the pipeline benchmarks.

use conepair_core::fixtures::load_fixture;
use conepair_core::PairModel;

/// A pair fixture, built.
pub fn pair(name: &str) -> PairModel {
    let fixture = load_fixture(name).expect("registry fixture");
    PairModel::new(fixture.pair().expect("pair fixture")).expect("fixture builds")
}
