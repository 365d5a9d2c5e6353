//! Group, subgroup and pair specifications; parsing and word normalization.

mod normal;
pub mod parse;
mod relative;
mod spec;
mod word;

pub use normal::{
    normalize_word, Element, Normalized, WordProblem, FINITE_TABLE_CAP, GENERIC_BUDGET,
};
pub use parse::{parse_group_spec, parse_pair_spec, parse_word, parse_word_list};
pub use relative::{FreeProductWord, RelativePresentation, Syllable};
pub use spec::{BackendHint, GroupPairSpec, GroupSpec, SubgroupSpec};
pub use word::{Letter, Word};
