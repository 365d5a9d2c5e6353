use std::fmt;

use super::word::Word;
use crate::error::{Error, Result};

/// Which word-problem backend a group specification asks for.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BackendHint {
    Free,
    FreeAbelian,
    FiniteTable,
    GenericFp,
}

impl BackendHint {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "free" => Ok(BackendHint::Free),
            "free_abelian" => Ok(BackendHint::FreeAbelian),
            "finite_table" => Ok(BackendHint::FiniteTable),
            "generic_fp" => Ok(BackendHint::GenericFp),
            other => Err(Error::UnsupportedBackend(other.to_string())),
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            BackendHint::Free => "free",
            BackendHint::FreeAbelian => "free_abelian",
            BackendHint::FiniteTable => "finite_table",
            BackendHint::GenericFp => "generic_fp",
        }
    }

    /// Backends with a decidable word problem.
    pub fn is_exact(self) -> bool {
        !matches!(self, BackendHint::GenericFp)
    }
}

impl fmt::Display for BackendHint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A finitely presented group with a designated backend.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroupSpec {
    pub generators: Vec<String>,
    pub relators: Vec<Word>,
    pub backend: BackendHint,
}

impl GroupSpec {
    /// Validates symbols, relators and backend compatibility.
    pub fn new(generators: Vec<String>, relators: Vec<Word>, backend: BackendHint) -> Result<Self> {
        for (i, g) in generators.iter().enumerate() {
            if generators[..i].contains(g) {
                return Err(Error::Invalid(format!("duplicate generator `{g}`")));
            }
        }
        let rank = generators.len();
        let mut reduced = Vec::with_capacity(relators.len());
        for r in relators {
            if r.max_gen().is_some_and(|g| g >= rank) {
                return Err(Error::Invalid(
                    "relator uses an undeclared generator".into(),
                ));
            }
            let r = r.freely_reduced();
            if r.is_empty() {
                return Err(Error::Invalid("relator is freely trivial".into()));
            }
            reduced.push(r);
        }
        match backend {
            BackendHint::Free if !reduced.is_empty() => {
                return Err(Error::Invalid("the free backend takes no relators".into()));
            }
            BackendHint::FreeAbelian => {
                if let Some(r) = reduced
                    .iter()
                    .find(|r| r.exponent_vector(rank).iter().any(|&e| e != 0))
                {
                    return Err(Error::Invalid(format!(
                        "relator `{}` is not trivial in the free abelian group",
                        r.render(&generators)
                    )));
                }
            }
            _ => {}
        }
        Ok(GroupSpec {
            generators,
            relators: reduced,
            backend,
        })
    }

    pub fn rank(&self) -> usize {
        self.generators.len()
    }

    pub fn symbol_index(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g == name)
    }

    /// Relators of a finite presentation of the group the backend models.
    pub fn presentation_relators(&self) -> Vec<Word> {
        match self.backend {
            BackendHint::Free => Vec::new(),
            BackendHint::FreeAbelian => {
                let n = self.rank();
                let mut out = Vec::new();
                for i in 0..n {
                    for j in i + 1..n {
                        out.push(Word::commutator(
                            &Word::letter(i, false),
                            &Word::letter(j, false),
                        ));
                    }
                }
                out
            }
            BackendHint::FiniteTable | BackendHint::GenericFp => self.relators.clone(),
        }
    }

    pub fn render_word(&self, w: &Word) -> String {
        w.render(&self.generators)
    }
}

/// One entry of the subgroup collection, given by generating words.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SubgroupSpec {
    pub name: String,
    pub generator_words: Vec<Word>,
    /// Distinguishes repeated entries with identical generating words.
    pub multiplicity_index: usize,
}

/// A group together with a nonempty, ordered, finite collection of subgroups.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroupPairSpec {
    pub group: GroupSpec,
    pub collection: Vec<SubgroupSpec>,
}

impl GroupPairSpec {
    /// Builds a pair, assigning multiplicity indices to repeated subgroups.
    pub fn new(group: GroupSpec, subgroups: Vec<(String, Vec<Word>)>) -> Result<Self> {
        if subgroups.is_empty() {
            return Err(Error::Invalid("the subgroup collection is empty".into()));
        }
        let rank = group.rank();
        let mut collection: Vec<SubgroupSpec> = Vec::with_capacity(subgroups.len());
        for (name, words) in subgroups {
            if words.is_empty() {
                return Err(Error::Invalid(format!(
                    "subgroup `{name}` has no generators"
                )));
            }
            if words.iter().any(|w| w.max_gen().is_some_and(|g| g >= rank)) {
                return Err(Error::Invalid(format!(
                    "subgroup `{name}` uses an undeclared generator"
                )));
            }
            let words: Vec<Word> = words.iter().map(Word::freely_reduced).collect();
            let multiplicity_index = collection
                .iter()
                .filter(|s| s.generator_words == words)
                .count();
            collection.push(SubgroupSpec {
                name,
                generator_words: words,
                multiplicity_index,
            });
        }
        Ok(GroupPairSpec { group, collection })
    }

    /// Canonical text form; parsing it yields an identical value.
    pub fn to_text(&self) -> String {
        let g = &self.group;
        let mut out = String::new();
        out.push_str("[group]\n");
        out.push_str(&format!("generators = {}\n", g.generators.join(", ")));
        if g.relators.is_empty() {
            out.push_str("relators = none\n");
        } else {
            let rels: Vec<String> = g.relators.iter().map(|r| g.render_word(r)).collect();
            out.push_str(&format!("relators = {}\n", rels.join(", ")));
        }
        out.push_str(&format!("backend = {}\n", g.backend));
        for s in &self.collection {
            out.push_str("\n[subgroup]\n");
            out.push_str(&format!("name = {}\n", s.name));
            let ws: Vec<String> = s.generator_words.iter().map(|w| g.render_word(w)).collect();
            out.push_str(&format!("generators = {}\n", ws.join(", ")));
        }
        out
    }
}
