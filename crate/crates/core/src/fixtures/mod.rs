//! Named group pairs and small simplicial complexes shipped with the crate.
//!
//! The registry is `fixtures/manifest.txt`; every file it names is embedded at build time.

use crate::error::{Error, Result};
use crate::presentation::{parse_pair_spec, GroupPairSpec};

const MANIFEST: &str = include_str!("../../fixtures/manifest.txt");

const FILES: &[(&str, &str)] = &[
    ("Z_rel_Z.pair", include_str!("../../fixtures/Z_rel_Z.pair")),
    ("Z_mod_2Z.pair", include_str!("../../fixtures/Z_mod_2Z.pair")),
    ("Z_mod_4Z.pair", include_str!("../../fixtures/Z_mod_4Z.pair")),
    ("2Z_rel_4Z.pair", include_str!("../../fixtures/2Z_rel_4Z.pair")),
    ("Z2_rel_Z.pair", include_str!("../../fixtures/Z2_rel_Z.pair")),
    ("F2_rel_a.pair", include_str!("../../fixtures/F2_rel_a.pair")),
    ("Z6_one_sub.pair", include_str!("../../fixtures/Z6_one_sub.pair")),
    ("Z6_two_subs.pair", include_str!("../../fixtures/Z6_two_subs.pair")),
    ("Z_rep_2Z.pair", include_str!("../../fixtures/Z_rep_2Z.pair")),
    ("Z6_rep_sub.pair", include_str!("../../fixtures/Z6_rep_sub.pair")),
    ("hollow_triangle.cx", include_str!("../../fixtures/hollow_triangle.cx")),
    ("full_triangle.cx", include_str!("../../fixtures/full_triangle.cx")),
    ("tetra_boundary.cx", include_str!("../../fixtures/tetra_boundary.cx")),
    ("torus7.cx", include_str!("../../fixtures/torus7.cx")),
];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Flag {
    RelativelyFinitelyPresented,
    MalnormalExpectedViolation,
    FiniteGroup,
    RelativelyHyperbolicExpected,
}

impl Flag {
    fn parse(s: &str) -> Result<Self> {
        Ok(match s {
            "relatively_finitely_presented" => Flag::RelativelyFinitelyPresented,
            "malnormal_expected_violation" => Flag::MalnormalExpectedViolation,
            "finite_group" => Flag::FiniteGroup,
            "relatively_hyperbolic_expected" => Flag::RelativelyHyperbolicExpected,
            other => return Err(Error::Invalid(format!("unknown fixture flag `{other}`"))),
        })
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Flag::RelativelyFinitelyPresented => "relatively_finitely_presented",
            Flag::MalnormalExpectedViolation => "malnormal_expected_violation",
            Flag::FiniteGroup => "finite_group",
            Flag::RelativelyHyperbolicExpected => "relatively_hyperbolic_expected",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FixtureData {
    Pair(GroupPairSpec),
    /// Maximal simplices of a finite simplicial complex.
    Complex(Vec<Vec<usize>>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fixture {
    pub name: String,
    pub data: FixtureData,
    /// Expectations, not oracles.
    pub flags: Vec<Flag>,
    pub source: &'static str,
}

impl Fixture {
    pub fn pair(&self) -> Option<&GroupPairSpec> {
        match &self.data {
            FixtureData::Pair(p) => Some(p),
            FixtureData::Complex(_) => None,
        }
    }

    pub fn has(&self, flag: Flag) -> bool {
        self.flags.contains(&flag)
    }
}

struct Row<'a> {
    name: &'a str,
    kind: &'a str,
    file: &'a str,
    flags: Vec<&'a str>,
}

fn rows() -> impl Iterator<Item = Row<'static>> {
    MANIFEST
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(|l| {
            let mut it = l.split_whitespace();
            Row {
                name: it.next().expect("manifest name"),
                kind: it.next().expect("manifest kind"),
                file: it.next().expect("manifest file"),
                flags: it.collect(),
            }
        })
}

/// Registry names in manifest order.
pub fn names() -> Vec<&'static str> {
    rows().map(|r| r.name).collect()
}

pub fn pair_names() -> Vec<&'static str> {
    rows().filter(|r| r.kind == "pair").map(|r| r.name).collect()
}

pub fn parse_complex(text: &str) -> Result<Vec<Vec<usize>>> {
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let mut s: Vec<usize> = line
            .split_whitespace()
            .map(|t| {
                t.parse().map_err(|_| Error::Syntax {
                    line: i + 1,
                    column: 1,
                    message: format!("bad vertex `{t}`"),
                })
            })
            .collect::<Result<_>>()?;
        s.sort_unstable();
        s.dedup();
        out.push(s);
    }
    Ok(out)
}

pub fn load_fixture(name: &str) -> Result<Fixture> {
    let row = rows()
        .find(|r| r.name == name)
        .ok_or_else(|| Error::UnknownFixture(name.to_string()))?;
    let source = FILES
        .iter()
        .find(|(f, _)| *f == row.file)
        .map(|(_, s)| *s)
        .ok_or_else(|| Error::Io(format!("fixture file `{}` is not embedded", row.file)))?;
    let data = match row.kind {
        "pair" => FixtureData::Pair(parse_pair_spec(source)?),
        "complex" => FixtureData::Complex(parse_complex(source)?),
        other => return Err(Error::Invalid(format!("unknown fixture kind `{other}`"))),
    };
    Ok(Fixture {
        name: row.name.to_string(),
        data,
        flags: row.flags.iter().map(|f| Flag::parse(f)).collect::<Result<_>>()?,
        source,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_fixture_loads() {
        for n in names() {
            load_fixture(n).unwrap();
        }
        assert!(matches!(load_fixture("nope"), Err(Error::UnknownFixture(_))));
    }

    #[test]
    fn documented_fixtures() {
        let f = load_fixture("Z6_two_subs").unwrap();
        let p = f.pair().unwrap();
        assert_eq!(p.collection.len(), 2);
        assert!(f.has(Flag::FiniteGroup));
        let r = load_fixture("Z_rep_2Z").unwrap();
        let c = &r.pair().unwrap().collection;
        assert_eq!(c[0].generator_words, c[1].generator_words);
        assert_ne!(c[0].multiplicity_index, c[1].multiplicity_index);
    }
}
