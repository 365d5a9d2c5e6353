//! Parser for group and pair specification files.
//!
//! ```text
//! # comment
//! [group]
//! generators = a, b
//! relators   = [a,b]          # or `none`
//! backend    = free_abelian   # free | free_abelian | finite_table | generic_fp
//!
//! [subgroup]
//! name       = A
//! generators = a
//! ```
//!
//! Word grammar (whitespace between tokens is ignored):
//!
//! ```text
//! list    := word (',' word)*
//! word    := factor ('*' factor)*
//! factor  := atom ('^' int)?
//! atom    := symbol | '1' | '(' word ')' | '[' word ',' word ']'
//! symbol  := [A-Za-z_][A-Za-z0-9_]*
//! int     := '-'? [0-9]+
//! ```

use super::spec::{BackendHint, GroupPairSpec, GroupSpec};
use super::word::Word;
use crate::error::{Error, Result};

fn syntax(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Syntax {
        line,
        column,
        message: message.into(),
    }
}

#[derive(Debug)]
struct Entry {
    key: String,
    value: String,
    line: usize,
    /// 1-based column where the value starts.
    column: usize,
}

#[derive(Debug)]
struct Section {
    name: String,
    line: usize,
    entries: Vec<Entry>,
}

impl Section {
    fn take(&mut self, key: &str) -> Option<Entry> {
        let pos = self.entries.iter().position(|e| e.key == key)?;
        Some(self.entries.remove(pos))
    }

    fn finish(&self) -> Result<()> {
        match self.entries.first() {
            Some(e) => Err(syntax(
                e.line,
                1,
                format!("unknown key `{}` in section [{}]", e.key, self.name),
            )),
            None => Ok(()),
        }
    }
}

fn split_sections(text: &str) -> Result<Vec<Section>> {
    let mut sections: Vec<Section> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let content = match raw.find('#') {
            Some(p) => &raw[..p],
            None => raw,
        };
        let trimmed = content.trim();
        if trimmed.is_empty() {
            continue;
        }
        let indent = content.len() - content.trim_start().len();
        if let Some(rest) = trimmed.strip_prefix('[') {
            let Some(name) = rest.strip_suffix(']') else {
                return Err(syntax(line_no, indent + 1, "unterminated section header"));
            };
            let name = name.trim();
            if name != "group" && name != "subgroup" {
                return Err(syntax(
                    line_no,
                    indent + 2,
                    format!("unknown section `{name}`"),
                ));
            }
            sections.push(Section {
                name: name.to_string(),
                line: line_no,
                entries: Vec::new(),
            });
            continue;
        }
        let Some(eq) = content.find('=') else {
            return Err(syntax(line_no, indent + 1, "expected `key = value`"));
        };
        let key = content[..eq].trim();
        if key.is_empty() || !key.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
            return Err(syntax(line_no, indent + 1, "invalid key"));
        }
        let after = &content[eq + 1..];
        let lead = after.len() - after.trim_start().len();
        let value = after.trim().to_string();
        let column = content[..eq + 1 + lead].chars().count() + 1;
        let Some(section) = sections.last_mut() else {
            return Err(syntax(line_no, indent + 1, "key outside of any section"));
        };
        if section.entries.iter().any(|e| e.key == key) {
            return Err(syntax(
                line_no,
                indent + 1,
                format!("duplicate key `{key}`"),
            ));
        }
        section.entries.push(Entry {
            key: key.to_string(),
            value,
            line: line_no,
            column,
        });
    }
    Ok(sections)
}

/// Recursive-descent word parser over one value string.
struct WordParser<'a> {
    chars: Vec<char>,
    pos: usize,
    line: usize,
    column0: usize,
    symbols: &'a [String],
}

impl<'a> WordParser<'a> {
    fn new(value: &str, line: usize, column0: usize, symbols: &'a [String]) -> Self {
        WordParser {
            chars: value.chars().collect(),
            pos: 0,
            line,
            column0,
            symbols,
        }
    }

    fn err(&self, msg: impl Into<String>) -> Error {
        syntax(self.line, self.column0 + self.pos, msg)
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(format!("expected `{c}`")))
        }
    }

    fn list(&mut self) -> Result<Vec<Word>> {
        let mut out = vec![self.word()?];
        while self.peek() == Some(',') {
            self.pos += 1;
            out.push(self.word()?);
        }
        if self.peek().is_some() {
            return Err(self.err("trailing characters"));
        }
        Ok(out)
    }

    fn word(&mut self) -> Result<Word> {
        let mut w = self.factor()?;
        while self.peek() == Some('*') {
            self.pos += 1;
            w = w.concat(&self.factor()?);
        }
        Ok(w)
    }

    fn factor(&mut self) -> Result<Word> {
        let base = self.atom()?;
        if self.peek() == Some('^') {
            self.pos += 1;
            let exp = self.integer()?;
            Ok(base.pow(exp))
        } else {
            Ok(base)
        }
    }

    fn integer(&mut self) -> Result<i64> {
        self.skip_ws();
        let start = self.pos;
        if self.chars.get(self.pos) == Some(&'-') {
            self.pos += 1;
        }
        let digits_start = self.pos;
        while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == digits_start {
            self.pos = start;
            return Err(self.err("expected an integer exponent"));
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        s.parse::<i64>()
            .ok()
            .filter(|e| e.unsigned_abs() <= 1 << 20)
            .ok_or_else(|| self.err("exponent out of range"))
    }

    fn atom(&mut self) -> Result<Word> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let w = self.word()?;
                self.expect(')')?;
                Ok(w)
            }
            Some('[') => {
                self.pos += 1;
                let u = self.word()?;
                self.expect(',')?;
                let v = self.word()?;
                self.expect(']')?;
                Ok(Word::commutator(&u, &v))
            }
            Some('1') => {
                self.pos += 1;
                Ok(Word::empty())
            }
            Some(c) if c.is_ascii_alphabetic() || c == '_' => {
                let start = self.pos;
                while self.pos < self.chars.len()
                    && (self.chars[self.pos].is_ascii_alphanumeric() || self.chars[self.pos] == '_')
                {
                    self.pos += 1;
                }
                let name: String = self.chars[start..self.pos].iter().collect();
                match self.symbols.iter().position(|s| *s == name) {
                    Some(g) => Ok(Word::letter(g, false)),
                    None => Err(Error::UnknownSymbol(name)),
                }
            }
            Some(_) => Err(self.err("unexpected character")),
            None => Err(self.err("unexpected end of word")),
        }
    }
}

fn parse_symbols(entry: &Entry) -> Result<Vec<String>> {
    let mut out = Vec::new();
    let mut col = entry.column;
    for part in entry.value.split(',') {
        let name = part.trim();
        let lead = part.len() - part.trim_start().len();
        let ok = name
            .chars()
            .next()
            .is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
            && name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
        if !ok {
            return Err(syntax(
                entry.line,
                col + lead,
                format!("invalid generator symbol `{name}`"),
            ));
        }
        out.push(name.to_string());
        col += part.chars().count() + 1;
    }
    Ok(out)
}

/// Parses a word list such as `a^2*b^-1, [a,b]` over the given symbols.
pub fn parse_word_list(value: &str, symbols: &[String]) -> Result<Vec<Word>> {
    WordParser::new(value, 1, 1, symbols).list()
}

/// Parses a single word over the given symbols.
pub fn parse_word(value: &str, symbols: &[String]) -> Result<Word> {
    let mut p = WordParser::new(value, 1, 1, symbols);
    let w = p.word()?;
    if p.peek().is_some() {
        return Err(p.err("trailing characters"));
    }
    Ok(w)
}

fn group_from_section(mut sec: Section) -> Result<GroupSpec> {
    let gens = sec
        .take("generators")
        .ok_or_else(|| syntax(sec.line, 1, "[group] needs `generators`"))?;
    let generators = parse_symbols(&gens)?;
    let relators = match sec.take("relators") {
        None => Vec::new(),
        Some(e) if e.value.is_empty() || e.value == "none" || e.value == "(none)" => Vec::new(),
        Some(e) => WordParser::new(&e.value, e.line, e.column, &generators).list()?,
    };
    let backend = match sec.take("backend") {
        None => BackendHint::GenericFp,
        Some(e) => BackendHint::parse(&e.value)?,
    };
    sec.finish()?;
    GroupSpec::new(generators, relators, backend)
}

/// Parses a document holding only a `[group]` section.
pub fn parse_group_spec(text: &str) -> Result<GroupSpec> {
    let mut sections = split_sections(text)?;
    if sections.len() != 1 || sections[0].name != "group" {
        let line = sections.get(1).map_or(1, |s| s.line);
        return Err(syntax(line, 1, "expected exactly one [group] section"));
    }
    group_from_section(sections.remove(0))
}

/// Parses a `[group]` section followed by one or more `[subgroup]` sections.
pub fn parse_pair_spec(text: &str) -> Result<GroupPairSpec> {
    let mut sections = split_sections(text)?.into_iter();
    let first = sections
        .next()
        .ok_or_else(|| syntax(1, 1, "missing [group] section"))?;
    if first.name != "group" {
        return Err(syntax(first.line, 1, "the first section must be [group]"));
    }
    let group = group_from_section(first)?;
    let mut subgroups = Vec::new();
    for mut sec in sections {
        if sec.name != "subgroup" {
            return Err(syntax(sec.line, 1, "only one [group] section is allowed"));
        }
        let name = sec
            .take("name")
            .ok_or_else(|| syntax(sec.line, 1, "[subgroup] needs `name`"))?;
        let gens = sec
            .take("generators")
            .ok_or_else(|| syntax(sec.line, 1, "[subgroup] needs `generators`"))?;
        let words =
            WordParser::new(&gens.value, gens.line, gens.column, &group.generators).list()?;
        sec.finish()?;
        subgroups.push((name.value, words));
    }
    GroupPairSpec::new(group, subgroups)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::word::Letter;

    #[test]
    fn free_group_on_one_generator() {
        let g =
            parse_group_spec("[group]\ngenerators = a\nrelators = none\nbackend = free\n").unwrap();
        assert_eq!(g.generators, vec!["a"]);
        assert!(g.relators.is_empty());
        assert_eq!(g.backend, BackendHint::Free);
    }

    #[test]
    fn commutator_relator() {
        let g = parse_group_spec(
            "[group]\ngenerators = a, b\nrelators = [a,b]\nbackend = free_abelian\n",
        )
        .unwrap();
        let a = Letter::new(0, false);
        let b = Letter::new(1, false);
        assert_eq!(g.relators, vec![Word(vec![a, b, a.inverse(), b.inverse()])]);
    }

    #[test]
    fn cyclic_six() {
        let g =
            parse_group_spec("[group]\ngenerators = a\nrelators = a^6\nbackend = finite_table\n")
                .unwrap();
        assert_eq!(g.relators, vec![Word::power_of(0, 6)]);
    }

    #[test]
    fn syntax_errors_carry_position() {
        let err = parse_group_spec("[group]\ngenerators = a\nrelators = a^6 )\n").unwrap_err();
        assert_eq!(
            err,
            Error::Syntax {
                line: 3,
                column: 16,
                message: "trailing characters".into()
            }
        );
        assert!(matches!(
            parse_group_spec("[group]\ngenerators = a\nrelators = b^2\n"),
            Err(Error::UnknownSymbol(s)) if s == "b"
        ));
        assert!(matches!(
            parse_group_spec("[group]\ngenerators = a\nbackend = automatic\n"),
            Err(Error::UnsupportedBackend(_))
        ));
    }

    #[test]
    fn pair_with_repetitions() {
        let text =
            "[group]\ngenerators = a\nbackend = free\n[subgroup]\nname = A\ngenerators = a^2\n\
                    [subgroup]\nname = B\ngenerators = a^2\n";
        let p = parse_pair_spec(text).unwrap();
        assert_eq!(p.collection.len(), 2);
        assert_eq!(p.collection[0].multiplicity_index, 0);
        assert_eq!(p.collection[1].multiplicity_index, 1);
        assert_ne!(p.collection[0], p.collection[1]);
    }

    #[test]
    fn empty_collection_rejected() {
        let err = parse_pair_spec("[group]\ngenerators = a\nbackend = free\n").unwrap_err();
        assert!(matches!(err, Error::Invalid(_)));
    }

    #[test]
    fn grouping_and_negative_powers() {
        let syms = vec!["a".to_string(), "b".to_string()];
        let w = parse_word("(a*b)^-2", &syms).unwrap();
        assert_eq!(w, parse_word("b^-1*a^-1*b^-1*a^-1", &syms).unwrap());
        assert!(parse_word("a**b", &syms).is_err());
    }
}
