use super::spec::SubgroupSpec;
use super::word::Word;

/// A syllable of a word in `F(S) * P_1 * ... * P_k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Syllable {
    /// A nonempty freely reduced word in the relative generators.
    Free(Word),
    /// An element of the collection entry `factor`, written as a word in the ambient generators.
    Factor { factor: usize, element: Word },
}

/// A relator in free-product normal form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FreeProductWord(pub Vec<Syllable>);

impl FreeProductWord {
    /// Merges adjacent syllables from the same factor and drops trivial ones.
    ///
    /// `is_trivial` decides whether a factor element is the identity; pass a backend
    /// decision for exact groups, or free triviality otherwise.
    pub fn normalize(syllables: Vec<Syllable>, is_trivial: impl Fn(usize, &Word) -> bool) -> Self {
        let trivial = |s: &Syllable| match s {
            Syllable::Free(w) => w.is_empty(),
            Syllable::Factor { factor, element } => is_trivial(*factor, element),
        };
        let mut out: Vec<Syllable> = Vec::with_capacity(syllables.len());
        for s in syllables {
            out.push(match s {
                Syllable::Free(w) => Syllable::Free(w.freely_reduced()),
                Syllable::Factor { factor, element } => Syllable::Factor {
                    factor,
                    element: element.freely_reduced(),
                },
            });
            // popping a trivial syllable can expose two mergeable neighbours
            loop {
                if out.last().is_some_and(&trivial) {
                    out.pop();
                    continue;
                }
                let n = out.len();
                if n < 2 {
                    break;
                }
                let merged = match (&out[n - 2], &out[n - 1]) {
                    (Syllable::Free(a), Syllable::Free(b)) => {
                        Some(Syllable::Free(a.concat(b).freely_reduced()))
                    }
                    (
                        Syllable::Factor {
                            factor: fa,
                            element: a,
                        },
                        Syllable::Factor {
                            factor: fb,
                            element: b,
                        },
                    ) if fa == fb => Some(Syllable::Factor {
                        factor: *fa,
                        element: a.concat(b).freely_reduced(),
                    }),
                    _ => None,
                };
                match merged {
                    Some(m) => {
                        out.truncate(n - 2);
                        out.push(m);
                    }
                    None => break,
                }
            }
        }
        FreeProductWord(out)
    }

    /// Alternating syllables, none trivial.
    pub fn is_normal(&self, is_trivial: impl Fn(usize, &Word) -> bool) -> bool {
        let alternating = self.0.windows(2).all(|w| match (&w[0], &w[1]) {
            (Syllable::Free(_), Syllable::Free(_)) => false,
            (Syllable::Factor { factor: a, .. }, Syllable::Factor { factor: b, .. }) => a != b,
            _ => true,
        });
        alternating
            && self.0.iter().all(|s| match s {
                Syllable::Free(w) => !w.is_empty() && w.is_freely_reduced(),
                Syllable::Factor { factor, element } => !is_trivial(*factor, element),
            })
    }
}

/// `⟨S, 𝒫 | R⟩`: relative generators, the collection, and relators in normal form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelativePresentation {
    pub relative_generators: Vec<String>,
    pub collection: Vec<SubgroupSpec>,
    pub relators: Vec<FreeProductWord>,
}

impl RelativePresentation {
    pub fn new(
        relative_generators: Vec<String>,
        collection: Vec<SubgroupSpec>,
        relators: Vec<Vec<Syllable>>,
        is_trivial: impl Fn(usize, &Word) -> bool,
    ) -> Self {
        let relators = relators
            .into_iter()
            .map(|r| FreeProductWord::normalize(r, &is_trivial))
            .filter(|r| !r.0.is_empty())
            .collect();
        RelativePresentation {
            relative_generators,
            collection,
            relators,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn freely_trivial(_: usize, w: &Word) -> bool {
        w.freely_reduced().is_empty()
    }

    #[test]
    fn merges_and_drops() {
        let a = Word::letter(0, false);
        let syl = vec![
            Syllable::Free(a.clone()),
            Syllable::Factor {
                factor: 0,
                element: Word::letter(1, false),
            },
            Syllable::Factor {
                factor: 0,
                element: Word::letter(1, true),
            },
            Syllable::Free(a.clone()),
        ];
        let n = FreeProductWord::normalize(syl, freely_trivial);
        assert_eq!(n.0, vec![Syllable::Free(a.pow(2))]);
        assert!(n.is_normal(freely_trivial));
    }

    #[test]
    fn distinct_factors_alternate() {
        let syl = vec![
            Syllable::Factor {
                factor: 0,
                element: Word::letter(0, false),
            },
            Syllable::Factor {
                factor: 1,
                element: Word::letter(0, false),
            },
        ];
        let n = FreeProductWord::normalize(syl, freely_trivial);
        assert_eq!(n.0.len(), 2);
        assert!(n.is_normal(freely_trivial));
    }
}
