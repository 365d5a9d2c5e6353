//! Tietze simplification: drop trivial relators and eliminate generators that occur
//! exactly once in some relator.

use crate::presentation::{Letter, Word};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TietzeBudget {
    /// Maximum number of eliminations.
    pub max_passes: usize,
    /// Relators longer than this are never used to eliminate a generator.
    pub max_relator_len: usize,
}

impl Default for TietzeBudget {
    fn default() -> Self {
        TietzeBudget {
            max_passes: 100_000,
            max_relator_len: 64,
        }
    }
}

/// The simplified presentation with its elimination log.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Simplified {
    pub rank: usize,
    /// Generators still present, in increasing order.
    pub remaining: Vec<usize>,
    /// Relators over the remaining generators (original indices), cyclically reduced.
    pub relators: Vec<Word>,
    /// `(g, w)`: `g` was replaced by `w`, in order of elimination.
    pub log: Vec<(usize, Word)>,
    /// False if the pass budget stopped the simplification early.
    pub finished: bool,
}

impl Simplified {
    pub fn is_trivial(&self) -> bool {
        self.remaining.is_empty()
    }

    /// Rewrite a word over the original generators into the remaining ones.
    pub fn rewrite(&self, w: &Word) -> Word {
        let mut w = w.freely_reduced();
        for (g, expr) in &self.log {
            if !w.letters().iter().any(|l| l.gen() == *g) {
                continue;
            }
            w = substitute(&w, *g, expr);
        }
        w
    }

    /// Renumber onto `0..remaining.len()`.
    pub fn compact(&self) -> (usize, Vec<Word>) {
        let mut map = vec![usize::MAX; self.rank];
        for (i, &g) in self.remaining.iter().enumerate() {
            map[g] = i;
        }
        let rels = self.relators.iter().map(|r| relabel(r, &map)).collect();
        (self.remaining.len(), rels)
    }

    pub fn compact_word(&self, w: &Word) -> Word {
        let mut map = vec![usize::MAX; self.rank];
        for (i, &g) in self.remaining.iter().enumerate() {
            map[g] = i;
        }
        relabel(&self.rewrite(w), &map)
    }
}

fn relabel(w: &Word, map: &[usize]) -> Word {
    w.letters().iter().map(|l| Letter::new(map[l.gen()], l.is_inverse())).collect()
}

fn substitute(w: &Word, g: usize, expr: &Word) -> Word {
    let inv = expr.inverse();
    let mut out = Vec::with_capacity(w.len());
    for &l in w.letters() {
        if l.gen() == g {
            out.extend_from_slice(if l.is_inverse() { &inv.0 } else { &expr.0 });
        } else {
            out.push(l);
        }
    }
    Word(out).freely_reduced()
}

pub fn simplify(rank: usize, relators: &[Word], budget: TietzeBudget) -> Simplified {
    let mut rels: Vec<Word> = relators
        .iter()
        .map(Word::cyclically_reduced)
        .filter(|r| !r.is_empty())
        .collect();
    let mut alive = vec![true; rank];
    let mut log = Vec::new();
    // occurrences[g] = relators that mention g (may hold stale entries)
    let mut occurrences: Vec<Vec<usize>> = vec![Vec::new(); rank];
    for (i, r) in rels.iter().enumerate() {
        for l in r.letters() {
            if occurrences[l.gen()].last() != Some(&i) {
                occurrences[l.gen()].push(i);
            }
        }
    }
    let mut finished = true;
    let mut passes = 0;
    loop {
        // shortest relator with a generator occurring exactly once
        let mut best: Option<(usize, usize, usize)> = None; // (len, relator, position)
        for (i, r) in rels.iter().enumerate() {
            if r.is_empty() || r.len() > budget.max_relator_len {
                continue;
            }
            if best.is_some_and(|(len, _, _)| len <= r.len()) {
                continue;
            }
            if let Some(pos) = (0..r.len()).find(|&p| {
                let g = r.0[p].gen();
                r.letters().iter().filter(|l| l.gen() == g).count() == 1
            }) {
                best = Some((r.len(), i, pos));
            }
        }
        let Some((_, i, pos)) = best else { break };
        if passes == budget.max_passes {
            finished = false;
            break;
        }
        passes += 1;
        let r = std::mem::take(&mut rels[i]);
        let x = r.0[pos];
        // r = u x v  ⇒  x = u⁻¹ v⁻¹ = (v u)⁻¹
        let vu: Word = r.0[pos + 1..].iter().chain(&r.0[..pos]).copied().collect();
        let expr = if x.is_inverse() { vu } else { vu.inverse() };
        let g = x.gen();
        for j in std::mem::take(&mut occurrences[g]) {
            if j == i || rels[j].is_empty() {
                continue;
            }
            let nr = substitute(&rels[j], g, &expr).cyclically_reduced();
            for l in nr.letters() {
                if occurrences[l.gen()].last() != Some(&j) {
                    occurrences[l.gen()].push(j);
                }
            }
            rels[j] = nr;
        }
        alive[g] = false;
        log.push((g, expr));
    }
    let mut relators: Vec<Word> = rels.into_iter().filter(|r| !r.is_empty()).collect();
    relators.sort();
    relators.dedup();
    Simplified {
        rank,
        remaining: (0..rank).filter(|&g| alive[g]).collect(),
        relators,
        log,
        finished,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(g: usize) -> Word {
        Word::letter(g, false)
    }

    #[test]
    fn disc_is_trivial() {
        // one relator x0 x1 x2 on three generators leaves two free generators
        let s = simplify(3, &[x(0).concat(&x(1)).concat(&x(2))], TietzeBudget::default());
        assert_eq!(s.remaining.len(), 2);
        let s = simplify(1, &[x(0)], TietzeBudget::default());
        assert!(s.is_trivial());
    }

    #[test]
    fn rewrite_follows_the_log() {
        let rels = vec![x(0).concat(&x(1).inverse()), x(1).concat(&x(2).inverse())];
        let s = simplify(3, &rels, TietzeBudget::default());
        assert_eq!(s.remaining.len(), 1);
        let w = s.rewrite(&x(0).concat(&x(2).inverse()));
        assert!(w.is_empty());
    }

    #[test]
    fn z2_is_not_simplified_away() {
        let s = simplify(2, &[Word::commutator(&x(0), &x(1))], TietzeBudget::default());
        assert_eq!(s.remaining, vec![0, 1]);
    }
}
