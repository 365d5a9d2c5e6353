//! The permutation module `Z[G/𝒫]`, its augmentation and the kernel `Δ` for finite
//! coset spaces.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::geometry::{coset_enumerate, Enumeration, PairModel};
use crate::homology::{elementary_divisors, Int, SparseVec};
use crate::presentation::Word;

/// `Z[G/𝒫]` with one block of left cosets per collection entry.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PermutationModule {
    pub labels: Vec<String>,
    /// `(offset, size)` of each entry's block.
    pub blocks: Vec<(usize, usize)>,
    /// `action[s][j]`: the basis element `s·b_j` for spec generator `s`.
    pub action: Vec<Vec<u32>>,
    /// Inverse permutations.
    inverse: Vec<Vec<u32>>,
}

/// Left cosets `gP` correspond to right cosets `Pg⁻¹`, so `s` acts through the
/// coset-table column of `s⁻¹`.
pub fn build_permutation_module(pair: &PairModel, max_cosets: usize) -> Result<PermutationModule> {
    let spec = pair.model.spec();
    let rank = spec.rank();
    let mut labels = Vec::new();
    let mut blocks = Vec::new();
    let mut action = vec![Vec::new(); rank];
    let mut inverse = vec![Vec::new(); rank];
    for p in &pair.collection {
        let table = match coset_enumerate(&pair.model, p, max_cosets) {
            Enumeration::Complete(t) => t,
            Enumeration::Overflow { reached, .. } => return Err(Error::Overflow(reached)),
        };
        let offset = labels.len();
        blocks.push((offset, table.len()));
        for rep in &table.reps {
            labels.push(format!("{}{}", spec.render_word(&rep.inverse()), p.name));
        }
        for s in 0..rank {
            for c in 0..table.len() {
                let img = table.act(c, 2 * s + 1).expect("complete table");
                let pre = table.act(c, 2 * s).expect("complete table");
                action[s].push((offset + img) as u32);
                inverse[s].push((offset + pre) as u32);
            }
        }
    }
    let m = PermutationModule {
        labels,
        blocks,
        action,
        inverse,
    };
    m.validate(&spec.presentation_relators())?;
    Ok(m)
}

impl PermutationModule {
    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    /// Image of basis element `j` under the word `w`, acting on the left.
    pub fn act_word(&self, w: &Word, j: u32) -> u32 {
        w.letters().iter().rev().fold(j, |x, l| {
            let table = if l.is_inverse() { &self.inverse } else { &self.action };
            table[l.gen()][x as usize]
        })
    }

    /// `w·v` for an integer vector in the coset basis.
    pub fn act_vector(&self, w: &Word, v: &SparseVec) -> SparseVec {
        SparseVec::from_entries(v.iter().map(|(j, a)| (self.act_word(w, j), a.clone())))
    }

    fn validate(&self, relators: &[Word]) -> Result<()> {
        let n = self.len();
        for (s, perm) in self.action.iter().enumerate() {
            let mut seen = vec![false; n];
            for &x in perm {
                if std::mem::replace(&mut seen[x as usize], true) {
                    return Err(Error::Invalid(format!("generator {s} does not act bijectively")));
                }
            }
        }
        for r in relators {
            if let Some(j) = (0..n as u32).find(|&j| self.act_word(r, j) != j) {
                return Err(Error::Invalid(format!("a relator moves basis element {}", self.labels[j as usize])));
            }
        }
        Ok(())
    }

    /// Basis labels, then one permutation line per generator.
    pub fn export(&self, generators: &[String]) -> String {
        let mut out = String::from("# conepair permutation-module v1\n");
        for (i, l) in self.labels.iter().enumerate() {
            let _ = writeln!(out, "basis {i} {l}");
        }
        for (name, perm) in generators.iter().zip(&self.action) {
            let imgs: Vec<String> = perm.iter().map(u32::to_string).collect();
            let _ = writeln!(out, "act {name} {}", imgs.join(" "));
        }
        out
    }
}

/// `ε(v) = Σ v_j`.
pub fn augmentation(v: &SparseVec) -> Int {
    v.iter().fold(Int::from(0), |acc, (_, a)| &acc + a)
}

/// A basis of `Δ = ker ε` by differences of basis cosets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AugmentationKernel {
    /// Column `k − 1` is `b_0 − b_k`.
    pub columns: Vec<SparseVec>,
    pub rank: usize,
}

impl AugmentationKernel {
    /// Coordinates of `v ∈ Δ` in the difference basis; `None` if `ε(v) ≠ 0`.
    pub fn coordinates(&self, v: &SparseVec) -> Option<Vec<Int>> {
        if !augmentation(v).is_zero() {
            return None;
        }
        // v = Σ c_k (b_0 − b_k) forces c_k = −v_k
        Some((1..=self.columns.len() as u32).map(|k| -v.get(k)).collect())
    }
}

/// Kernel of the augmentation, with its rank certified by elementary divisors.
pub fn augmentation_kernel(m: &PermutationModule) -> Result<AugmentationKernel> {
    let n = m.len();
    let columns: Vec<SparseVec> = (1..n as u32)
        .map(|k| SparseVec::from_entries([(0, Int::from(1)), (k, Int::from(-1))]))
        .collect();
    let rank = elementary_divisors(columns.clone(), n).len();
    if rank + 1 != n {
        return Err(Error::Invalid(format!("kernel rank {rank} differs from {} − 1", n)));
    }
    Ok(AugmentationKernel { columns, rank })
}
