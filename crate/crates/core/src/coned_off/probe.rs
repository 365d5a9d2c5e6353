use super::complex::{attach_unicone_cells, pi1_presentation};
use super::graph::build_coned_off;
use super::loops::simple_cycles;
use super::tietze::{simplify, TietzeBudget};
use crate::error::{Error, Result};
use crate::geometry::lattice::Lattice;
use crate::geometry::todd_coxeter::{enumerate, Enumeration};
use crate::geometry::PairModel;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ProbeBudget {
    pub tietze: TietzeBudget,
    /// Coset-table rows for the finite-quotient test.
    pub max_cosets: usize,
}

impl Default for ProbeBudget {
    fn default() -> Self {
        ProbeBudget {
            tietze: TietzeBudget::default(),
            max_cosets: 100_000,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ScVerdict {
    Yes,
    /// A loop (vertex labels) whose class is nontrivial, with the certificate.
    No { witness: Vec<String>, certificate: String },
    Unknown { reason: String },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScReport {
    pub verdict: ScVerdict,
    pub loops_tested: usize,
    pub faces: usize,
    pub pi1_rank: usize,
    /// Generators left after Tietze simplification.
    pub remaining_rank: usize,
}

/// Is every loop of length `≤ loop_len` in the inner truncation null-homotopic in
/// `Γ̂_l` truncated at `r_outer`?
pub fn probe_unicone_simply_connected(
    pair: &PairModel,
    l: usize,
    loop_len: usize,
    r_inner: usize,
    r_outer: usize,
    budget: ProbeBudget,
) -> Result<ScReport> {
    if r_outer < r_inner + l {
        return Err(Error::Margin(format!(
            "outer radius {r_outer} must be at least inner radius {r_inner} + l = {}",
            r_inner + l
        )));
    }
    let graph = build_coned_off(pair, r_outer)?;
    let cx = attach_unicone_cells(&graph, l)?;
    let pi1 = pi1_presentation(&cx, 0)?;
    let simp = simplify(pi1.rank(), &pi1.spec.relators, budget.tietze);

    // vertices of the inner truncation inside the outer graph
    let n = graph.group_count();
    let mut allowed = vec![false; graph.vertex_count()];
    for (i, a) in allowed.iter_mut().enumerate().take(n) {
        *a = graph.trunc.ball.length(i) as usize <= r_inner;
    }
    for (c, members) in graph.trunc.members.iter().enumerate() {
        allowed[n + c] = members.iter().any(|&g| allowed[g as usize]);
    }
    let loops = simple_cycles(&graph, 3, loop_len, usize::MAX, Some(&allowed), None);
    let report = |verdict| ScReport {
        verdict,
        loops_tested: loops.len(),
        faces: cx.faces.len(),
        pi1_rank: pi1.rank(),
        remaining_rank: simp.remaining.len(),
    };
    if simp.is_trivial() {
        return Ok(report(ScVerdict::Yes));
    }
    let (rank, rels) = simp.compact();
    let mut table = None;
    let mut abelian = None;
    let mut unknown = None;
    for lp in &loops {
        let w = simp.compact_word(&pi1.loop_word(lp));
        if w.is_empty() {
            continue;
        }
        let t = table.get_or_insert_with(|| enumerate(rank, &rels, &[], budget.max_cosets));
        if let Enumeration::Complete(t) = t {
            if t.trace(0, &w) == Some(0) {
                continue;
            }
            return Ok(report(ScVerdict::No {
                witness: lp.iter().map(|&v| graph.label(v)).collect(),
                certificate: format!("nontrivial in a finite quotient of order {}", t.len()),
            }));
        }
        let lat = abelian.get_or_insert_with(|| {
            Lattice::new(rank, &rels.iter().map(|r| r.exponent_vector(rank)).collect::<Vec<_>>())
        });
        if !lat.contains(&w.exponent_vector(rank)) {
            return Ok(report(ScVerdict::No {
                witness: lp.iter().map(|&v| graph.label(v)).collect(),
                certificate: "nonzero image in the abelianization".into(),
            }));
        }
        unknown.get_or_insert_with(|| {
            format!(
                "loop of length {} not decided within {} coset rows",
                lp.len(),
                budget.max_cosets
            )
        });
    }
    Ok(report(match unknown {
        Some(reason) => ScVerdict::Unknown { reason },
        None => ScVerdict::Yes,
    }))
}
