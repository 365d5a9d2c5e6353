//! Finite-scale probe of the directed system `H_i(R̂_α) → H_i(R̂_β)`.

use std::fmt::Write as _;

use rayon::prelude::*;

use super::{build_unicone_rips, embedding};
use crate::error::{Error, Result};
use crate::geometry::PairModel;
use crate::homology::{chain_complex, chain_map, homology, push_chain, BoundarySpace, Coefficients};

/// One `(α, β)` cell with its inner and outer radii.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ProbeCell {
    pub alpha: usize,
    pub beta: usize,
    pub inner: usize,
    pub outer: usize,
}

/// The cells to probe, in report order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Schedule {
    pub cells: Vec<ProbeCell>,
}

fn betas(alphas: &[usize], alpha: usize) -> Vec<usize> {
    let mut bs: Vec<usize> = alphas.iter().copied().filter(|&b| b > alpha).collect();
    bs.push(alpha + 1);
    bs.sort_unstable();
    bs.dedup();
    bs
}

impl Schedule {
    /// Every listed `α` against `α + 1` and the larger listed values, with outer radius
    /// `inner + β`.
    pub fn auto(alphas: &[usize], inner: usize) -> Schedule {
        let mut cells = Vec::new();
        for &a in alphas {
            for b in betas(alphas, a) {
                cells.push(ProbeCell {
                    alpha: a,
                    beta: b,
                    inner,
                    outer: inner + b,
                });
            }
        }
        cells.sort_unstable();
        cells.dedup();
        Schedule { cells }
    }

    /// Same cells as [`Schedule::auto`] with fixed radii.
    pub fn fixed(alphas: &[usize], inner: usize, outer: usize) -> Schedule {
        let mut s = Self::auto(alphas, inner);
        for c in &mut s.cells {
            c.outer = outer;
        }
        s
    }

    /// Explicit `β` values for every `α`.
    pub fn explicit(alphas: &[usize], betas: &[usize], inner: usize, outer: usize) -> Schedule {
        let mut cells: Vec<ProbeCell> = alphas
            .iter()
            .flat_map(|&a| {
                betas.iter().filter(move |&&b| b > a).map(move |&b| ProbeCell {
                    alpha: a,
                    beta: b,
                    inner,
                    outer,
                })
            })
            .collect();
        cells.sort_unstable();
        cells.dedup();
        Schedule { cells }
    }

    pub fn validate(&self) -> Result<()> {
        for c in &self.cells {
            if c.beta <= c.alpha {
                return Err(Error::Precondition(format!("beta {} is not above alpha {}", c.beta, c.alpha)));
            }
            if c.outer < c.inner + c.beta {
                return Err(Error::Margin(format!(
                    "outer radius {} is below inner radius {} + beta {}",
                    c.outer, c.inner, c.beta
                )));
            }
            if c.inner < c.alpha + 1 {
                return Err(Error::Margin(format!(
                    "inner radius {} is below alpha {} + 1",
                    c.inner, c.alpha
                )));
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    /// Every reliable generator bounds in the outer complex.
    ZeroImage,
    /// Generator `generator` (a cycle on `support` simplices) survives.
    NonzeroImage { generator: usize, support: usize },
    Unknown(String),
}

impl Verdict {
    pub fn tag(&self) -> &'static str {
        match self {
            Verdict::ZeroImage => "ZeroImage",
            Verdict::NonzeroImage { .. } => "NonzeroImage",
            Verdict::Unknown(_) => "Unknown",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProbeLine {
    pub cell: ProbeCell,
    pub verdict: Verdict,
    /// Rank of `H_i` of the reliable inner complex.
    pub generators: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TrivialityReport {
    pub degree: usize,
    pub coefficients: Coefficients,
    pub lines: Vec<ProbeLine>,
}

impl TrivialityReport {
    /// Zero images stay zero for larger `β` at the same radii.
    pub fn monotonicity_violation(&self) -> Option<(ProbeCell, ProbeCell)> {
        for a in &self.lines {
            for b in &self.lines {
                let same = (a.cell.alpha, a.cell.inner, a.cell.outer) == (b.cell.alpha, b.cell.inner, b.cell.outer);
                if same
                    && a.cell.beta < b.cell.beta
                    && a.verdict == Verdict::ZeroImage
                    && matches!(b.verdict, Verdict::NonzeroImage { .. })
                {
                    return Some((a.cell, b.cell));
                }
            }
        }
        None
    }

    pub fn export(&self) -> String {
        let mut out = String::from("# conepair triviality v1\n");
        let _ = writeln!(out, "degree {} coefficients {}", self.degree, self.coefficients);
        for l in &self.lines {
            let c = l.cell;
            let witness = match &l.verdict {
                Verdict::NonzeroImage { support, .. } => support.to_string(),
                _ => "0".to_string(),
            };
            let _ = write!(
                out,
                "probe i={} alpha={} beta={} r_inner={} r_outer={} verdict={} witness={} generators={}",
                self.degree,
                c.alpha,
                c.beta,
                c.inner,
                c.outer,
                l.verdict.tag(),
                witness,
                l.generators
            );
            if let Verdict::Unknown(why) = &l.verdict {
                let _ = write!(out, " reason=\"{why}\"");
            }
            out.push('\n');
        }
        out
    }
}

fn probe_cell(pair: &PairModel, degree: usize, cell: ProbeCell, coefficients: Coefficients) -> Result<ProbeLine> {
    let cap = degree + 1;
    let inner = build_unicone_rips(pair, cell.alpha, cell.inner, cap)?;
    let outer = build_unicone_rips(pair, cell.beta, cell.outer, cap)?;
    if !inner.exact {
        return Ok(ProbeLine {
            cell,
            verdict: Verdict::Unknown("inner complex is under-approximate".into()),
            generators: 0,
        });
    }
    let reliable = inner.reliable_subcomplex();
    let h = homology(&chain_complex(&reliable, coefficients), degree, true)?;
    let m = embedding(&inner, &outer)?;
    let images = chain_map(&m, &reliable, &outer.complex, degree)?;
    let bounds = BoundarySpace::new(&chain_complex(&outer.complex, coefficients), degree);
    let survivor = h
        .generators
        .iter()
        .enumerate()
        .find(|(_, z)| !bounds.contains(&push_chain(&images, z)));
    let verdict = match survivor {
        None => Verdict::ZeroImage,
        Some(_) if !outer.exact => Verdict::Unknown("outer complex is under-approximate".into()),
        Some((generator, z)) => Verdict::NonzeroImage {
            generator,
            support: z.len(),
        },
    };
    Ok(ProbeLine {
        cell,
        verdict,
        generators: h.rank(),
    })
}

/// Pushes `H_i` of the reliable part of `R̂_α` at the inner radius into `R̂_β` at the
/// outer radius, for every scheduled cell. Cap exhaustion gives `Unknown`.
pub fn essential_triviality_probe(
    pair: &PairModel,
    degree: usize,
    schedule: &Schedule,
    coefficients: Coefficients,
) -> Result<TrivialityReport> {
    schedule.validate()?;
    let lines = schedule
        .cells
        .par_iter()
        .map(|&cell| match probe_cell(pair, degree, cell, coefficients) {
            Err(Error::CapExceeded(why)) => Ok(ProbeLine {
                cell,
                verdict: Verdict::Unknown(why),
                generators: 0,
            }),
            other => other,
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(TrivialityReport {
        degree,
        coefficients,
        lines,
    })
}
