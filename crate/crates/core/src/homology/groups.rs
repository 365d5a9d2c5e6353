//! Homology groups with generators and class coordinates.

use std::sync::Arc;

use super::chain::{ChainComplex, Coefficients};
use super::echelon::Echelon;
use super::int::Int;
use super::modp::{rank_mod_p, FpEchelon, FpVec};
use super::snf::{elementary_divisors, eliminate_units, prime_powers, smith_normal_form, Matrix};
use super::sparse::SparseVec;
use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub struct HomologyResult {
    pub degree: usize,
    pub reduced: bool,
    pub coefficients: Coefficients,
    pub betti: usize,
    /// Prime-power elementary divisors (integer coefficients only).
    pub torsion: Vec<Int>,
    /// Invariant factors greater than one.
    pub invariant_factors: Vec<Int>,
    /// Cycle representatives: free generators first, then torsion generators.
    pub generators: Vec<SparseVec>,
    /// Order of each generator, `None` when infinite.
    pub orders: Vec<Option<Int>>,
    /// Rank of the cycle group `Z_i`.
    pub cycle_rank: usize,
    /// Rank of the boundary group `B_i`.
    pub boundary_rank: usize,
    presenter: Arc<Presenter>,
}

#[derive(Debug)]
enum Presenter {
    Integral(Box<IntegralPresenter>),
    Modular(ModularPresenter),
}

#[derive(Debug)]
struct IntegralPresenter {
    kernel: Echelon,
    boundaries: Echelon,
    units: Vec<(u32, SparseVec)>,
    /// Residual rows, in SNF order, with `U` of the residual SNF.
    rows: Vec<u32>,
    u: Matrix,
    /// For each generator: a kernel-basis row (free, untouched) or an SNF index.
    slots: Vec<Slot>,
}

#[derive(Clone, Copy, Debug)]
enum Slot {
    Row(u32),
    Snf(usize),
}

#[derive(Debug)]
struct ModularPresenter {
    p: u64,
    /// Boundaries then generators, generators labelled.
    basis: FpEchelon,
    boundaries: FpEchelon,
    generators: usize,
}

impl HomologyResult {
    /// Coordinates of the class of a cycle in the generators, each reduced modulo the
    /// generator's order when finite. Errors when `z` is not a cycle.
    pub fn class_of(&self, z: &SparseVec) -> Result<Vec<Int>> {
        match &*self.presenter {
            Presenter::Integral(ip) => {
                let coords = ip
                    .kernel
                    .coordinates(z)
                    .ok_or_else(|| Error::Invalid("chain is not a cycle".into()))?;
                let mut y = SparseVec::from_entries(coords.into_iter().map(|(j, a)| (j as u32, a)));
                for (r, col) in &ip.units {
                    let a = y.get(*r);
                    if !a.is_zero() {
                        let u = col.get(*r);
                        y = y.axpy(&-(&a * &u), col);
                    }
                }
                let mut out = Vec::with_capacity(ip.slots.len());
                for (slot, order) in ip.slots.iter().zip(&self.orders) {
                    let c = match *slot {
                        Slot::Row(r) => y.get(r),
                        Slot::Snf(j) => ip
                            .rows
                            .iter()
                            .enumerate()
                            .fold(Int::ZERO, |s, (k, &r)| &s + &(&ip.u[j][k] * &y.get(r))),
                    };
                    let c = match order {
                        Some(d) => &c - &(d * &c.div_floor(d)),
                        None => c,
                    };
                    out.push(c);
                }
                if self.coefficients == Coefficients::Q {
                    out.truncate(self.betti);
                }
                Ok(out)
            }
            Presenter::Modular(mp) => {
                let v = FpVec::from_int(z, mp.p);
                let combo = mp
                    .basis
                    .decompose(&v)
                    .ok_or_else(|| Error::Invalid("chain is not a cycle".into()))?;
                let mut out = vec![Int::ZERO; mp.generators];
                for &(j, a) in combo.entries() {
                    out[j as usize] = Int::from(a as i64);
                }
                Ok(out)
            }
        }
    }

    /// Whether a cycle bounds, decided by lattice (or field) membership.
    pub fn is_boundary(&self, z: &SparseVec) -> bool {
        match &*self.presenter {
            Presenter::Integral(ip) => match self.coefficients {
                Coefficients::Q => ip.boundaries.contains_rational(z),
                _ => ip.boundaries.contains(z),
            },
            Presenter::Modular(mp) => mp.boundaries.contains(&FpVec::from_int(z, mp.p)),
        }
    }

    pub fn rank(&self) -> usize {
        self.generators.len()
    }

    /// `Z^b ⊕ Z/d …` style summary.
    pub fn describe(&self) -> String {
        let field = match self.coefficients {
            Coefficients::Z => "Z".to_string(),
            Coefficients::Q => "Q".to_string(),
            Coefficients::Zp(p) => format!("Z/{p}"),
        };
        let mut parts = Vec::new();
        if self.betti > 0 {
            parts.push(if self.betti == 1 { field.clone() } else { format!("{field}^{}", self.betti) });
        }
        parts.extend(self.torsion.iter().map(|d| format!("Z/{d}")));
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }
}

fn check_degree(cc: &ChainComplex, i: usize) -> Result<()> {
    if i >= cc.len() {
        return Err(Error::Invalid(format!(
            "degree {i} is missing: the complex has degrees 0..{}",
            cc.len()
        )));
    }
    Ok(())
}

/// `H_i`, or `H̃_i` when `reduced` (degree zero augmented).
pub fn homology(cc: &ChainComplex, i: usize, reduced: bool) -> Result<HomologyResult> {
    check_degree(cc, i)?;
    match cc.coefficients {
        Coefficients::Zp(p) => Ok(modular(cc, i, reduced, p)),
        c => Ok(integral(cc, i, reduced, c)),
    }
}

fn integral(cc: &ChainComplex, i: usize, reduced: bool, coefficients: Coefficients) -> HomologyResult {
    let mut ker = Echelon::tracking();
    let mut raw = Vec::new();
    for (k, c) in cc.boundary_cols(i, reduced).into_iter().enumerate() {
        if let Some(z) = ker.insert(c, SparseVec::unit(k as u32)) {
            raw.push(z);
        }
    }
    let mut kernel = Echelon::new();
    for z in raw {
        let zero = kernel.insert(z, SparseVec::new());
        debug_assert!(zero.is_none(), "kernel vectors are independent");
    }
    let m = kernel.rank();
    let mut boundaries = Echelon::new();
    let upper = cc.boundary_cols(i + 1, false);
    let x: Vec<SparseVec> = upper
        .iter()
        .map(|b| {
            boundaries.insert(b.clone(), SparseVec::new());
            let coords = kernel.coordinates(b).expect("boundaries are cycles");
            SparseVec::from_entries(coords.into_iter().map(|(j, a)| (j as u32, a)))
        })
        .collect();
    let res = eliminate_units(x, m, true);
    let mut dead = vec![false; m];
    for &(r, _) in &res.units {
        dead[r as usize] = true;
    }
    let mut in_residual = vec![false; m];
    for &r in &res.rows {
        in_residual[r as usize] = true;
    }
    let dense = res.dense();
    let snf = smith_normal_form(&dense);
    let divisors = snf.divisors();
    let kb = kernel.basis();

    let mut free: Vec<(Slot, SparseVec)> = Vec::new();
    let mut tors: Vec<(Slot, SparseVec, Int)> = Vec::new();
    for r in 0..m as u32 {
        if !dead[r as usize] && !in_residual[r as usize] {
            free.push((Slot::Row(r), kb[r as usize].clone()));
        }
    }
    for j in 0..res.rows.len() {
        let d = divisors.get(j).cloned().unwrap_or(Int::ZERO);
        if d.is_one() {
            continue;
        }
        let chain = res.rows.iter().enumerate().fold(SparseVec::new(), |acc, (k, &r)| {
            acc.axpy(&snf.u_inv[k][j], &kb[r as usize])
        });
        if d.is_zero() {
            free.push((Slot::Snf(j), chain));
        } else {
            tors.push((Slot::Snf(j), chain, d));
        }
    }
    let boundary_rank = res.units.len() + divisors.iter().filter(|d| !d.is_zero()).count();
    let invariant_factors: Vec<Int> = tors.iter().map(|t| t.2.clone()).collect();
    let betti = free.len();
    let mut slots = Vec::new();
    let mut generators = Vec::new();
    let mut orders = Vec::new();
    for (s, g) in free {
        slots.push(s);
        generators.push(boundaries.reduce(&g));
        orders.push(None);
    }
    let integral = coefficients == Coefficients::Z;
    for (s, g, d) in tors {
        slots.push(s);
        if integral {
            generators.push(boundaries.reduce(&g));
            orders.push(Some(d));
        }
    }
    let presenter = IntegralPresenter {
        kernel,
        boundaries,
        units: res.units.iter().map(|u| u.0).zip(res.pivot_cols).collect(),
        rows: res.rows,
        u: snf.u,
        slots,
    };
    HomologyResult {
        degree: i,
        reduced,
        coefficients,
        betti,
        torsion: if integral { prime_powers(&invariant_factors) } else { Vec::new() },
        invariant_factors: if integral { invariant_factors } else { Vec::new() },
        generators,
        orders,
        cycle_rank: m,
        boundary_rank,
        presenter: Arc::new(Presenter::Integral(Box::new(presenter))),
    }
}

fn modular(cc: &ChainComplex, i: usize, reduced: bool, p: u64) -> HomologyResult {
    let mut ker = FpEchelon::new(p, true);
    let mut cycles = Vec::new();
    for (k, c) in cc.boundary_cols(i, reduced).iter().enumerate() {
        if let Some(z) = ker.insert(FpVec::from_int(c, p), FpVec::unit(k as u32)) {
            cycles.push(z);
        }
    }
    let mut boundaries = FpEchelon::new(p, false);
    for b in cc.boundary_cols(i + 1, false) {
        boundaries.insert(FpVec::from_int(&b, p), FpVec::default());
    }
    let mut basis = boundaries.clone().into_tracking();
    let mut generators = Vec::new();
    for z in &cycles {
        let rep = boundaries.reduce(z);
        if basis.insert(rep.clone(), FpVec::unit(generators.len() as u32)).is_none() {
            generators.push(SparseVec::from_entries(
                rep.entries().iter().map(|&(r, a)| (r, Int::from(a as i64))),
            ));
        }
    }
    let betti = generators.len();
    HomologyResult {
        degree: i,
        reduced,
        coefficients: Coefficients::Zp(p),
        betti,
        torsion: Vec::new(),
        invariant_factors: Vec::new(),
        orders: vec![None; betti],
        generators,
        cycle_rank: cycles.len(),
        boundary_rank: boundaries.rank(),
        presenter: Arc::new(Presenter::Modular(ModularPresenter {
            p,
            basis,
            boundaries,
            generators: betti,
        })),
    }
}

/// Betti number and invariant factors of one degree, without generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupSummary {
    pub betti: usize,
    pub invariant_factors: Vec<Int>,
}

/// Every degree of the complex from boundary ranks and elementary divisors.
pub fn homology_summary(cc: &ChainComplex, reduced: bool) -> Vec<GroupSummary> {
    let n = cc.len();
    let mut ranks = Vec::with_capacity(n + 1);
    let mut divisors = Vec::with_capacity(n + 1);
    for k in 0..=n {
        let cols = cc.boundary_cols(k, reduced);
        match cc.coefficients {
            Coefficients::Zp(p) => {
                ranks.push(rank_mod_p(&cols, p));
                divisors.push(Vec::new());
            }
            _ => {
                let d = elementary_divisors(cols, cc.target_size(k, reduced));
                ranks.push(d.len());
                let tors = match cc.coefficients {
                    Coefficients::Z => d.into_iter().filter(|x| !x.is_one()).collect(),
                    _ => Vec::new(),
                };
                divisors.push(tors);
            }
        }
    }
    (0..n)
        .map(|k| GroupSummary {
            betti: cc.size(k) - ranks[k] - ranks[k + 1],
            invariant_factors: divisors[k + 1].clone(),
        })
        .collect()
}

/// Universal coefficients: Q-betti equals Z-betti, and Z_p-betti equals Z-betti plus the
/// invariant factors divisible by `p` in degrees `k` and `k − 1`.
/// Returns the first violating `(degree, prime)`, with `prime = 0` for Q.
pub fn universal_coefficients_violation(
    cc: &ChainComplex,
    reduced: bool,
    primes: &[u64],
) -> Option<(usize, u64)> {
    let z = homology_summary(&cc.with_coefficients(Coefficients::Z), reduced);
    let q = homology_summary(&cc.with_coefficients(Coefficients::Q), reduced);
    for k in 0..z.len() {
        if z[k].betti != q[k].betti {
            return Some((k, 0));
        }
    }
    for &p in primes {
        let fp = homology_summary(&cc.with_coefficients(Coefficients::Zp(p)), reduced);
        let divisible = |k: usize| {
            z[k].invariant_factors
                .iter()
                .filter(|d| d.mod_u64(p) == 0)
                .count()
        };
        for k in 0..z.len() {
            let tor = if k > 0 { divisible(k - 1) } else { 0 };
            if fp[k].betti != z[k].betti + divisible(k) + tor {
                return Some((k, p));
            }
        }
    }
    None
}
