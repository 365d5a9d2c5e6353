use super::checks::retraction_displacement;
use super::{PairMap, Rational};
use crate::error::{Error, Result};
use crate::homology::{chain_complex, chain_map, homology, push_chain, BoundarySpace, Coefficients, Int};
use crate::rips::{build_unicone_rips, embedding, induced_simplicial_map};

/// Scales `α ≤ α′ ≤ β′` and `β` of the square `R̂_α(G) → R̂_α′(H) ⊂ R̂_β′(H) → R̂_β(G)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SquareScales {
    pub alpha: usize,
    pub alpha_prime: usize,
    pub beta: usize,
    pub beta_prime: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SquareVerdict {
    /// `r_*f_*` and the inclusion agree on every generator of `H_i(R̂_α)`.
    Agree { generators: usize },
    /// The images of generator `generator` differ by a non-boundary.
    Disagree { generator: usize, support: usize },
}

fn ceil(x: Rational) -> usize {
    x.ceil().to_integer().max(0) as usize
}

/// Compares `H_i(r_* ∘ f_*)` with `H_i` of the inclusion `R̂_α ⊂ R̂_β` on generators.
///
/// Scale conditions use each map's own constants: `α′ ≥ L_f·α + C_f + M_f`, `β′ ≥ α′`,
/// `β ≥ L_r·β′ + 2C + M_r` with `C` the larger of `C_r` and the measured displacement
/// of `r₁f₁`. Radii are derived from the tables: the source complex uses `f`'s radius,
/// the middle one reaches the images of `f`, the target one the images of `r`.
pub fn homotopy_square_check(
    f: &PairMap,
    r: &PairMap,
    scales: SquareScales,
    degree: usize,
    coefficients: Coefficients,
) -> Result<SquareVerdict> {
    let SquareScales {
        alpha,
        alpha_prime,
        beta,
        beta_prime,
    } = scales;
    let disp = retraction_displacement(f, r, f.radius())?;
    let (cf, cr) = (&f.constants, &r.constants);
    let c = cr.c.max(Rational::from_integer(disp as i64));
    let int = |n: usize| Rational::from_integer(n as i64);
    if int(alpha_prime) < cf.l * int(alpha) + cf.c + cf.m {
        return Err(Error::Precondition(format!(
            "alpha' = {alpha_prime} is below L·alpha + C + M = {}",
            cf.l * int(alpha) + cf.c + cf.m
        )));
    }
    if beta_prime < alpha_prime {
        return Err(Error::Precondition(format!("beta' = {beta_prime} is below alpha' = {alpha_prime}")));
    }
    let need = cr.l * int(beta_prime) + c * 2 + cr.m;
    if int(beta) < need {
        return Err(Error::Precondition(format!("beta = {beta} is below L·beta' + 2C + M = {need}")));
    }
    let cap = degree + 1;
    let rx = f.radius();
    let ry = f.image_radius()? + ceil(cf.m);
    if ry > r.radius() {
        return Err(Error::Margin(format!(
            "retraction is tabulated on radius {}, the middle complex needs {ry}",
            r.radius()
        )));
    }
    let r_mid = r.restrict(ry)?;
    let rz = rx.max(r_mid.image_radius()? + ceil(cr.m));
    let x = build_unicone_rips(&f.src, alpha, rx, cap)?;
    let y = build_unicone_rips(&f.dst, beta_prime, ry, cap)?;
    let z = build_unicone_rips(&f.src, beta, rz, cap)?;
    let fm = induced_simplicial_map(f, &x, &y)?;
    let rm = induced_simplicial_map(&r_mid, &y, &z)?;
    let composite = fm.then(&rm);
    let inclusion = embedding(&x, &z)?;
    let hx = homology(&chain_complex(&x.complex, coefficients), degree, true)?;
    let cz = chain_complex(&z.complex, coefficients);
    let bz = BoundarySpace::new(&cz, degree);
    let via = chain_map(&composite, &x.complex, &z.complex, degree)?;
    let direct = chain_map(&inclusion, &x.complex, &z.complex, degree)?;
    for (j, gen) in hx.generators.iter().enumerate() {
        let diff = push_chain(&via, gen).combine(&Int::from(1), &Int::from(-1), &push_chain(&direct, gen));
        if !bz.contains(&diff) {
            return Ok(SquareVerdict::Disagree {
                generator: j,
                support: gen.len(),
            });
        }
    }
    Ok(SquareVerdict::Agree {
        generators: hx.rank(),
    })
}
