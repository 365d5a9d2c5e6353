use rayon::prelude::*;

use super::{Constants, PairMap, Rational};
use crate::error::{Error, Result};
use crate::geometry::{CosetVertex, Distance, PairModel, Truncation};
use crate::presentation::Element;

/// Largest search radius used when measuring cone distances.
const MEASURE_LIMIT: usize = 32;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MapWitness {
    /// `d(f₁x, f₁y) > L·d(x, y) + C`.
    Lipschitz {
        x: Element,
        y: Element,
        src_distance: u32,
        dst_distance: u32,
    },
    /// A point of `f₁(A)` or of `f₂(A)` too far from the other set.
    Cone {
        cone: CosetVertex,
        point: Element,
        distance: Distance,
    },
    /// `d(r₁f₁g, g) > C`.
    Displacement { g: Element, distance: u32 },
    /// `r₂f₂(A) ≠ A`.
    Section { cone: CosetVertex, image: CosetVertex },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CheckResult {
    Pass,
    Fail(MapWitness),
}

impl CheckResult {
    pub fn passed(&self) -> bool {
        matches!(self, CheckResult::Pass)
    }
}

fn exact(d: Distance, what: impl FnOnce() -> String) -> Result<u32> {
    d.exact()
        .ok_or_else(|| Error::Margin(format!("{} is beyond the search caps", what())))
}

fn check_radius(f: &PairMap, radius: usize) -> Result<usize> {
    if radius > f.radius() {
        return Err(Error::Precondition(format!(
            "map `{}` is tabulated on radius {}, not {radius}",
            f.name,
            f.radius()
        )));
    }
    Ok(f.trunc.ball.prefix(radius))
}

/// The part of the target trusted for the backward half of a truncated Hausdorff distance:
/// the ball of radius one less than the nearest image of the source sphere.
pub(crate) struct Window {
    pub trunc: Truncation,
}

pub(crate) fn window(f: &PairMap, radius: usize) -> Result<Window> {
    let n = check_radius(f, radius)?;
    let ball = &f.trunc.ball;
    let dm = &f.dst.model;
    let table = f.group_table();
    let length = |i: usize| exact(dm.length(&table[i]), || format!("|{}|", dm.render(&table[i])));
    let src_exhausted = f.src.model.ball(radius + 1)?.len() == n;
    let rho = if src_exhausted {
        (0..n).map(length).try_fold(0u32, |a, d| d.map(|d| a.max(d)))?
    } else {
        (0..n)
            .filter(|&i| ball.length(i) as usize == radius)
            .map(length)
            .try_fold(u32::MAX, |a, d| d.map(|d| a.min(d)))?
            .saturating_sub(1)
    };
    Ok(Window {
        trunc: Truncation::new(&f.dst, rho as usize)?,
    })
}

/// Least `d(x, B)` if it is at most `limit`, searched over doubling balls. A ball that
/// outgrows the element cap ends the search.
pub(crate) fn distance_to_cone(dst: &PairModel, x: &Element, b: &CosetVertex, limit: usize) -> Result<Option<u32>> {
    let mut r = 0;
    loop {
        let ball = match dst.model.ball(r) {
            Ok(ball) => ball,
            Err(Error::CapExceeded(_)) => return Ok(None),
            Err(e) => return Err(e),
        };
        if let Some(d) = dst.distance_to_coset(x, b, &ball) {
            return Ok(Some(d));
        }
        if r >= limit {
            return Ok(None);
        }
        r = (2 * r).clamp(1, limit);
    }
}

/// Truncated `hdist(f₁(A ∩ ball), B)`, with the worst point. Forward distances are searched
/// up to `limit`; beyond it the result is a lower bound.
pub(crate) fn cone_hdist(
    dst: &PairModel,
    images: &[Element],
    b: &CosetVertex,
    win: &Window,
    limit: usize,
) -> Result<(Distance, Element)> {
    let dm = &dst.model;
    let mut worst = (Distance::Exact(0), images[0].clone());
    for x in images {
        match distance_to_cone(dst, x, b, limit)? {
            None => return Ok((Distance::LowerBound(limit as u32 + 1), x.clone())),
            Some(d) if Distance::Exact(d) > worst.0 => worst = (Distance::Exact(d), x.clone()),
            Some(_) => {}
        }
    }
    if let Some(c) = win.trunc.cone_id(b) {
        for &y in &win.trunc.members[c] {
            let y = win.trunc.ball.element(y as usize);
            let mut best = u32::MAX;
            for x in images {
                let d = exact(dm.distance(y, x), || format!("d({}, {})", dm.render(y), dm.render(x)))?;
                best = best.min(d);
            }
            if Distance::Exact(best) > worst.0 {
                worst = (Distance::Exact(best), y.clone());
            }
        }
    }
    Ok(worst)
}

/// Source cones meeting `ball(radius)` with their members there and the `f₁`-images.
fn cones_in(f: &PairMap, n: usize) -> Vec<(usize, Vec<Element>)> {
    let table = f.group_table();
    f.trunc
        .members
        .iter()
        .enumerate()
        .filter_map(|(c, ms)| {
            let imgs: Vec<Element> = ms
                .iter()
                .filter(|&&g| (g as usize) < n)
                .map(|&g| table[g as usize].clone())
                .collect();
            (!imgs.is_empty()).then_some((c, imgs))
        })
        .collect()
}

fn dst_distance(f: &PairMap, x: &Element, y: &Element) -> Result<u32> {
    let dm = &f.dst.model;
    exact(dm.distance(x, y), || format!("d({}, {})", dm.render(x), dm.render(y)))
}

fn src_distance(f: &PairMap, x: &Element, y: &Element) -> Result<u32> {
    let sm = &f.src.model;
    exact(sm.distance(x, y), || format!("d({}, {})", sm.render(x), sm.render(y)))
}

/// Definition of a Lipschitz map of pairs, checked on `ball(radius)`.
pub fn check_lipschitz_pair(f: &PairMap, radius: usize) -> Result<CheckResult> {
    let n = check_radius(f, radius)?;
    let ball = &f.trunc.ball;
    let table = f.group_table();
    let Constants { l, c, m } = f.constants;
    let bad = (0..n)
        .into_par_iter()
        .map(|i| -> Result<Option<MapWitness>> {
            for j in i + 1..n {
                let (x, y) = (ball.element(i), ball.element(j));
                let ds = src_distance(f, x, y)?;
                let dd = dst_distance(f, &table[i], &table[j])?;
                if Rational::from_integer(dd as i64) > l * Rational::from_integer(ds as i64) + c {
                    return Ok(Some(MapWitness::Lipschitz {
                        x: x.clone(),
                        y: y.clone(),
                        src_distance: ds,
                        dst_distance: dd,
                    }));
                }
            }
            Ok(None)
        })
        .find_map_first(|r| match r {
            Ok(None) => None,
            other => Some(other),
        });
    if let Some(r) = bad {
        return r.map(|w| CheckResult::Fail(w.expect("only failures are kept")));
    }
    let win = window(f, radius)?;
    // d < M for integer d means d ≤ ⌈M⌉ − 1
    let ceil = m.ceil().to_integer();
    for (cid, imgs) in cones_in(f, n) {
        let b = &f.cone_table()[cid];
        if ceil <= 0 {
            return Ok(CheckResult::Fail(MapWitness::Cone {
                cone: f.trunc.cones[cid].clone(),
                point: imgs[0].clone(),
                distance: Distance::LowerBound(0),
            }));
        }
        let limit = (ceil - 1) as usize;
        let (d, p) = cone_hdist(&f.dst, &imgs, b, &win, limit)?;
        if Rational::from_integer(d.value() as i64) >= m || d.exact().is_none() {
            return Ok(CheckResult::Fail(MapWitness::Cone {
                cone: f.trunc.cones[cid].clone(),
                point: p,
                distance: d,
            }));
        }
    }
    Ok(CheckResult::Pass)
}

/// Least constants valid on the whole table: `L` is the largest image length of a
/// generator edge (at least 1), `C` the largest excess over `L·d` across all pairs, and
/// `M` one more than the largest truncated cone distance.
pub fn measure_constants(f: &PairMap) -> Result<Constants> {
    let radius = f.radius();
    let n = f.trunc.ball.len();
    let ball = &f.trunc.ball;
    let table = f.group_table();
    let sm = &f.src.model;
    let l = (0..n)
        .into_par_iter()
        .map(|i| -> Result<u32> {
            let x = ball.element(i);
            let mut best = 0;
            for s in sm.generators() {
                if let Some(j) = ball.index_of(&sm.mul(x, s)) {
                    best = best.max(dst_distance(f, &table[i], &table[j])?);
                }
            }
            Ok(best)
        })
        .collect::<Result<Vec<u32>>>()?
        .into_iter()
        .max()
        .unwrap_or(0)
        .max(1) as i64;
    let c = (0..n)
        .into_par_iter()
        .map(|i| -> Result<i64> {
            let mut best = 0i64;
            for j in i + 1..n {
                let ds = src_distance(f, ball.element(i), ball.element(j))? as i64;
                let dd = dst_distance(f, &table[i], &table[j])? as i64;
                best = best.max(dd - l * ds);
            }
            Ok(best)
        })
        .collect::<Result<Vec<i64>>>()?
        .into_iter()
        .max()
        .unwrap_or(0);
    let win = window(f, radius)?;
    let limit = MEASURE_LIMIT.min(f.dst.model.caps().max_radius);
    let mut m = 0u32;
    for (cid, imgs) in cones_in(f, n) {
        let (d, p) = cone_hdist(&f.dst, &imgs, &f.cone_table()[cid], &win, limit)?;
        let d = d.exact().ok_or_else(|| {
            Error::Margin(format!(
                "no point of the image cone within {limit} of {}",
                f.dst.model.render(&p)
            ))
        })?;
        m = m.max(d);
    }
    Constants::integers(l, c, m as i64 + 1)
}

fn check_composable(f: &PairMap, r: &PairMap) -> Result<()> {
    if !f.dst.same_as(&r.src) || !r.dst.same_as(&f.src) {
        return Err(Error::Precondition(format!(
            "`{}` and `{}` are not maps between the same two pairs",
            f.name, r.name
        )));
    }
    Ok(())
}

/// `max d(r₁f₁g, g)` over `ball(radius)`.
pub fn retraction_displacement(f: &PairMap, r: &PairMap, radius: usize) -> Result<u32> {
    check_composable(f, r)?;
    let n = check_radius(f, radius)?;
    let mut worst = 0;
    for (i, h) in f.group_table()[..n].iter().enumerate() {
        let back = r.image(h).ok_or_else(|| {
            Error::Margin(format!("{} is outside the retraction's table", f.dst.model.render(h)))
        })?;
        worst = worst.max(src_distance(f, back, f.trunc.ball.element(i))?);
    }
    Ok(worst)
}

/// `d(r₁f₁g, g) ≤ C` on `ball(radius)` with `C` the larger of the two maps' `C`, and
/// `r₂f₂ = id` on the cones meeting the ball. Both maps are assumed Lipschitz.
pub fn check_quasi_retraction(f: &PairMap, r: &PairMap, radius: usize) -> Result<CheckResult> {
    check_composable(f, r)?;
    let n = check_radius(f, radius)?;
    let c = f.constants.c.max(r.constants.c);
    for (i, h) in f.group_table()[..n].iter().enumerate() {
        let g = f.trunc.ball.element(i);
        let back = r.image(h).ok_or_else(|| {
            Error::Margin(format!("{} is outside the retraction's table", f.dst.model.render(h)))
        })?;
        let d = src_distance(f, back, g)?;
        if Rational::from_integer(d as i64) > c {
            return Ok(CheckResult::Fail(MapWitness::Displacement {
                g: g.clone(),
                distance: d,
            }));
        }
    }
    for (cid, _) in cones_in(f, n) {
        let a = &f.trunc.cones[cid];
        let b = &f.cone_table()[cid];
        let back = r.cone_image(b).ok_or_else(|| {
            Error::Margin(format!(
                "cone {} is outside the retraction's table",
                f.dst.model.render(&b.representative)
            ))
        })?;
        if back != a {
            return Ok(CheckResult::Fail(MapWitness::Section {
                cone: a.clone(),
                image: back.clone(),
            }));
        }
    }
    Ok(CheckResult::Pass)
}
