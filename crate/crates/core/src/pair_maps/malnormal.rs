use crate::error::{Error, Result};
use crate::geometry::PairModel;
use crate::presentation::Element;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MalnormalVerdict {
    NoViolationFound,
    /// `x ≠ 1` lies in `P₁ ∩ gP₂g⁻¹`, yet `P₁ ≠ P₂` (as collection entries) or `g ∉ P₁`.
    Violation {
        g: Element,
        p1: usize,
        p2: usize,
        x: Element,
    },
}

/// Scans `g ∈ ball(R)` and nontrivial `x ∈ P₁ ∩ ball(R)` for `g⁻¹xg ∈ P₂`. Repeated
/// entries count as different members of the collection. A scan can refute
/// malnormality but never confirm it.
pub fn malnormality_probe(pair: &PairModel, radius: usize) -> Result<MalnormalVerdict> {
    if !pair.is_exact() {
        return Err(Error::Precondition("the malnormality probe needs an exact backend".into()));
    }
    let model = &pair.model;
    let ball = model.ball(radius)?;
    let e = model.identity();
    let in_entry = |i: usize, x: &Element| pair.key(i, x) == pair.key(i, &e);
    let members: Vec<Vec<&Element>> = (0..pair.len())
        .map(|i| ball.elements().iter().filter(|x| **x != e && in_entry(i, x)).collect())
        .collect();
    for g in ball.elements() {
        let gi = model.inverse(g);
        for (p1, xs) in members.iter().enumerate() {
            let allowed = |p2: usize| p1 == p2 && in_entry(p1, g);
            for p2 in 0..pair.len() {
                if allowed(p2) {
                    continue;
                }
                if let Some(x) = xs.iter().find(|x| in_entry(p2, &model.mul(&model.mul(&gi, x), g))) {
                    return Ok(MalnormalVerdict::Violation {
                        g: g.clone(),
                        p1,
                        p2,
                        x: (*x).clone(),
                    });
                }
            }
        }
    }
    Ok(MalnormalVerdict::NoViolationFound)
}
