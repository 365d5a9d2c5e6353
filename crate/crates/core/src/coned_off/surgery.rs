use super::graph::ConedOffGraph;
use crate::error::{Error, Result};

/// One replacement of a cone visit `v, A, w` by a group path from `v` to `w`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Surgery {
    pub cone: usize,
    /// Group path `ζ` from `w` to `v`.
    pub path: Vec<usize>,
    /// The unicone loop `A, ζ` the homotopy crosses.
    pub consumed: Vec<usize>,
    /// The loop after the surgery.
    pub result: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurgeryCertificate {
    pub surgeries: Vec<Surgery>,
    /// The final cone-free loop.
    pub result: Vec<usize>,
}

impl SurgeryCertificate {
    /// Length of the longest unicone loop consumed; cells on loops of length below
    /// one more than this suffice for the homotopy.
    pub fn max_consumed_len(&self) -> usize {
        self.surgeries.iter().map(|s| s.consumed.len()).max().unwrap_or(0)
    }
}

/// Removes every cone vertex of a closed loop, first to last, by shortest group paths
/// inside the truncation.
pub fn reduce_loop_to_unicone(graph: &ConedOffGraph, lp: &[usize]) -> Result<SurgeryCertificate> {
    let n = lp.len();
    for i in 0..n {
        if !graph.has_edge(lp[i], lp[(i + 1) % n]) {
            return Err(Error::Invalid(format!(
                "{} and {} are not adjacent",
                graph.label(lp[i]),
                graph.label(lp[(i + 1) % n])
            )));
        }
    }
    let mut cur = lp.to_vec();
    let mut surgeries = Vec::new();
    while let Some(pos) = cur.iter().position(|&v| graph.is_cone(v)) {
        let m = cur.len();
        let a = cur[pos];
        let v = cur[(pos + m - 1) % m];
        let w = cur[(pos + 1) % m];
        let zeta = graph.shortest_path(w, v, true).ok_or_else(|| {
            Error::Margin(format!(
                "no group path from {} to {} inside the truncation",
                graph.label(w),
                graph.label(v)
            ))
        })?;
        let mut consumed = vec![a];
        consumed.extend(&zeta);
        // rotate so the cone is last, then splice in v → w (the reverse of ζ)
        let mut rotated: Vec<usize> = (1..m).map(|i| cur[(pos + i) % m]).collect();
        if v == w {
            // backtrack v, A, v
            rotated.pop();
        } else {
            rotated.extend(zeta[1..zeta.len() - 1].iter().rev());
        }
        surgeries.push(Surgery {
            cone: a,
            path: zeta,
            consumed,
            result: rotated.clone(),
        });
        cur = rotated;
    }
    Ok(SurgeryCertificate {
        surgeries,
        result: cur,
    })
}
