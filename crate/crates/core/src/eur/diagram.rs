//! Random points and boundary curves of the IC-entropy plane.

use rayon::prelude::*;

use super::{check_alpha, index_coincidence, renyi_entropy, theorem1_bounds};
use crate::error::{Error, Result};
use crate::qcore::{dirichlet_uniform, rng_for};

pub const DEFAULT_RESOLUTION: usize = 512;

/// One random distribution placed in the plane for one Rényi order.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DiagramSample {
    pub c: f64,
    pub h: f64,
    pub alpha: f64,
}

/// A point on the upper or lower boundary at a given `c_a`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BoundaryPoint {
    pub c: f64,
    pub lower: f64,
    pub upper: f64,
    pub alpha: f64,
}

#[derive(Clone, Debug, Default)]
pub struct InfoDiagram {
    /// Ordered by sample index, then by the requested `alphas`.
    pub samples: Vec<DiagramSample>,
    /// Ordered by `alphas`, then by increasing `c`.
    pub boundary: Vec<BoundaryPoint>,
}

/// Samples `n` flat-Dirichlet distributions of length `L` and evaluates
/// `(I_a, H_α)` for every `α`, plus both boundary curves on a uniform
/// `resolution`-point grid over `[L^{1-a}, 1]`.
///
/// Sample `i` draws from stream `i` of `seed`, so the output does not depend
/// on thread scheduling.
pub fn info_diagram_samples(
    l: usize,
    a: u32,
    alphas: &[f64],
    n: usize,
    seed: u64,
    resolution: usize,
) -> Result<InfoDiagram> {
    if l < 2 || a < 2 {
        return Err(Error::Argument(format!("need L >= 2 and a >= 2 (got L = {l}, a = {a})")));
    }
    if n == 0 || resolution < 2 {
        return Err(Error::Argument("need at least one sample and two grid points".into()));
    }
    for &alpha in alphas {
        check_alpha(alpha)?;
    }

    let samples = (0..n)
        .into_par_iter()
        .map(|i| {
            let mut rng = rng_for(seed, i as u64);
            let p = dirichlet_uniform(l, &mut rng);
            let c = index_coincidence(&p, a);
            alphas
                .iter()
                .map(|&alpha| {
                    renyi_entropy(&p, alpha).map(|h| DiagramSample { c, h, alpha })
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();

    let lo = (l as f64).powi(1 - a as i32);
    let step = (1.0 - lo) / (resolution - 1) as f64;
    let mut boundary = Vec::with_capacity(alphas.len() * resolution);
    for &alpha in alphas {
        let row = (0..resolution)
            .into_par_iter()
            .map(|k| {
                let c = if k + 1 == resolution { 1.0 } else { lo + step * k as f64 };
                theorem1_bounds(l, a, c, alpha).map(|b| BoundaryPoint {
                    c,
                    lower: b.lower,
                    upper: b.upper,
                    alpha,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        boundary.extend(row);
    }
    Ok(InfoDiagram { samples, boundary })
}
