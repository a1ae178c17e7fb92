//! The two extremal distribution shapes at fixed index of coincidence.
//!
//! `P_x = (p, p_s, …, p_s)` of length `L` and `P_y = (p, …, p, p_s)` of the
//! minimal support `L'` both have `I_a = c_a`; between them they bound the
//! Rényi entropy of every length-`L` distribution with that coincidence.

use super::{check_alpha, checked_ic, renyi_entropy};
use crate::error::{Error, Result};
use crate::qcore::ProbabilityDistribution;

const BISECTION_TOL: f64 = 1e-13;
const INTEGER_SNAP_TOL: f64 = 1e-9;

/// Root of a nondecreasing `f` on `[lo, hi]` with `f(lo) <= target <= f(hi)`.
fn bisect(f: impl Fn(f64) -> f64, target: f64, mut lo: f64, mut hi: f64) -> f64 {
    for _ in 0..200 {
        if hi - lo <= BISECTION_TOL {
            break;
        }
        let mid = 0.5 * (lo + hi);
        if f(mid) < target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PxSolution {
    /// The large probability, in `[1/L, 1]`.
    pub p: f64,
    /// `(1 - p)/(L - 1)`.
    pub p_s: f64,
}

/// Solves `p^a + (L-1)((1-p)/(L-1))^a = c_a` for `p ∈ [1/L, 1]`.
pub fn solve_px(l: usize, a: u32, c: f64) -> Result<PxSolution> {
    let c = checked_ic(l, a, c)?;
    let lf = l as f64;
    let ai = a as i32;
    let lower = lf.powi(1 - ai);
    let p = if c <= lower {
        1.0 / lf
    } else if c >= 1.0 {
        1.0
    } else {
        let g = |p: f64| p.powi(ai) + (lf - 1.0) * ((1.0 - p) / (lf - 1.0)).powi(ai);
        bisect(g, c, 1.0 / lf, 1.0)
    };
    Ok(PxSolution {
        p,
        p_s: (1.0 - p) / (lf - 1.0),
    })
}

pub fn dist_px(l: usize, a: u32, c: f64) -> Result<ProbabilityDistribution> {
    let PxSolution { p, p_s } = solve_px(l, a, c)?;
    let mut probs = vec![p_s; l];
    probs[0] = p;
    ProbabilityDistribution::new(probs)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PySolution {
    /// Support size `L' = ⌈c_a^{1/(1-a)}⌉`.
    pub l_prime: usize,
    /// The repeated probability, in `[1/L', 1/(L'-1)]`.
    pub p: f64,
    /// `1 - (L'-1) p`.
    pub p_s: f64,
}

impl PySolution {
    pub fn is_uniform(&self) -> bool {
        (self.p - self.p_s).abs() <= 1e-12
    }
}

/// Solves `(L'-1) p^a + (1-(L'-1)p)^a = c_a` on the minimal support.
///
/// `c_a^{1/(1-a)}` within `1e-9` of an integer snaps to that integer, which
/// makes the distribution exactly uniform.
pub fn solve_py(a: u32, c: f64) -> Result<PySolution> {
    if a < 2 {
        return Err(Error::Argument(format!("need a >= 2 (got {a})")));
    }
    if !(c > 0.0) || c > 1.0 + 1e-12 {
        return Err(Error::Argument(format!("c_a = {c} outside (0, 1]")));
    }
    let c = c.min(1.0);
    let ai = a as i32;
    let x = c.powf(1.0 / (1.0 - a as f64));
    let nearest = x.round();
    if (x - nearest).abs() <= INTEGER_SNAP_TOL * nearest.max(1.0) {
        let l_prime = nearest.max(1.0) as usize;
        let p = 1.0 / l_prime as f64;
        return Ok(PySolution { l_prime, p, p_s: p });
    }
    let l_prime = x.ceil() as usize;
    let m = (l_prime - 1) as f64;
    let h = |p: f64| m * p.powi(ai) + (1.0 - m * p).max(0.0).powi(ai);
    let p = bisect(h, c, 1.0 / l_prime as f64, 1.0 / m);
    Ok(PySolution {
        l_prime,
        p,
        p_s: (1.0 - m * p).max(0.0),
    })
}

/// `P_y[c_a]` without its trailing zeros.
pub fn dist_py(a: u32, c: f64) -> Result<ProbabilityDistribution> {
    let PySolution { l_prime, p, p_s } = solve_py(a, c)?;
    let mut probs = vec![p; l_prime];
    probs[l_prime - 1] = p_s;
    ProbabilityDistribution::new(probs)
}

/// Range of `H_α` over length-`L` distributions with `I_a = c_a`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EntropyInterval {
    pub lower: f64,
    pub upper: f64,
}

/// For `α <= a` the range is `[H_α(P_y), H_α(P_x)]`; for `α >= a` the two
/// boundary distributions swap roles.
pub fn theorem1_bounds(l: usize, a: u32, c: f64, alpha: f64) -> Result<EntropyInterval> {
    check_alpha(alpha)?;
    let hx = renyi_entropy(dist_px(l, a, c)?.probs(), alpha)?;
    let hy = renyi_entropy(dist_py(a, c)?.probs(), alpha)?;
    Ok(if alpha <= a as f64 {
        EntropyInterval { lower: hy, upper: hx }
    } else {
        EntropyInterval { lower: hx, upper: hy }
    })
}
