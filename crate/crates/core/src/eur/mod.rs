//! Entropic uncertainty relations from indices of coincidence.
//!
//! Everything here uses natural logarithms. Rényi orders are plain `f64`
//! with `f64::INFINITY` standing for the min-entropy.

mod boundary;
mod bounds;
mod diagram;
mod entropy;

pub use boundary::{
    dist_px, dist_py, solve_px, solve_py, theorem1_bounds, EntropyInterval, PxSolution, PySolution,
};
pub use bounds::{
    average_ic_from_state, bound_ket, bound_ras, compare_bounds, design_ic_bound, ico_best_bound,
    q_alpha, AverageIc, BoundParams, BoundReport, IcoBest,
};
pub use diagram::{
    info_diagram_samples, BoundaryPoint, DiagramSample, InfoDiagram, DEFAULT_RESOLUTION,
};
pub use entropy::{index_coincidence, renyi_entropy};

use crate::error::{Error, Result};

/// Tolerance for `c_a` sitting just outside `[L^{1-a}, 1]` from upstream rounding.
const IC_CLAMP_TOL: f64 = 1e-12;

/// Validates `(L, a, c_a)` and clamps `c_a` into `[L^{1-a}, 1]`.
pub(crate) fn checked_ic(l: usize, a: u32, c: f64) -> Result<f64> {
    if l < 2 {
        return Err(Error::Argument(format!("need L >= 2 (got {l})")));
    }
    if a < 2 {
        return Err(Error::Argument(format!("need a >= 2 (got {a})")));
    }
    let lower = (l as f64).powi(1 - a as i32);
    if !c.is_finite() || c < lower - IC_CLAMP_TOL || c > 1.0 + IC_CLAMP_TOL {
        return Err(Error::Argument(format!(
            "c_a = {c} outside [{lower}, 1] for L = {l}, a = {a}"
        )));
    }
    Ok(c.clamp(lower, 1.0))
}

pub(crate) fn check_alpha(alpha: f64) -> Result<()> {
    if alpha > 0.0 {
        Ok(())
    } else {
        Err(Error::Argument(format!("Rényi order must be positive (got {alpha})")))
    }
}
