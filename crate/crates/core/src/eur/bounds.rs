//! The four state-independent lower bounds on average Rényi entropy and the
//! design IC bound that feeds them.

use super::{check_alpha, checked_ic, index_coincidence, solve_px, solve_py, theorem1_bounds};
use crate::designs::{design_constant, DsmSet};
use crate::error::{Error, Result};
use crate::qcore::{born_probabilities, DensityOperator};

const ORDERING_TOL: f64 = 1e-10;

/// Pure-state average IC of an `L`-outcome DSM in dimension `d`:
/// `B_a = L^{1-a} d^a 𝒟_d^{(a)}`.
///
/// Also valid for `a = 0` and `a = 1`, where it reduces to `L` and `1`.
pub fn design_ic_bound(l: usize, d: usize, a: u32) -> f64 {
    let (lf, df) = (l as f64, d as f64);
    lf.powi(1 - a as i32) * df.powi(a as i32) * design_constant(d, a as usize)
}

fn require_alpha_at_least_a(a: u32, alpha: f64) -> Result<()> {
    check_alpha(alpha)?;
    if alpha < a as f64 {
        return Err(Error::Argument(format!(
            "bound needs alpha >= a (alpha = {alpha}, a = {a})"
        )));
    }
    Ok(())
}

/// `Q_α(L, c_a)`, valid for `α >= a`; `α = ∞` gives `-ln p`.
pub fn q_alpha(l: usize, a: u32, c: f64, alpha: f64) -> Result<f64> {
    require_alpha_at_least_a(a, alpha)?;
    let c = checked_ic(l, a, c)?;
    let px = solve_px(l, a, c)?;
    if alpha.is_infinite() {
        return Ok(-px.p.ln() + 0.0);
    }
    if alpha == a as f64 {
        return Ok(c.ln() / (1.0 - alpha) + 0.0);
    }
    let lf = l as f64;
    let af = a as f64;
    let spread = (lf - 1.0).powf(af / alpha);
    let ratio = (px.p_s / px.p).powi(a as i32);
    let head = alpha * px.p.ln() / (1.0 - alpha);
    let tail = lf.ln() / ((1.0 - alpha) * spread.ln_1p()) * (spread * ratio).ln_1p();
    Ok(head + tail + 0.0)
}

/// `α/(a(1-α)) ln c_a`; `α = ∞` gives `-ln(c_a)/a`.
pub fn bound_ket(l: usize, a: u32, c: f64, alpha: f64) -> Result<f64> {
    require_alpha_at_least_a(a, alpha)?;
    let c = checked_ic(l, a, c)?;
    let af = a as f64;
    if alpha.is_infinite() {
        return Ok(-c.ln() / af + 0.0);
    }
    Ok(alpha / (af * (1.0 - alpha)) * c.ln() + 0.0)
}

/// `[(α-a) ln p + ln c_a]/(1-α)`; `α = ∞` gives `-ln p`.
pub fn bound_ras(l: usize, a: u32, c: f64, alpha: f64) -> Result<f64> {
    require_alpha_at_least_a(a, alpha)?;
    let c = checked_ic(l, a, c)?;
    let p = solve_px(l, a, c)?.p;
    if alpha.is_infinite() {
        return Ok(-p.ln() + 0.0);
    }
    Ok(((alpha - a as f64) * p.ln() + c.ln()) / (1.0 - alpha) + 0.0)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BoundParams {
    pub l: usize,
    pub a: u32,
    pub alpha: f64,
    pub c: f64,
}

impl BoundParams {
    pub fn new(l: usize, a: u32, alpha: f64, c: f64) -> Result<Self> {
        check_alpha(alpha)?;
        let c = checked_ic(l, a, c)?;
        Ok(Self { l, a, alpha, c })
    }
}

/// All four bounds at one parameter point.
///
/// `q1` needs a single distribution and is `None` when averaging over more
/// than one POVM. `q2`, `q_ras` and `q_ket` are `None` for `α < a`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BoundReport {
    pub params: BoundParams,
    pub q1: Option<f64>,
    pub q2: Option<f64>,
    pub q_ras: Option<f64>,
    pub q_ket: Option<f64>,
    pub p: f64,
    pub p_s: f64,
    pub l_prime: usize,
    /// Whether `P_y` is exactly uniform, in which case `q1` is flat for `α <= a`.
    pub py_uniform: bool,
}

/// Evaluates every applicable bound and checks `q1 >= q2 >= q_ras >= q_ket`.
pub fn compare_bounds(params: BoundParams, settings: usize) -> Result<BoundReport> {
    let BoundParams { l, a, alpha, c } = params;
    let c = checked_ic(l, a, c)?;
    check_alpha(alpha)?;
    if settings == 0 {
        return Err(Error::Argument("need at least one POVM".into()));
    }
    let px = solve_px(l, a, c)?;
    let py = solve_py(a, c)?;
    let q1 = if settings == 1 {
        Some(theorem1_bounds(l, a, c, alpha)?.lower)
    } else {
        None
    };
    let (q2, q_ras, q_ket) = if alpha >= a as f64 {
        (
            Some(q_alpha(l, a, c, alpha)?),
            Some(bound_ras(l, a, c, alpha)?),
            Some(bound_ket(l, a, c, alpha)?),
        )
    } else {
        (None, None, None)
    };

    let chain = [("q1", q1), ("q2", q2), ("q_ras", q_ras), ("q_ket", q_ket)];
    let present: Vec<(&str, f64)> = chain.iter().filter_map(|&(n, v)| v.map(|v| (n, v))).collect();
    for w in present.windows(2) {
        let ((hi_name, hi), (lo_name, lo)) = (w[0], w[1]);
        if hi < lo - ORDERING_TOL {
            return Err(Error::OrderingViolated(format!(
                "{hi_name} = {hi} < {lo_name} = {lo} at L = {l}, a = {a}, alpha = {alpha}, c = {c}"
            )));
        }
    }

    Ok(BoundReport {
        params: BoundParams { l, a, alpha, c },
        q1,
        q2,
        q_ras,
        q_ket,
        p: px.p,
        p_s: px.p_s,
        l_prime: py.l_prime,
        py_uniform: py.is_uniform(),
    })
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AverageIc {
    pub value: f64,
    /// Set when `a` exceeds the DSM strength, so the closed form need not hold.
    pub beyond_strength: bool,
}

/// `(1/Θ) Σ_θ I_a(P_θ)` for the Born statistics of `rho`.
pub fn average_ic_from_state(dsm: &DsmSet, rho: &DensityOperator, a: u32) -> Result<AverageIc> {
    if a < 2 {
        return Err(Error::Argument(format!("need a >= 2 (got {a})")));
    }
    let mut total = 0.0;
    for povm in dsm.povms() {
        total += index_coincidence(born_probabilities(povm, rho)?.probs(), a);
    }
    Ok(AverageIc {
        value: total / dsm.settings() as f64,
        beyond_strength: a > dsm.strength(),
    })
}

/// Best icosahedral two-outcome bound over `a ∈ {2,…,5}` with `a <= α`.
#[derive(Clone, Debug, PartialEq)]
pub struct IcoBest {
    pub a_star: u32,
    pub value: f64,
    /// `(a, Q_α(2, 2/(a+1)))` for every admissible `a`.
    pub candidates: Vec<(u32, f64)>,
}

pub fn ico_best_bound(alpha: f64) -> Result<IcoBest> {
    if !(alpha >= 2.0) {
        return Err(Error::Argument(format!("need alpha >= 2 (got {alpha})")));
    }
    let mut candidates = Vec::new();
    for a in 2..=5u32 {
        if alpha >= a as f64 {
            candidates.push((a, q_alpha(2, a, design_ic_bound(2, 2, a), alpha)?));
        }
    }
    let mut best = candidates[0];
    for &cand in &candidates[1..] {
        if cand.1 > best.1 {
            best = cand;
        }
    }
    Ok(IcoBest {
        a_star: best.0,
        value: best.1,
        candidates,
    })
}
