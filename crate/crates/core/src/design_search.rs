//! Numerical construction of `t`-designs by driving the frame potential
//! `Φ_t = Σ_{j,k} |⟨ψ_j|ψ_k⟩|^{2t}` down to its Welch bound `K² 𝒟_d^{(t)}`.
//!
//! The objective is evaluated as `‖Σ_k v_k v_k† − K𝒟 𝟙‖_F²` with `v_k` the
//! coordinates of `|ψ_k⟩^{⊗t}` in the symmetric subspace. For unit vectors
//! this equals `Φ_t − K²𝒟` exactly but has no cancellation near the optimum,
//! so the descent keeps making progress long after `Φ_t` itself has stopped
//! resolving the gap.

use num_complex::Complex64;
use rayon::prelude::*;

use crate::designs::{design_constant, QuantumDesign};
use crate::error::{argument, Result};
use crate::qcore::{haar_vector, rng_for, sym_dimension, symmetric_power_coords, CMatrix, CVector};

const INITIAL_STEP: f64 = 1e-2;
const MIN_STEP: f64 = 1e-18;
/// Descent continues past `tol` down to this gap (or until the step collapses)
/// so converged designs also certify under the max-entry residual, which is
/// only bounded by the square root of the gap.
const POLISH_GAP: f64 = 1e-20;

#[derive(Clone, Debug, PartialEq)]
pub struct SearchConfig {
    pub d: usize,
    pub k: usize,
    pub t: usize,
    pub seed: u64,
    pub max_iters: usize,
    pub tol: f64,
    pub restarts: usize,
}

impl SearchConfig {
    pub fn new(d: usize, k: usize, t: usize) -> Self {
        Self {
            d,
            k,
            t,
            seed: 0,
            max_iters: 100_000,
            tol: 1e-9,
            restarts: 8,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.d < 2 || self.t < 1 {
            return argument(format!("need d >= 2 and t >= 1 (got d={}, t={})", self.d, self.t));
        }
        if self.k < 2 {
            return argument(format!("need K >= 2 (got {})", self.k));
        }
        if !(self.tol > 0.0) {
            return argument(format!("tolerance must be positive (got {})", self.tol));
        }
        if self.max_iters == 0 || self.restarts == 0 {
            return argument("max_iters and restarts must be positive");
        }
        Ok(())
    }
}

#[derive(Clone, Debug)]
pub struct SearchOutcome {
    pub design: QuantumDesign,
    /// Potential gap `Φ_t − K²𝒟` of the returned vectors.
    pub residual: f64,
    /// Objective evaluations spent by the selected restart.
    pub iterations: usize,
    pub converged: bool,
    /// Index of the restart that produced the result.
    pub restart: usize,
}

/// `Φ_t − K²𝒟_d^{(t)}` computed without cancellation. Vectors must be unit.
pub fn potential_gap(vectors: &[CVector], t: usize) -> f64 {
    let d = vectors[0].len();
    let n = sym_dimension(d, t) as usize;
    let mut moment = CMatrix::zeros(n, n);
    for v in vectors {
        let s = symmetric_power_coords(v, t);
        moment.ger(Complex64::new(1.0, 0.0), &s, &s.conjugate(), Complex64::new(1.0, 0.0));
    }
    let c = vectors.len() as f64 * design_constant(d, t);
    for i in 0..n {
        moment[(i, i)].re -= c;
    }
    moment.iter().map(|z| z.norm_sqr()).sum()
}

/// Euclidean gradient of `Φ_t` at unit vectors, as `∂Φ/∂Re ψ_j + i ∂Φ/∂Im ψ_j`:
/// `4t Σ_k |⟨ψ_j|ψ_k⟩|^{2(t−1)} ⟨ψ_k|ψ_j⟩ |ψ_k⟩`.
pub fn frame_potential_gradient(vectors: &[CVector], t: usize) -> Vec<CVector> {
    let scale = 4.0 * t as f64;
    vectors
        .iter()
        .map(|psi_j| {
            let mut g = CVector::zeros(psi_j.len());
            for psi_k in vectors {
                let overlap = psi_k.dotc(psi_j);
                let weight = overlap.norm_sqr().powi(t as i32 - 1);
                g.axpy(overlap * (scale * weight), psi_k, Complex64::new(1.0, 0.0));
            }
            g
        })
        .collect()
}

fn normalize(v: &mut CVector) {
    let n = v.norm();
    *v /= Complex64::new(n, 0.0);
}

struct RestartResult {
    vectors: Vec<CVector>,
    gap: f64,
    iterations: usize,
}

fn run_restart(config: &SearchConfig, restart: usize) -> RestartResult {
    let mut rng = rng_for(config.seed, restart as u64);
    let mut vectors: Vec<CVector> = (0..config.k).map(|_| haar_vector(config.d, &mut rng)).collect();
    let mut gap = potential_gap(&vectors, config.t);
    let mut step = INITIAL_STEP;
    let mut iterations = 1;
    let target = config.tol.min(POLISH_GAP);

    'descent: while gap > target && iterations < config.max_iters {
        let mut grad = frame_potential_gradient(&vectors, config.t);
        // Project onto the tangent space of each sphere.
        for (g, v) in grad.iter_mut().zip(&vectors) {
            let radial = v.dotc(g).re;
            g.axpy(Complex64::new(-radial, 0.0), v, Complex64::new(1.0, 0.0));
        }
        loop {
            let trial: Vec<CVector> = vectors
                .iter()
                .zip(&grad)
                .map(|(v, g)| {
                    let mut next = v - g * Complex64::new(step, 0.0);
                    normalize(&mut next);
                    next
                })
                .collect();
            let trial_gap = potential_gap(&trial, config.t);
            iterations += 1;
            if trial_gap < gap {
                vectors = trial;
                gap = trial_gap;
                step *= 1.1;
                break;
            }
            step *= 0.5;
            if step < MIN_STEP || iterations >= config.max_iters {
                break 'descent;
            }
        }
    }
    RestartResult {
        vectors,
        gap,
        iterations,
    }
}

/// Projected gradient descent with adaptive step over `restarts` independent
/// Haar-random starts. The lowest-gap restart wins (ties go to the lower
/// index); failing to reach `tol` is reported through `converged`, not as an
/// error.
pub fn search_design(config: &SearchConfig) -> Result<SearchOutcome> {
    config.validate()?;
    let results: Vec<RestartResult> = (0..config.restarts)
        .into_par_iter()
        .map(|r| run_restart(config, r))
        .collect();
    let (restart, best) = results
        .into_iter()
        .enumerate()
        .min_by(|(ia, a), (ib, b)| a.gap.total_cmp(&b.gap).then(ia.cmp(ib)))
        .expect("at least one restart");
    let converged = best.gap <= config.tol;
    let name = format!("search d={} K={} t={} seed={}", config.d, config.k, config.t, config.seed);
    let design = QuantumDesign::new(config.d, best.vectors, config.t as u32, Some(name))?;
    Ok(SearchOutcome {
        design,
        residual: best.gap,
        iterations: best.iterations,
        converged,
        restart,
    })
}
