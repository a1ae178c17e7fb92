use itertools::Itertools;
use num_complex::Complex64;

use super::linalg::{tensor_power, trace_product, CMatrix, CVector, DEFAULT_SIZE_CAP};
use super::state::DensityOperator;
use crate::error::{argument, Error, Result};

/// All permutations of `0..t` in lexicographic order.
pub fn permutations(t: usize) -> Vec<Vec<usize>> {
    (0..t).permutations(t).collect()
}

/// Cycle lengths of a permutation given in one-line notation.
pub fn cycle_lengths(perm: &[usize]) -> Vec<usize> {
    let mut seen = vec![false; perm.len()];
    let mut out = Vec::new();
    for start in 0..perm.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            i = perm[i];
            len += 1;
        }
        out.push(len);
    }
    out
}

/// Dimension `(t+d-1)! / (t! (d-1)!)` of the symmetric subspace of `(C^d)^{⊗t}`.
pub fn sym_dimension(d: usize, t: usize) -> u128 {
    // C(t+d-1, t) built incrementally stays integral at every step.
    (1..d as u128).fold(1u128, |acc, j| acc * (t as u128 + j) / j)
}

fn checked_side(d: usize, t: usize, cap: usize, what: &'static str) -> Result<usize> {
    match d.checked_pow(t as u32) {
        Some(n) if n <= cap => Ok(n),
        Some(n) => Err(Error::SizeCap { what, needed: n, cap }),
        None => Err(Error::SizeCap {
            what,
            needed: usize::MAX,
            cap,
        }),
    }
}

pub fn sym_projector(d: usize, t: usize) -> Result<CMatrix> {
    sym_projector_with_cap(d, t, DEFAULT_SIZE_CAP)
}

/// Orthogonal projector `(1/t!) Σ_σ P_σ` onto the symmetric subspace of
/// `(C^d)^{⊗t}`, summed explicitly over all permutations of tensor factors.
pub fn sym_projector_with_cap(d: usize, t: usize, cap: usize) -> Result<CMatrix> {
    if d == 0 || t == 0 {
        return argument(format!("symmetric projector needs d, t >= 1 (got d={d}, t={t})"));
    }
    let n = checked_side(d, t, cap, "symmetric projector")?;
    let perms = permutations(t);
    let weight = 1.0 / perms.len() as f64;
    let mut out = CMatrix::zeros(n, n);
    let mut digits = vec![0usize; t];
    for col in 0..n {
        // Most significant digit is the first tensor factor.
        let mut rem = col;
        for k in (0..t).rev() {
            digits[k] = rem % d;
            rem /= d;
        }
        for perm in &perms {
            let row = perm.iter().fold(0usize, |acc, &src| acc * d + digits[src]);
            out[(row, col)].re += weight;
        }
    }
    Ok(out)
}

/// `tr(ρ^a)` for `a = 1..=max_a`.
pub fn purity_moments(rho: &DensityOperator, max_a: usize) -> Result<Vec<f64>> {
    if max_a == 0 {
        return argument("purity moments need max_a >= 1");
    }
    let m = rho.matrix();
    let mut power = m.clone();
    let mut out = Vec::with_capacity(max_a);
    out.push(m.trace().re);
    for _ in 1..max_a {
        out.push(trace_product(&power, m).re);
        power = &power * m;
    }
    Ok(out)
}

/// How `F_t(ρ) = tr(Π_sym ρ^{⊗t})` is evaluated.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FtMethod {
    /// `(1/t!) Σ_σ Π_cycles tr(ρ^{|c|})`.
    CycleIndex,
    /// Explicit trace against the materialized projector (size-capped).
    Projector,
}

pub fn f_t(rho: &DensityOperator, t: usize, method: FtMethod) -> Result<f64> {
    if t == 0 {
        return argument("F_t needs t >= 1");
    }
    match method {
        FtMethod::CycleIndex => {
            let moments = purity_moments(rho, t)?;
            let perms = permutations(t);
            let total: f64 = perms
                .iter()
                .map(|p| {
                    cycle_lengths(p)
                        .into_iter()
                        .map(|len| moments[len - 1])
                        .product::<f64>()
                })
                .sum();
            Ok(total / perms.len() as f64)
        }
        FtMethod::Projector => {
            let d = rho.dim();
            checked_side(d, t, DEFAULT_SIZE_CAP, "F_t projector")?;
            let proj = sym_projector(d, t)?;
            let power = tensor_power(rho.matrix(), t);
            Ok(trace_product(&proj, &power).re)
        }
    }
}

/// Coordinates of `|ψ⟩^{⊗t}` in the orthonormal occupation-number basis of
/// the symmetric subspace: `sqrt(t!/Π n_i!) Π ψ_i^{n_i}` over all `n` with
/// `Σ n_i = t`. The map is an isometry onto the symmetric subspace, so inner
/// products satisfy `⟨v_φ|v_ψ⟩ = ⟨φ|ψ⟩^t`.
pub fn symmetric_power_coords(psi: &CVector, t: usize) -> CVector {
    let d = psi.len();
    let mut out = Vec::with_capacity(sym_dimension(d, t) as usize);
    let log_fact: Vec<f64> = (0..=t)
        .scan(0.0, |acc, k| {
            if k > 0 {
                *acc += (k as f64).ln();
            }
            Some(*acc)
        })
        .collect();
    let mut occ = vec![0usize; d];
    fill_occupations(psi, t, 0, &mut occ, &log_fact, &mut out);
    CVector::from_vec(out)
}

fn fill_occupations(
    psi: &CVector,
    remaining: usize,
    pos: usize,
    occ: &mut [usize],
    log_fact: &[f64],
    out: &mut Vec<Complex64>,
) {
    let d = occ.len();
    if pos == d - 1 {
        occ[pos] = remaining;
        let t: usize = occ.iter().sum();
        let log_multinom = log_fact[t] - occ.iter().map(|&n| log_fact[n]).sum::<f64>();
        let mut amp = Complex64::new((0.5 * log_multinom).exp(), 0.0);
        for (i, &n) in occ.iter().enumerate() {
            amp *= psi[i].powu(n as u32);
        }
        out.push(amp);
        return;
    }
    for n in (0..=remaining).rev() {
        occ[pos] = n;
        fill_occupations(psi, remaining - n, pos + 1, occ, log_fact, out);
    }
}
