//! Choi vectorization, the view operator `G^a` and the bound it gives on
//! coincidences of order `2a`.

use num_complex::Complex64;

use crate::designs::{design_constant, DsmSet};
use crate::error::{Error, Result};
use crate::eur::index_coincidence;
use crate::qcore::{
    born_probabilities, hermitian_eigenvalues, is_hermitian, purity_moments, f_t, tensor_power,
    CMatrix, CVector, DensityOperator, FtMethod, DEFAULT_SIZE_CAP,
};

const POWER_TOL: f64 = 1e-11;
const POWER_MAX_ITERS: usize = 100_000;
const DENSE_CHECK_DIM: usize = 64;
const HOLDS_TOL: f64 = 1e-10;

/// `|A⟩ = (A ⊗ 1) Σ_i |i⟩|i⟩*`, i.e. entry `j·d + i` is `A[j, i]`.
pub fn choi_vector(a: &CMatrix) -> Result<CVector> {
    if !a.is_square() {
        return Err(Error::Argument(format!("Choi vector needs a square matrix (got {}x{})", a.nrows(), a.ncols())));
    }
    let d = a.nrows();
    Ok(CVector::from_fn(d * d, |k, _| a[(k / d, k % d)]))
}

/// `G^a = Σ_{i,θ} |M̃⟩⟨M̃|` with `M̃ = M^{⊗a} - 1/L^a`.
#[derive(Clone, Debug)]
pub struct ViewOperator {
    order: u32,
    matrix: CMatrix,
}

impl ViewOperator {
    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }
}

pub fn view_operator(dsm: &DsmSet, a: u32) -> Result<ViewOperator> {
    view_operator_with_cap(dsm, a, DEFAULT_SIZE_CAP)
}

pub fn view_operator_with_cap(dsm: &DsmSet, a: u32, cap: usize) -> Result<ViewOperator> {
    if a < 2 {
        return Err(Error::Argument(format!("need a >= 2 (got {a})")));
    }
    let d = dsm.dim();
    let da = d
        .checked_pow(a)
        .filter(|&n| n.checked_mul(n).is_some_and(|m| m <= cap))
        .ok_or(Error::SizeCap {
            what: "view operator",
            needed: d.saturating_pow(2 * a),
            cap,
        })?;
    let n = da * da;
    let shift = CMatrix::identity(da, da).unscale((dsm.outcomes() as f64).powi(a as i32));
    let mut g = CMatrix::zeros(n, n);
    for povm in dsm.povms() {
        for m in povm.effects() {
            let v = choi_vector(&(tensor_power(m, a as usize) - &shift))?;
            g.ger(Complex64::new(1.0, 0.0), &v, &v.conjugate(), Complex64::new(1.0, 0.0));
        }
    }
    Ok(ViewOperator { order: a, matrix: g })
}

/// Largest eigenvalue of a Hermitian matrix.
///
/// Power iteration on `H + s·1`, where `s` is the Gershgorin radius so the
/// shifted spectrum is nonnegative and the top eigenvalue dominates. Stops
/// once the eigen-residual is below `1e-11` of the spectral scale. Matrices
/// of dimension at most 64 are also diagonalized densely and the two
/// answers must agree.
pub fn operator_norm(h: &CMatrix) -> Result<f64> {
    if !h.is_square() || !is_hermitian(h, 1e-10) {
        return Err(Error::Argument("operator norm needs a Hermitian matrix".into()));
    }
    let n = h.nrows();
    if n == 0 {
        return Err(Error::Argument("empty matrix".into()));
    }
    let shift = (0..n)
        .map(|i| h.row(i).iter().map(|z| z.norm()).sum::<f64>())
        .fold(0.0, f64::max);
    if shift == 0.0 {
        return Ok(0.0);
    }
    let shifted = h + CMatrix::identity(n, n).scale(shift);

    let mut x = CVector::from_fn(n, |k, _| Complex64::new(1.0 + 0.5 * ((k + 1) as f64).sin(), 0.25 * ((2 * k + 1) as f64).cos()));
    x.unscale_mut(x.norm());
    let mut lambda = f64::NAN;
    let mut converged = false;
    for _ in 0..POWER_MAX_ITERS {
        let y = &shifted * &x;
        let mu = x.dotc(&y).re;
        let residual = (&y - x.scale(mu)).norm();
        lambda = mu - shift;
        if residual <= POWER_TOL * 2.0 * shift {
            converged = true;
            break;
        }
        let ny = y.norm();
        if ny == 0.0 {
            break;
        }
        x = y.unscale(ny);
    }
    if !converged {
        return Err(Error::NotConverged(format!(
            "power iteration did not converge in {POWER_MAX_ITERS} steps"
        )));
    }
    if n <= DENSE_CHECK_DIM {
        let dense = hermitian_eigenvalues(h).into_iter().fold(f64::NEG_INFINITY, f64::max);
        if (dense - lambda).abs() > 1e-9 * dense.abs().max(1.0) {
            return Err(Error::NotConverged(format!(
                "power iteration gave {lambda}, dense solver {dense}"
            )));
        }
    }
    Ok(lambda)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HighOrderIc {
    /// `Σ_θ I_{2a}(P_θ)`.
    pub lhs: f64,
    /// `‖G^a‖ [(tr ρ²)^a + (2F_a(ρ) - 1)/(d^a(1-h))]`.
    pub rhs: f64,
    pub holds: bool,
}

/// The state-independent parts of the bound, computed once per DSM and order.
#[derive(Clone, Debug)]
pub struct HighOrderIcBound {
    order: u32,
    dim: usize,
    norm: f64,
    h: f64,
}

impl HighOrderIcBound {
    pub fn new(dsm: &DsmSet, a: u32) -> Result<Self> {
        if a < 2 || a > dsm.strength() {
            return Err(Error::Argument(format!(
                "order {a} outside [2, {}] for this measurement set",
                dsm.strength()
            )));
        }
        let norm = operator_norm(view_operator(dsm, a)?.matrix())?;
        let d = dsm.dim();
        let h = 1.0 / (design_constant(d, a as usize) * (d as f64).powi(a as i32));
        Ok(Self {
            order: a,
            dim: d,
            norm,
            h,
        })
    }

    pub fn norm(&self) -> f64 {
        self.norm
    }

    /// `h = tr(1_sym (1/d)^{⊗a})`.
    pub fn h(&self) -> f64 {
        self.h
    }

    pub fn check(&self, dsm: &DsmSet, rho: &DensityOperator) -> Result<HighOrderIc> {
        if rho.dim() != self.dim || dsm.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: rho.dim(),
            });
        }
        let a = self.order;
        let mut lhs = 0.0;
        for povm in dsm.povms() {
            lhs += index_coincidence(born_probabilities(povm, rho)?.probs(), 2 * a);
        }
        let purity = purity_moments(rho, 2)?[1];
        let f = f_t(rho, a as usize, FtMethod::CycleIndex)?;
        let da = (self.dim as f64).powi(a as i32);
        let rhs = self.norm * (purity.powi(a as i32) + (2.0 * f - 1.0) / (da * (1.0 - self.h)));
        Ok(HighOrderIc {
            lhs,
            rhs,
            holds: lhs <= rhs + HOLDS_TOL,
        })
    }
}

pub fn high_order_ic_check(dsm: &DsmSet, rho: &DensityOperator, a: u32) -> Result<HighOrderIc> {
    HighOrderIcBound::new(dsm, a)?.check(dsm, rho)
}
