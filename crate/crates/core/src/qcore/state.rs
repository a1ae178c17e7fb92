use num_complex::Complex64;

use super::linalg::{hermitian_eigenvalues, is_hermitian, projector, trace_product, CMatrix, CVector};
use crate::error::{Error, Result};

const HERMITIAN_TOL: f64 = 1e-12;
const TRACE_TOL: f64 = 1e-12;
const PSD_TOL: f64 = 1e-10;
const POVM_SUM_TOL: f64 = 1e-10;
const PROB_SUM_TOL: f64 = 1e-12;
/// Born probabilities in `[-PROB_CLAMP, 0)` are float noise and clamp to zero.
const PROB_CLAMP: f64 = 1e-12;

/// A Hermitian, unit-trace, positive semidefinite matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityOperator {
    matrix: CMatrix,
}

impl DensityOperator {
    pub fn new(matrix: CMatrix) -> Result<Self> {
        if !matrix.is_square() || matrix.nrows() == 0 {
            return Err(Error::InvalidState(format!(
                "shape {}x{} is not square",
                matrix.nrows(),
                matrix.ncols()
            )));
        }
        if !is_hermitian(&matrix, HERMITIAN_TOL) {
            return Err(Error::InvalidState("matrix is not Hermitian".into()));
        }
        let tr = matrix.trace();
        if (tr.re - 1.0).abs() > TRACE_TOL || tr.im.abs() > TRACE_TOL {
            return Err(Error::InvalidState(format!("trace is {tr}, expected 1")));
        }
        let min_ev = hermitian_eigenvalues(&matrix)[0];
        if min_ev < -PSD_TOL {
            return Err(Error::InvalidState(format!(
                "smallest eigenvalue {min_ev:e} is negative"
            )));
        }
        Ok(Self { matrix })
    }

    /// Builds `|ψ⟩⟨ψ|/⟨ψ|ψ⟩`.
    pub fn from_pure(psi: &CVector) -> Result<Self> {
        let norm = psi.norm();
        if norm == 0.0 || !norm.is_finite() {
            return Err(Error::InvalidState("state vector has zero norm".into()));
        }
        Self::new(projector(&(psi / Complex64::new(norm, 0.0))))
    }

    pub fn maximally_mixed(dim: usize) -> Self {
        let scale = Complex64::new(1.0 / dim as f64, 0.0);
        Self {
            matrix: CMatrix::identity(dim, dim) * scale,
        }
    }

    /// `λ·self + (1-λ)·other`.
    pub fn mix(&self, other: &Self, lambda: f64) -> Result<Self> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: other.dim(),
            });
        }
        if !(0.0..=1.0).contains(&lambda) {
            return Err(Error::Argument(format!("mixing weight {lambda} outside [0, 1]")));
        }
        Self::new(&self.matrix * Complex64::new(lambda, 0.0) + &other.matrix * Complex64::new(1.0 - lambda, 0.0))
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> CMatrix {
        self.matrix
    }

    /// `tr(ρ²)`.
    pub fn purity(&self) -> f64 {
        trace_product(&self.matrix, &self.matrix).re
    }

    /// `ρ₁ ⊗ ρ₂ ⊗ ⋯` in list order.
    pub fn product(parts: &[DensityOperator]) -> Result<Self> {
        let mats: Vec<CMatrix> = parts.iter().map(|p| p.matrix.clone()).collect();
        Ok(Self {
            matrix: super::linalg::tensor_product(&mats)?,
        })
    }
}

/// A positive-operator-valued measure: positive effects summing to the identity.
#[derive(Clone, Debug)]
pub struct Povm {
    dim: usize,
    effects: Vec<CMatrix>,
    labels: Option<Vec<String>>,
}

impl Povm {
    pub fn new(effects: Vec<CMatrix>) -> Result<Self> {
        let first = effects
            .first()
            .ok_or_else(|| Error::InvalidPovm("no effects".into()))?;
        let dim = first.nrows();
        let mut sum = CMatrix::zeros(dim, dim);
        for (i, e) in effects.iter().enumerate() {
            if e.shape() != (dim, dim) {
                return Err(Error::InvalidPovm(format!(
                    "effect {i} has shape {:?}, expected ({dim}, {dim})",
                    e.shape()
                )));
            }
            if !is_hermitian(e, HERMITIAN_TOL) {
                return Err(Error::InvalidPovm(format!("effect {i} is not Hermitian")));
            }
            let min_ev = hermitian_eigenvalues(e)[0];
            if min_ev < -PSD_TOL {
                return Err(Error::InvalidPovm(format!(
                    "effect {i} has negative eigenvalue {min_ev:e}"
                )));
            }
            sum += e;
        }
        let dev = (sum - CMatrix::identity(dim, dim))
            .iter()
            .map(|z| z.norm())
            .fold(0.0, f64::max);
        if dev > POVM_SUM_TOL {
            return Err(Error::InvalidPovm(format!(
                "effects sum to identity only within {dev:e}"
            )));
        }
        Ok(Self {
            dim,
            effects,
            labels: None,
        })
    }

    /// Projective measurement in an orthonormal basis.
    pub fn from_basis(basis: &[CVector]) -> Result<Self> {
        Self::new(basis.iter().map(projector).collect())
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.effects.len() {
            return Err(Error::InvalidPovm(format!(
                "{} labels for {} effects",
                labels.len(),
                self.effects.len()
            )));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn effects(&self) -> &[CMatrix] {
        &self.effects
    }

    pub fn len(&self) -> usize {
        self.effects.len()
    }

    pub fn is_empty(&self) -> bool {
        self.effects.is_empty()
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }
}

/// A finite probability vector.
#[derive(Clone, Debug, PartialEq)]
pub struct ProbabilityDistribution {
    probs: Vec<f64>,
}

impl ProbabilityDistribution {
    pub fn new(probs: Vec<f64>) -> Result<Self> {
        if probs.is_empty() {
            return Err(Error::InvalidDistribution("empty".into()));
        }
        if let Some((i, p)) = probs.iter().enumerate().find(|(_, p)| !(**p >= 0.0)) {
            return Err(Error::InvalidDistribution(format!("entry {i} is {p}")));
        }
        let sum: f64 = probs.iter().sum();
        if (sum - 1.0).abs() > PROB_SUM_TOL {
            return Err(Error::InvalidDistribution(format!("entries sum to {sum}")));
        }
        Ok(Self { probs })
    }

    pub fn uniform(len: usize) -> Self {
        Self {
            probs: vec![1.0 / len as f64; len],
        }
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn len(&self) -> usize {
        self.probs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.probs.is_empty()
    }

    pub fn into_vec(self) -> Vec<f64> {
        self.probs
    }
}

/// Outcome statistics `p_i = tr(M_i ρ)`.
///
/// Entries within `1e-12` below zero are clamped, and the vector is rescaled
/// by its sum so the result is exactly normalized up to rounding.
pub fn born_probabilities(povm: &Povm, rho: &DensityOperator) -> Result<ProbabilityDistribution> {
    if povm.dim() != rho.dim() {
        return Err(Error::DimensionMismatch {
            expected: povm.dim(),
            found: rho.dim(),
        });
    }
    let mut probs = Vec::with_capacity(povm.len());
    for (i, e) in povm.effects().iter().enumerate() {
        let p = trace_product(e, rho.matrix()).re;
        if p < -PROB_CLAMP {
            return Err(Error::InvalidDistribution(format!(
                "effect {i} has probability {p:e}"
            )));
        }
        probs.push(p.max(0.0));
    }
    let sum: f64 = probs.iter().sum();
    probs.iter_mut().for_each(|p| *p /= sum);
    ProbabilityDistribution::new(probs)
}
