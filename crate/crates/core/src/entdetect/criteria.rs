use crate::error::{Error, Result};
use crate::eur::design_ic_bound;
use crate::qcore::{tensor_product, trace_product, CMatrix, DensityOperator};

use super::scheme::{ExponentVector, LocalScheme};

/// Largest joint dimension for which the correlation operators are built densely.
pub const JOINT_DIM_CAP: usize = 256;

fn binomial(n: u32, k: u32) -> f64 {
    (0..k).fold(1.0, |acc, j| acc * (n - j) as f64 / (j + 1) as f64)
}

/// `B̃_a = Σ_r C(a,r) (-K)^{-(a-r)} B_r`, the pure-state value of
/// `Σ_i (p_i - 1/K)^a` for a DSM with `L` outcomes in dimension `d`.
pub fn modified_ic_bound(l: usize, d: usize, a: u32, k: usize) -> f64 {
    let neg_inv_k = -1.0 / k as f64;
    (0..=a)
        .map(|r| binomial(a, r) * neg_inv_k.powi((a - r) as i32) * design_ic_bound(l, d, r))
        .sum()
}

/// `Π_n s_n^{1/a_n}` for per-subsystem sums `s_n = Σ_θ w^{a_n} B`.
pub fn holder_product(sums: &[f64], exps: &ExponentVector) -> f64 {
    sums.iter()
        .zip(exps.as_slice())
        .map(|(&s, &a)| s.powf(1.0 / a as f64))
        .product()
}

fn check_exponents(scheme: &LocalScheme, exps: &ExponentVector) -> Result<()> {
    if exps.len() != scheme.party_count() {
        return Err(Error::Argument(format!(
            "{} exponents for {} subsystems",
            exps.len(),
            scheme.party_count()
        )));
    }
    for (n, (party, &a)) in scheme.parties().iter().zip(exps.as_slice()).enumerate() {
        for (theta, m) in party.iter().enumerate() {
            if a > m.strength() {
                return Err(Error::Argument(format!(
                    "exponent {a} exceeds strength {} of subsystem {n} setting {theta}",
                    m.strength()
                )));
            }
        }
    }
    Ok(())
}

/// Separable-state bound on `J`.
pub fn theorem3_rhs(scheme: &LocalScheme, exps: &ExponentVector) -> Result<f64> {
    check_exponents(scheme, exps)?;
    let sums: Vec<f64> = scheme
        .parties()
        .iter()
        .zip(exps.as_slice())
        .map(|(party, &a)| {
            party
                .iter()
                .map(|m| m.weight().powi(a as i32) * m.ic_bound(a))
                .sum()
        })
        .collect();
    Ok(holder_product(&sums, exps))
}

/// Separable-state bound on `J̃`; every exponent must be even.
pub fn theorem4_rhs(scheme: &LocalScheme, exps: &ExponentVector) -> Result<f64> {
    if !exps.all_even() {
        return Err(Error::Argument(format!(
            "modified criterion needs even exponents (got {:?})",
            exps.as_slice()
        )));
    }
    check_exponents(scheme, exps)?;
    let sums: Vec<f64> = scheme
        .parties()
        .iter()
        .zip(exps.as_slice())
        .map(|(party, &a)| {
            party
                .iter()
                .map(|m| m.weight().powi(a as i32) * m.modified_ic_bound(a))
                .sum()
        })
        .collect();
    Ok(holder_product(&sums, exps))
}

/// Dense joint operators `J_{i|θ}` and `J̃_{i|θ}` for repeated evaluation.
#[derive(Clone, Debug)]
pub struct CorrelationOperators {
    dim: usize,
    joint: Vec<CMatrix>,
    shifted: Vec<CMatrix>,
}

impl CorrelationOperators {
    pub fn new(scheme: &LocalScheme) -> Result<Self> {
        let dim = scheme.total_dim();
        if dim > JOINT_DIM_CAP {
            return Err(Error::SizeCap {
                what: "joint correlation operator",
                needed: dim,
                cap: JOINT_DIM_CAP,
            });
        }
        let shifted_local: Vec<Vec<Vec<CMatrix>>> = scheme
            .parties()
            .iter()
            .map(|party| party.iter().map(|m| m.shifted_effects()).collect())
            .collect();
        let mut joint = Vec::with_capacity(scheme.settings() * scheme.outcomes());
        let mut shifted = Vec::with_capacity(joint.capacity());
        for theta in 0..scheme.settings() {
            for i in 0..scheme.outcomes() {
                let mut plain = Vec::with_capacity(scheme.party_count());
                let mut tilde = Vec::with_capacity(scheme.party_count());
                for (n, party) in scheme.parties().iter().enumerate() {
                    let m = &party[theta];
                    plain.push(m.povm().effects()[i].scale(m.weight()));
                    tilde.push(shifted_local[n][theta][i].scale(m.weight()));
                }
                joint.push(tensor_product(&plain)?);
                shifted.push(tensor_product(&tilde)?);
            }
        }
        Ok(Self {
            dim,
            joint,
            shifted,
        })
    }

    fn check(&self, rho: &DensityOperator) -> Result<()> {
        if rho.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: rho.dim(),
            });
        }
        Ok(())
    }

    /// `J(ρ) = Σ_{i,θ} tr(J_{i|θ} ρ)`.
    pub fn j(&self, rho: &DensityOperator) -> Result<f64> {
        self.check(rho)?;
        Ok(self.joint.iter().map(|op| trace_product(op, rho.matrix()).re).sum())
    }

    /// `J̃(ρ) = Σ_{i,θ} |tr(J̃_{i|θ} ρ)|`.
    pub fn jtilde(&self, rho: &DensityOperator) -> Result<f64> {
        self.check(rho)?;
        Ok(self
            .shifted
            .iter()
            .map(|op| trace_product(op, rho.matrix()).re.abs())
            .sum())
    }
}

pub fn correlation_j(scheme: &LocalScheme, rho: &DensityOperator) -> Result<f64> {
    CorrelationOperators::new(scheme)?.j(rho)
}

pub fn correlation_jtilde(scheme: &LocalScheme, rho: &DensityOperator) -> Result<f64> {
    CorrelationOperators::new(scheme)?.jtilde(rho)
}

/// Local expectation values `w tr(M ρ_n)` (or of the shifted effects) indexed by `[n][θ][i]`.
fn local_tables(scheme: &LocalScheme, factors: &[DensityOperator], shifted: bool) -> Result<Vec<Vec<Vec<f64>>>> {
    if factors.len() != scheme.party_count() {
        return Err(Error::Argument(format!(
            "{} factors for {} subsystems",
            factors.len(),
            scheme.party_count()
        )));
    }
    scheme
        .parties()
        .iter()
        .zip(factors)
        .map(|(party, rho)| {
            party
                .iter()
                .map(|m| {
                    if rho.dim() != m.dim() {
                        return Err(Error::DimensionMismatch {
                            expected: m.dim(),
                            found: rho.dim(),
                        });
                    }
                    let effects = if shifted {
                        m.shifted_effects()
                    } else {
                        m.povm().effects().to_vec()
                    };
                    Ok(effects
                        .iter()
                        .map(|e| m.weight() * trace_product(e, rho.matrix()).re)
                        .collect())
                })
                .collect()
        })
        .collect()
}

fn product_sum(tables: &[Vec<Vec<f64>>], settings: usize, outcomes: usize, abs: bool) -> f64 {
    let mut total = 0.0;
    for theta in 0..settings {
        for i in 0..outcomes {
            let term: f64 = tables.iter().map(|t| t[theta][i]).product();
            total += if abs { term.abs() } else { term };
        }
    }
    total
}

/// `J` on a product state `ρ_1 ⊗ … ⊗ ρ_N`, without forming the joint state.
pub fn correlation_j_product(scheme: &LocalScheme, factors: &[DensityOperator]) -> Result<f64> {
    let t = local_tables(scheme, factors, false)?;
    Ok(product_sum(&t, scheme.settings(), scheme.outcomes(), false))
}

/// `J̃` on a product state.
pub fn correlation_jtilde_product(scheme: &LocalScheme, factors: &[DensityOperator]) -> Result<f64> {
    let t = local_tables(scheme, factors, true)?;
    Ok(product_sum(&t, scheme.settings(), scheme.outcomes(), true))
}
