//! Test-state families on two and four qubits.

use std::f64::consts::FRAC_PI_2;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::qcore::{CVector, DensityOperator};

fn check_range(name: &str, v: f64, lo: f64, hi: f64) -> Result<()> {
    if v >= lo && v <= hi {
        Ok(())
    } else {
        Err(Error::Argument(format!("{name} = {v} outside [{lo}, {hi}]")))
    }
}

fn basis_combination(dim: usize, terms: &[(usize, f64)]) -> CVector {
    let mut v = CVector::zeros(dim);
    for &(idx, amp) in terms {
        v[idx] += Complex64::new(amp, 0.0);
    }
    v
}

/// `sin β sin φ|0000⟩ + cos β|1100⟩ + sin β cos φ|1010⟩`, first qubit most significant.
pub fn psi_beta_phi(beta: f64, phi: f64) -> Result<DensityOperator> {
    check_range("beta", beta, 0.0, FRAC_PI_2)?;
    check_range("phi", phi, 0.0, FRAC_PI_2)?;
    let v = basis_combination(
        16,
        &[
            (0b0000, beta.sin() * phi.sin()),
            (0b1100, beta.cos()),
            (0b1010, beta.sin() * phi.cos()),
        ],
    );
    DensityOperator::from_pure(&v)
}

/// `x|ψ_φ⟩⟨ψ_φ| + (1-x) 1/16` with `|ψ_φ⟩ = sin φ|0000⟩ + cos φ|1111⟩`.
pub fn rho_x_phi(x: f64, phi: f64) -> Result<DensityOperator> {
    check_range("x", x, 0.0, 1.0)?;
    check_range("phi", phi, 0.0, FRAC_PI_2)?;
    let v = basis_combination(16, &[(0b0000, phi.sin()), (0b1111, phi.cos())]);
    DensityOperator::from_pure(&v)?.mix(&DensityOperator::maximally_mixed(16), x)
}

/// `x|Φ⁺⟩⟨Φ⁺| + (1-x) 1/4`.
pub fn isotropic(x: f64) -> Result<DensityOperator> {
    check_range("x", x, 0.0, 1.0)?;
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let v = basis_combination(4, &[(0, h), (3, h)]);
    DensityOperator::from_pure(&v)?.mix(&DensityOperator::maximally_mixed(4), x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_PI_4;

    #[test]
    fn psi_family() {
        let r = psi_beta_phi(FRAC_PI_2, FRAC_PI_2).unwrap();
        assert!((r.matrix()[(0, 0)].re - 1.0).abs() < 1e-14);
        let r = psi_beta_phi(FRAC_PI_4, FRAC_PI_4).unwrap();
        assert!((r.purity() - 1.0).abs() < 1e-14);
        assert!((r.matrix()[(12, 12)].re - 0.5).abs() < 1e-14);
        assert!((r.matrix()[(10, 10)].re - 0.25).abs() < 1e-14);
        assert!(psi_beta_phi(2.0, 0.1).is_err());
    }

    #[test]
    fn noisy_ghz_family() {
        let r = rho_x_phi(0.0, 0.7).unwrap();
        assert!((r.purity() - 1.0 / 16.0).abs() < 1e-14);
        assert!((rho_x_phi(1.0, FRAC_PI_4).unwrap().purity() - 1.0).abs() < 1e-14);
        for x in [0.1, 0.5, 0.9] {
            let expected = x * x + 2.0 * x * (1.0 - x) / 16.0 + (1.0 - x) * (1.0 - x) / 16.0;
            assert!((rho_x_phi(x, 0.3).unwrap().purity() - expected).abs() < 1e-14);
        }
        assert!(rho_x_phi(1.5, 0.3).is_err());
    }

    #[test]
    fn isotropic_family() {
        assert!((isotropic(0.0).unwrap().purity() - 0.25).abs() < 1e-15);
        let r = isotropic(1.0).unwrap();
        assert!((r.purity() - 1.0).abs() < 1e-14);
        assert!((r.matrix()[(0, 3)].re - 0.5).abs() < 1e-15);
    }
}
