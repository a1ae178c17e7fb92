use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{argument, Error, Result};

pub type CMatrix = DMatrix<Complex64>;
pub type CVector = DVector<Complex64>;

/// Largest matrix side allowed for explicitly materialized tensor-power operators.
pub const DEFAULT_SIZE_CAP: usize = 4096;

/// Kronecker product of `operators` in list order.
pub fn tensor_product(operators: &[CMatrix]) -> Result<CMatrix> {
    let (first, rest) = operators
        .split_first()
        .ok_or_else(|| Error::Argument("tensor product of an empty list".into()))?;
    for (i, op) in operators.iter().enumerate() {
        if !op.is_square() {
            return argument(format!(
                "operator {i} is {}x{}, expected square",
                op.nrows(),
                op.ncols()
            ));
        }
    }
    Ok(rest.iter().fold(first.clone(), |acc, op| acc.kronecker(op)))
}

/// `op^{⊗n}`; `n = 0` gives the 1×1 identity.
pub fn tensor_power(op: &CMatrix, n: usize) -> CMatrix {
    (0..n).fold(CMatrix::identity(1, 1), |acc, _| acc.kronecker(op))
}

/// `|v⟩^{⊗n}` as a column vector of length `len(v)^n`.
pub fn kron_vector_power(v: &CVector, n: usize) -> CVector {
    (0..n).fold(CVector::from_element(1, Complex64::new(1.0, 0.0)), |acc, _| {
        acc.kronecker(v)
    })
}

/// `|v⟩⟨v|`.
pub fn projector(v: &CVector) -> CMatrix {
    v * v.adjoint()
}

/// `tr(A·B)` without forming the product.
pub fn trace_product(a: &CMatrix, b: &CMatrix) -> Complex64 {
    debug_assert_eq!(a.ncols(), b.nrows());
    debug_assert_eq!(a.nrows(), b.ncols());
    let mut acc = Complex64::new(0.0, 0.0);
    for i in 0..a.nrows() {
        for j in 0..a.ncols() {
            acc += a[(i, j)] * b[(j, i)];
        }
    }
    acc
}

pub fn max_abs_entry(m: &CMatrix) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

pub fn is_hermitian(m: &CMatrix, tol: f64) -> bool {
    if !m.is_square() {
        return false;
    }
    let n = m.nrows();
    (0..n).all(|i| (i..n).all(|j| (m[(i, j)] - m[(j, i)].conj()).norm() <= tol))
}

/// Eigenvalues of a Hermitian matrix in ascending order. Only the upper
/// triangle is trusted; callers check hermiticity first.
pub fn hermitian_eigenvalues(m: &CMatrix) -> Vec<f64> {
    let mut h = m.clone();
    let n = h.nrows();
    for i in 0..n {
        for j in (i + 1)..n {
            let avg = (h[(i, j)] + h[(j, i)].conj()) * 0.5;
            h[(i, j)] = avg;
            h[(j, i)] = avg.conj();
        }
        h[(i, i)] = Complex64::new(h[(i, i)].re, 0.0);
    }
    let mut values: Vec<f64> = h.symmetric_eigen().eigenvalues.iter().copied().collect();
    values.sort_by(f64::total_cmp);
    values
}
