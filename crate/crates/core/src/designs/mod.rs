//! Quantum `t`-designs: built-in sets, certification, POVM construction and
//! the on-disk design format.

mod io;
mod povm;

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::qcore::{
    kron_vector_power, max_abs_entry, sym_projector_with_cap, CMatrix, CVector, DEFAULT_SIZE_CAP,
};

pub use io::{load_design, parse_design, save_design, to_json};
pub use povm::{antipodal_pairs, group_to_povms, single_group, DsmSet};

const UNIT_NORM_TOL: f64 = 1e-12;

/// `K` unit vectors in `C^d` with a claimed design strength.
#[derive(Clone, Debug, PartialEq)]
pub struct QuantumDesign {
    dim: usize,
    vectors: Vec<CVector>,
    strength: u32,
    name: Option<String>,
}

impl QuantumDesign {
    /// Checks dimensions and unit norms; the design property itself is
    /// certified separately by [`verify_design`].
    pub fn new(dim: usize, vectors: Vec<CVector>, strength: u32, name: Option<String>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidDesign("dimension must be positive".into()));
        }
        if strength == 0 {
            return Err(Error::InvalidDesign("strength must be at least 1".into()));
        }
        if vectors.is_empty() {
            return Err(Error::InvalidDesign("no vectors".into()));
        }
        for (i, v) in vectors.iter().enumerate() {
            if v.len() != dim {
                return Err(Error::InvalidDesign(format!(
                    "vector {i} has {} amplitudes, expected {dim}",
                    v.len()
                )));
            }
            let norm = v.norm();
            if (norm - 1.0).abs() > UNIT_NORM_TOL {
                return Err(Error::InvalidDesign(format!(
                    "vector {i} has norm {norm}, expected 1"
                )));
            }
        }
        Ok(Self {
            dim,
            vectors,
            strength,
            name,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vectors(&self) -> &[CVector] {
        &self.vectors
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn strength(&self) -> u32 {
        self.strength
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    /// Bloch vectors of a qubit design.
    pub fn bloch_vectors(&self) -> Result<Vec<[f64; 3]>> {
        if self.dim != 2 {
            return Err(Error::Unsupported(format!(
                "Bloch vectors need d = 2, design has d = {}",
                self.dim
            )));
        }
        Ok(self.vectors.iter().map(bloch_vector).collect())
    }
}

/// Bloch vector `(⟨X⟩, ⟨Y⟩, ⟨Z⟩)` of a normalized qubit state.
pub fn bloch_vector(v: &CVector) -> [f64; 3] {
    let (a, b) = (v[0], v[1]);
    let ab = a.conj() * b;
    [2.0 * ab.re, 2.0 * ab.im, a.norm_sqr() - b.norm_sqr()]
}

/// Qubit state with Bloch vector `n` (normalized internally).
pub fn state_from_bloch(n: [f64; 3]) -> CVector {
    let len = (n[0] * n[0] + n[1] * n[1] + n[2] * n[2]).sqrt();
    let [x, y, z] = n.map(|c| c / len);
    if z <= -1.0 + 1e-15 {
        return CVector::from_vec(vec![Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)]);
    }
    let up = ((1.0 + z) / 2.0).sqrt();
    let down = Complex64::new(x, y) / (2.0 * (1.0 + z)).sqrt();
    let v = CVector::from_vec(vec![Complex64::new(up, 0.0), down]);
    let norm = v.norm();
    v / Complex64::new(norm, 0.0)
}

/// The designs shipped with the library.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BuiltinDesign {
    /// 12 icosahedron vertices on the Bloch sphere, a 5-design.
    Icosahedron,
    /// 24-point qubit 7-design (a deformed snub cube), found by frame-potential
    /// minimization and re-certified on load.
    SnubCube7,
    /// Eigenvectors of the three Pauli operators, a 2-design.
    MubQubit,
}

impl BuiltinDesign {
    pub const ALL: [BuiltinDesign; 3] = [Self::Icosahedron, Self::SnubCube7, Self::MubQubit];

    pub fn as_str(self) -> &'static str {
        match self {
            Self::Icosahedron => "icosahedron",
            Self::SnubCube7 => "snub_cube_7",
            Self::MubQubit => "mub_qubit",
        }
    }
}

impl fmt::Display for BuiltinDesign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for BuiltinDesign {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().replace('-', "_").as_str() {
            "icosahedron" | "ico" => Ok(Self::Icosahedron),
            "snub_cube_7" | "snub_cube" | "cube" => Ok(Self::SnubCube7),
            "mub_qubit" | "mub" => Ok(Self::MubQubit),
            other => Err(Error::Argument(format!("unknown design '{other}'"))),
        }
    }
}

const SNUB_CUBE_7: &str = include_str!("../../data/snub_cube_7.json");

pub fn builtin_design(which: BuiltinDesign) -> Result<QuantumDesign> {
    match which {
        BuiltinDesign::Icosahedron => {
            let phi = (1.0 + 5f64.sqrt()) / 2.0;
            let mut points = Vec::with_capacity(12);
            // (0, ±1, ±φ) and its cyclic shifts.
            for s1 in [1.0, -1.0] {
                for s2 in [1.0, -1.0] {
                    let base = [0.0, s1, s2 * phi];
                    for shift in 0..3 {
                        points.push([base[shift % 3], base[(shift + 1) % 3], base[(shift + 2) % 3]]);
                    }
                }
            }
            let vectors = points.into_iter().map(state_from_bloch).collect();
            QuantumDesign::new(2, vectors, 5, Some("icosahedron".into()))
        }
        BuiltinDesign::MubQubit => {
            let s = 0.5f64.sqrt();
            let c = |re: f64, im: f64| Complex64::new(re, im);
            let vectors = vec![
                CVector::from_vec(vec![c(1.0, 0.0), c(0.0, 0.0)]),
                CVector::from_vec(vec![c(0.0, 0.0), c(1.0, 0.0)]),
                CVector::from_vec(vec![c(s, 0.0), c(s, 0.0)]),
                CVector::from_vec(vec![c(s, 0.0), c(-s, 0.0)]),
                CVector::from_vec(vec![c(s, 0.0), c(0.0, s)]),
                CVector::from_vec(vec![c(s, 0.0), c(0.0, -s)]),
            ];
            QuantumDesign::new(2, vectors, 2, Some("mub_qubit".into()))
        }
        BuiltinDesign::SnubCube7 => {
            let design = parse_design(SNUB_CUBE_7)?;
            let report = verify_design(&design, 7, 1e-8);
            if !report.pass {
                return Err(Error::InvalidDesign(format!(
                    "bundled snub cube failed re-certification: {report:?}"
                )));
            }
            Ok(design)
        }
    }
}

/// `𝒟_d^{(t)} = t!(d-1)!/(t+d-1)!`, the inverse dimension of the symmetric subspace.
pub fn design_constant(d: usize, t: usize) -> f64 {
    (1..d).map(|j| j as f64 / (t + j) as f64).product()
}

/// `Φ_t = Σ_{j,k} |⟨ψ_j|ψ_k⟩|^{2t}`.
pub fn frame_potential(vectors: &[CVector], t: usize) -> f64 {
    let mut total = 0.0;
    for (j, a) in vectors.iter().enumerate() {
        total += a.norm_squared().powi(2 * t as i32);
        for b in &vectors[j + 1..] {
            total += 2.0 * a.dotc(b).norm_sqr().powi(t as i32);
        }
    }
    total
}

/// `K² 𝒟_d^{(t)}`, the minimum of `Φ_t` over `K` unit vectors in `C^d`.
pub fn welch_bound(k: usize, d: usize, t: usize) -> f64 {
    (k * k) as f64 * design_constant(d, t)
}

#[derive(Clone, Debug, PartialEq)]
pub struct VerificationReport {
    pub t: usize,
    /// Max-entry deviation of `Σ_k |ψ_k⟩⟨ψ_k|^{⊗t}` from `K 𝒟 Π_sym`; `None`
    /// when `d^t` exceeds the size cap and only the frame potential was checked.
    pub residual: Option<f64>,
    pub frame_potential: f64,
    pub welch_bound: f64,
    pub pass: bool,
}

impl VerificationReport {
    pub fn residual_skipped(&self) -> bool {
        self.residual.is_none()
    }
}

pub fn verify_design(design: &QuantumDesign, t: usize, tol: f64) -> VerificationReport {
    verify_design_with_cap(design, t, tol, DEFAULT_SIZE_CAP)
}

pub fn verify_design_with_cap(design: &QuantumDesign, t: usize, tol: f64, cap: usize) -> VerificationReport {
    let k = design.len();
    let d = design.dim();
    let fp = frame_potential(design.vectors(), t);
    let wb = welch_bound(k, d, t);
    let residual = sym_projector_with_cap(d, t, cap).ok().map(|proj| {
        let n = proj.nrows();
        let mut sum = CMatrix::zeros(n, n);
        for v in design.vectors() {
            let vt = kron_vector_power(v, t);
            sum += &vt * vt.adjoint();
        }
        sum -= proj * Complex64::new(k as f64 * design_constant(d, t), 0.0);
        max_abs_entry(&sum)
    });
    let potential_ok = (fp - wb).abs() <= tol * (k * k) as f64;
    let pass = potential_ok && residual.is_none_or(|r| r <= tol);
    VerificationReport {
        t,
        residual,
        frame_potential: fp,
        welch_bound: wb,
        pass,
    }
}
