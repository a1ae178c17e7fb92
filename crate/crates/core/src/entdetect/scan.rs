//! Detection maps over the test-state families.

use std::f64::consts::FRAC_PI_2;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::qcore::DensityOperator;

use super::criteria::{theorem3_rhs, theorem4_rhs, CorrelationOperators};
use super::scheme::{ExponentVector, LocalScheme};
use super::states::{isotropic, psi_beta_phi, rho_x_phi};

/// Margin by which the correlation must exceed the bound to count as a violation.
pub const VIOLATION_TOL: f64 = 1e-12;

pub const DEFAULT_GRID: usize = 200;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    PsiBetaPhi,
    RhoXPhi,
    Isotropic,
}

impl Family {
    pub fn as_str(self) -> &'static str {
        match self {
            Family::PsiBetaPhi => "psi-beta-phi",
            Family::RhoXPhi => "rho-x-phi",
            Family::Isotropic => "isotropic",
        }
    }

    fn qubits(self) -> usize {
        match self {
            Family::Isotropic => 2,
            _ => 4,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.replace('_', "-").as_str() {
            "psi-beta-phi" => Ok(Family::PsiBetaPhi),
            "rho-x-phi" => Ok(Family::RhoXPhi),
            "isotropic" => Ok(Family::Isotropic),
            _ => Err(Error::Argument(format!("unknown state family '{s}'"))),
        }
    }
}

/// Which separability bound to test: `J` against the plain design bound or
/// `J̃` against the shifted one.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Criterion {
    Plain,
    Shifted,
}

/// Grid sizes along the first and second parameter.
///
/// `psi-beta-phi` uses interior points `(k+1)/(n+1)·π/2` on both axes;
/// `rho-x-phi` uses closed grids over `x ∈ [0,1]` and `φ ∈ [0,π/2]`;
/// `isotropic` scans `x ∈ [0,1]` and ignores the second size.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GridSpec {
    pub n1: usize,
    pub n2: usize,
}

impl GridSpec {
    pub fn square(n: usize) -> Self {
        Self { n1: n, n2: n }
    }
}

impl Default for GridSpec {
    fn default() -> Self {
        Self::square(DEFAULT_GRID)
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ScanPoint {
    pub param1: f64,
    pub param2: f64,
    pub lhs: f64,
    pub rhs: f64,
    pub violated: bool,
}

fn closed(k: usize, n: usize, hi: f64) -> f64 {
    if n == 1 {
        return 0.0;
    }
    if k + 1 == n {
        hi
    } else {
        hi * k as f64 / (n - 1) as f64
    }
}

fn interior(k: usize, n: usize) -> f64 {
    FRAC_PI_2 * (k + 1) as f64 / (n + 1) as f64
}

fn grid_points(family: Family, grid: GridSpec) -> Result<Vec<(f64, f64)>> {
    if grid.n1 == 0 || (family != Family::Isotropic && grid.n2 == 0) {
        return Err(Error::Argument("grid sizes must be positive".into()));
    }
    Ok(match family {
        Family::PsiBetaPhi => (0..grid.n1)
            .flat_map(|i| (0..grid.n2).map(move |j| (interior(i, grid.n1), interior(j, grid.n2))))
            .collect(),
        Family::RhoXPhi => (0..grid.n1)
            .flat_map(|i| {
                (0..grid.n2).map(move |j| (closed(i, grid.n1, 1.0), closed(j, grid.n2, FRAC_PI_2)))
            })
            .collect(),
        Family::Isotropic => (0..grid.n1).map(|i| (closed(i, grid.n1, 1.0), 0.0)).collect(),
    })
}

pub fn family_state(family: Family, p1: f64, p2: f64) -> Result<DensityOperator> {
    match family {
        Family::PsiBetaPhi => psi_beta_phi(p1, p2),
        Family::RhoXPhi => rho_x_phi(p1, p2),
        Family::Isotropic => isotropic(p1),
    }
}

/// Separable-state bound for the chosen criterion.
pub fn criterion_rhs(scheme: &LocalScheme, exps: &ExponentVector, criterion: Criterion) -> Result<f64> {
    match criterion {
        Criterion::Plain => theorem3_rhs(scheme, exps),
        Criterion::Shifted => theorem4_rhs(scheme, exps),
    }
}

/// Evaluates the criterion on every grid point, row-major in `(param1, param2)`.
pub fn detect_scan(
    family: Family,
    scheme: &LocalScheme,
    exps: &ExponentVector,
    criterion: Criterion,
    grid: GridSpec,
) -> Result<Vec<ScanPoint>> {
    let dims = scheme.dims();
    if dims.len() != family.qubits() || dims.iter().any(|&d| d != 2) {
        return Err(Error::Argument(format!(
            "family {family} needs {} qubit subsystems, scheme has dimensions {dims:?}",
            family.qubits()
        )));
    }
    let rhs = criterion_rhs(scheme, exps, criterion)?;
    let ops = CorrelationOperators::new(scheme)?;
    grid_points(family, grid)?
        .into_par_iter()
        .map(|(p1, p2)| {
            let rho = family_state(family, p1, p2)?;
            let lhs = match criterion {
                Criterion::Plain => ops.j(&rho)?,
                Criterion::Shifted => ops.jtilde(&rho)?,
            };
            Ok(ScanPoint {
                param1: p1,
                param2: p2,
                lhs,
                rhs,
                violated: lhs > rhs + VIOLATION_TOL,
            })
        })
        .collect()
}
