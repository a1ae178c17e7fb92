//! Unbiasedness of basis collections and how it drives entanglement detection
//! with isotropic two-qubit states.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::designs::bloch_vector;
use crate::entdetect::{
    holder_product, isotropic, CorrelationOperators, ExponentVector, LocalMeasurement, LocalScheme,
    VIOLATION_TOL,
};
use crate::error::{Error, Result};
use crate::qcore::{haar_vector, rng_for, CVector, Povm, SeededRng};

const ORTHONORMAL_TOL: f64 = 1e-12;
pub const FIBONACCI_POINTS: usize = 10_000;
const REFINE_STARTS: usize = 8;
const PATTERN_TOL: f64 = 1e-10;
const CRITICAL_X_TOL: f64 = 1e-6;

/// `Θ` orthonormal bases of `C^d`.
#[derive(Clone, Debug, PartialEq)]
pub struct BasisSet {
    dim: usize,
    bases: Vec<Vec<CVector>>,
}

impl BasisSet {
    pub fn new(bases: Vec<Vec<CVector>>) -> Result<Self> {
        let dim = bases
            .first()
            .map(|b| b.len())
            .ok_or_else(|| Error::Argument("basis set is empty".into()))?;
        for (t, basis) in bases.iter().enumerate() {
            if basis.len() != dim || basis.iter().any(|v| v.len() != dim) {
                return Err(Error::Argument(format!("basis {t} is not {dim} vectors of length {dim}")));
            }
            for i in 0..dim {
                for j in 0..dim {
                    let g = basis[i].dotc(&basis[j]);
                    let target = if i == j { 1.0 } else { 0.0 };
                    if (g - Complex64::new(target, 0.0)).norm() > ORTHONORMAL_TOL {
                        return Err(Error::Argument(format!(
                            "basis {t} is not orthonormal: <{i}|{j}> = {g}"
                        )));
                    }
                }
            }
        }
        Ok(Self { dim, bases })
    }

    /// The three Pauli eigenbases.
    pub fn mub_qubit() -> Self {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let c = |a: Complex64, b: Complex64| CVector::from_vec(vec![a, b]);
        let (o, z, r, i) = (
            Complex64::new(1.0, 0.0),
            Complex64::new(0.0, 0.0),
            Complex64::new(h, 0.0),
            Complex64::new(0.0, h),
        );
        Self::new(vec![
            vec![c(o, z), c(z, o)],
            vec![c(r, r), c(r, -r)],
            vec![c(r, i), c(r, -i)],
        ])
        .expect("Pauli eigenbases are orthonormal")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn bases(&self) -> &[Vec<CVector>] {
        &self.bases
    }

    pub fn len(&self) -> usize {
        self.bases.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bases.is_empty()
    }

    /// Entrywise complex conjugate of every basis vector.
    pub fn conjugate(&self) -> Self {
        Self {
            dim: self.dim,
            bases: self
                .bases
                .iter()
                .map(|b| b.iter().map(|v| v.map(|z| z.conj())).collect())
                .collect(),
        }
    }

    /// Each basis as a projective POVM.
    pub fn povms(&self) -> Result<Vec<Povm>> {
        self.bases.iter().map(|b| Povm::from_basis(b)).collect()
    }
}

/// `U = (Θ-1)(d-1) - (2/Θ) Σ_{a<b} Σ_{i,j} (|⟨a_i|b_j⟩|² - 1/d)²`.
pub fn unbiasedness(bs: &BasisSet) -> Result<f64> {
    let theta = bs.len();
    if theta < 2 {
        return Err(Error::Argument(format!("unbiasedness needs at least two bases (got {theta})")));
    }
    let d = bs.dim() as f64;
    let mut penalty = 0.0;
    for a in 0..theta {
        for b in a + 1..theta {
            for u in &bs.bases[a] {
                for v in &bs.bases[b] {
                    penalty += (u.dotc(v).norm_sqr() - 1.0 / d).powi(2);
                }
            }
        }
    }
    Ok((theta as f64 - 1.0) * (d - 1.0) - 2.0 / theta as f64 * penalty)
}

/// Haar-random orthonormal qubit basis `{ψ, ψ⊥}`.
pub fn random_qubit_basis(rng: &mut SeededRng) -> Vec<CVector> {
    let psi = haar_vector(2, rng);
    let perp = CVector::from_vec(vec![-psi[1].conj(), psi[0].conj()]);
    vec![psi, perp]
}

fn fibonacci_point(k: usize, n: usize) -> [f64; 2] {
    let golden_angle = PI * (3.0 - 5f64.sqrt());
    let z = 1.0 - (2 * k + 1) as f64 / n as f64;
    [z.acos(), (k as f64 * golden_angle) % (2.0 * PI)]
}

/// Largest `Σ_θ I_a` over pure qubit states for a set of qubit bases.
///
/// Every pure state has `p = (1 + n·m)/2` against a basis vector with Bloch
/// vector `m`. The objective is evaluated on a Fibonacci lattice, then the
/// best few lattice points are polished by compass search on the polar
/// angles. Since `I_a` is convex in `ρ` the maximum over all states is
/// attained at a pure state.
pub fn generic_ic_bound(bs: &BasisSet, a: u32) -> Result<f64> {
    if bs.dim() != 2 {
        return Err(Error::Unsupported(format!(
            "IC maximization is implemented for qubits only (d = {})",
            bs.dim()
        )));
    }
    if a < 2 {
        return Err(Error::Argument(format!("need a >= 2 (got {a})")));
    }
    let dirs: Vec<[f64; 3]> = bs.bases.iter().flatten().map(bloch_vector).collect();
    let f = |[t, p]: [f64; 2]| -> f64 {
        let n = [t.sin() * p.cos(), t.sin() * p.sin(), t.cos()];
        dirs.iter()
            .map(|m| (0.5 * (1.0 + n[0] * m[0] + n[1] * m[1] + n[2] * m[2])).powi(a as i32))
            .sum()
    };

    let mut lattice: Vec<(f64, [f64; 2])> = (0..FIBONACCI_POINTS)
        .map(|k| {
            let x = fibonacci_point(k, FIBONACCI_POINTS);
            (f(x), x)
        })
        .collect();
    lattice.sort_by(|x, y| y.0.total_cmp(&x.0));

    let spacing = (4.0 * PI / FIBONACCI_POINTS as f64).sqrt();
    let mut best = lattice[0].0;
    for &(start_val, start) in lattice.iter().take(REFINE_STARTS) {
        let (mut val, mut x, mut step) = (start_val, start, spacing);
        while step > PATTERN_TOL {
            let mut moved = false;
            for (k, dir) in [(0, 1.0), (0, -1.0), (1, 1.0), (1, -1.0)] {
                let mut y = x;
                y[k] += dir * step;
                let v = f(y);
                if v > val {
                    (val, x, moved) = (v, y, true);
                    break;
                }
            }
            if !moved {
                step *= 0.5;
            }
        }
        best = best.max(val);
    }
    Ok(best)
}

/// Critical noise level for one basis collection.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CriticalX {
    /// Smallest `x` at which the isotropic state violates the bound, or
    /// `None` when no grid point does.
    pub x_critical: Option<f64>,
    /// Separable bound `Π_n (max Σ_θ I_2)^{1/2}` with unit weights.
    pub rhs: f64,
}

/// Side A measures the bases, side B their complex conjugates, and the
/// isotropic state `ρ_x` is tested against the `a = (2, 2)` bound. The first
/// violating grid point is refined by bisection to `1e-6`.
pub fn critical_x_for_bases(bs: &BasisSet, x_grid: &[f64]) -> Result<CriticalX> {
    if x_grid.is_empty() {
        return Err(Error::Argument("empty x grid".into()));
    }
    if x_grid.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::Argument("x grid must be strictly increasing".into()));
    }
    let conj = bs.conjugate();
    let side = |b: &BasisSet| -> Result<Vec<LocalMeasurement>> {
        b.povms()?
            .into_iter()
            .map(|p| LocalMeasurement::new(p, 1.0, 2, 2))
            .collect()
    };
    let scheme = LocalScheme::new(vec![side(bs)?, side(&conj)?])?;
    let ops = CorrelationOperators::new(&scheme)?;
    let exps = ExponentVector::new(vec![2, 2])?;
    let rhs = holder_product(&[generic_ic_bound(bs, 2)?, generic_ic_bound(&conj, 2)?], &exps);

    let violated = |x: f64| -> Result<bool> { Ok(ops.j(&isotropic(x)?)? > rhs + VIOLATION_TOL) };
    let mut prev: Option<f64> = None;
    for &x in x_grid {
        if violated(x)? {
            let mut lo = match prev {
                Some(p) => p,
                None if x > 0.0 && !violated(0.0)? => 0.0,
                None => return Ok(CriticalX { x_critical: Some(x), rhs }),
            };
            let mut hi = x;
            while hi - lo > CRITICAL_X_TOL {
                let mid = 0.5 * (lo + hi);
                if violated(mid)? {
                    hi = mid;
                } else {
                    lo = mid;
                }
            }
            return Ok(CriticalX { x_critical: Some(hi), rhs });
        }
        prev = Some(x);
    }
    Ok(CriticalX { x_critical: None, rhs })
}

#[derive(Clone, Debug, PartialEq)]
pub struct BasesSample {
    pub bases: BasisSet,
    pub u: f64,
    pub x_critical: Option<f64>,
    pub rhs: f64,
}

/// `n_sets` Haar-random triples of qubit bases; triple `k` draws from stream `k`.
pub fn random_bases_experiment(n_sets: usize, seed: u64, x_grid: &[f64]) -> Result<Vec<BasesSample>> {
    (0..n_sets)
        .into_par_iter()
        .map(|k| {
            let mut rng = rng_for(seed, k as u64);
            let bases = BasisSet::new((0..3).map(|_| random_qubit_basis(&mut rng)).collect())?;
            let u = unbiasedness(&bases)?;
            let c = critical_x_for_bases(&bases, x_grid)?;
            Ok(BasesSample {
                bases,
                u,
                x_critical: c.x_critical,
                rhs: c.rhs,
            })
        })
        .collect()
}

/// `n` equally spaced points on `[0, 1]`.
pub fn unit_grid(n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![0.0],
        _ => (0..n)
            .map(|k| if k + 1 == n { 1.0 } else { k as f64 / (n - 1) as f64 })
            .collect(),
    }
}

fn average_ranks(xs: &[f64]) -> Vec<f64> {
    let mut idx: Vec<usize> = (0..xs.len()).collect();
    idx.sort_by(|&a, &b| xs[a].total_cmp(&xs[b]));
    let mut ranks = vec![0.0; xs.len()];
    let mut i = 0;
    while i < idx.len() {
        let mut j = i;
        while j + 1 < idx.len() && xs[idx[j + 1]] == xs[idx[i]] {
            j += 1;
        }
        let r = 0.5 * (i + j) as f64 + 1.0;
        for &k in &idx[i..=j] {
            ranks[k] = r;
        }
        i = j + 1;
    }
    ranks
}

/// Spearman rank correlation with tied values sharing their average rank.
pub fn spearman_rank_correlation(xs: &[f64], ys: &[f64]) -> Result<f64> {
    if xs.len() != ys.len() || xs.len() < 2 {
        return Err(Error::Argument("need two equal-length samples of size >= 2".into()));
    }
    let (rx, ry) = (average_ranks(xs), average_ranks(ys));
    let n = rx.len() as f64;
    let (mx, my) = (rx.iter().sum::<f64>() / n, ry.iter().sum::<f64>() / n);
    let (mut sxy, mut sxx, mut syy) = (0.0, 0.0, 0.0);
    for (a, b) in rx.iter().zip(&ry) {
        sxy += (a - mx) * (b - my);
        sxx += (a - mx) * (a - mx);
        syy += (b - my) * (b - my);
    }
    if sxx == 0.0 || syy == 0.0 {
        return Err(Error::Argument("rank correlation undefined for a constant sample".into()));
    }
    Ok(sxy / (sxx * syy).sqrt())
}
