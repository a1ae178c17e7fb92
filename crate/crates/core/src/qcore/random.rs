use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Exp1, StandardNormal};

use super::linalg::{projector, CMatrix, CVector};
use super::state::DensityOperator;
use crate::error::{argument, Result};

pub type SeededRng = ChaCha8Rng;

/// Generator for substream `stream` of `seed`.
///
/// ChaCha is counter based: each `(seed, stream)` pair addresses an
/// independent keystream, so parallel workers can derive their own generator
/// from an index without sharing state.
pub fn rng_for(seed: u64, stream: u64) -> SeededRng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Normalized vector of i.i.d. standard complex Gaussians (Haar on the unit sphere).
pub fn haar_vector<R: rand::Rng + ?Sized>(d: usize, rng: &mut R) -> CVector {
    loop {
        let v = CVector::from_fn(d, |_, _| {
            Complex64::new(StandardNormal.sample(rng), StandardNormal.sample(rng))
        });
        let n = v.norm();
        if n > 1e-300 {
            return v / Complex64::new(n, 0.0);
        }
    }
}

/// Haar-random pure state `|ψ⟩⟨ψ|`, deterministic in `seed`.
pub fn haar_random_state(d: usize, seed: u64) -> DensityOperator {
    let v = haar_vector(d, &mut rng_for(seed, 0));
    DensityOperator::new(projector(&v)).expect("normalized projector is a valid state")
}

/// Uniform sample from the probability simplex (Dirichlet(1, …, 1)).
pub fn dirichlet_uniform<R: rand::Rng + ?Sized>(n: usize, rng: &mut R) -> Vec<f64> {
    let mut w: Vec<f64> = (0..n).map(|_| Exp1.sample(rng)).collect();
    let total: f64 = w.iter().sum();
    w.iter_mut().for_each(|x| *x /= total);
    w
}

/// Mixture of `rank` Haar-random pure states with Dirichlet(1, …, 1) weights.
pub fn random_density(d: usize, rank: usize, seed: u64) -> Result<DensityOperator> {
    if rank == 0 || rank > d {
        return argument(format!("rank {rank} outside 1..={d}"));
    }
    let mut rng = rng_for(seed, 0);
    let weights = if rank == 1 {
        vec![1.0]
    } else {
        dirichlet_uniform(rank, &mut rng)
    };
    let mut m = CMatrix::zeros(d, d);
    for w in weights {
        m += projector(&haar_vector(d, &mut rng)) * Complex64::new(w, 0.0);
    }
    DensityOperator::new(m)
}
