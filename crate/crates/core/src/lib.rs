//! Numerics for design-structured quantum measurements.
//!
//! A set of POVMs is *design-structured* when the `t`-fold tensor powers of its
//! effects sum to a multiple of the projector onto the symmetric subspace. Such
//! measurements come from quantum `t`-designs, and their outcome statistics have
//! state-determined indices of coincidence
//!
//! ```text
//! (1/Θ) Σ_θ Σ_i p_{i|θ}^a = L^{1-a} d^a 𝒟_d^{(a)} F_a(ρ),
//! ```
//!
//! which this crate turns into entropic uncertainty bounds and multipartite
//! entanglement criteria.
//!
//! Module map:
//!
//! - [`qcore`]: complex matrices, states, POVMs, Born rule, symmetric projectors,
//!   `F_t(ρ)` and seeded sampling.
//! - [`designs`]: built-in designs, certification, POVM construction and the
//!   design file format.
//! - [`design_search`]: frame-potential minimization to the Welch bound.
//! - [`eur`]: Rényi entropies, the two extremal distribution families and the
//!   four entropic lower bounds.
//! - [`entdetect`]: correlation measures `J`, `J̃`, the Hölder-type separability
//!   bounds and parameter scans.
//! - [`unbiasedness`] and [`higher_ic`]: the random-bases experiment and the
//!   view-operator bound on higher-order coincidences.

pub mod design_search;
pub mod designs;
pub mod entdetect;
pub mod error;
pub mod eur;
pub mod higher_ic;
pub mod qcore;
pub mod unbiasedness;

pub use error::{Error, Result};
pub use num_complex::Complex64;
