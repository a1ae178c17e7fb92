//! Complex linear-algebra substrate: states, measurements, symmetric-subspace
//! machinery and reproducible sampling.

mod linalg;
mod random;
mod state;
mod symmetric;

pub use linalg::{
    hermitian_eigenvalues, is_hermitian, kron_vector_power, max_abs_entry, projector,
    tensor_power, tensor_product, trace_product, CMatrix, CVector, DEFAULT_SIZE_CAP,
};
pub use random::{
    dirichlet_uniform, haar_random_state, haar_vector, random_density, rng_for, SeededRng,
};
pub use state::{born_probabilities, DensityOperator, Povm, ProbabilityDistribution};
pub use symmetric::{
    cycle_lengths, f_t, permutations, purity_moments, sym_dimension, sym_projector,
    sym_projector_with_cap, symmetric_power_coords, FtMethod,
};
