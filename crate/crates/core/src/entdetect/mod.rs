//! Entanglement criteria from local design-structured measurements.
//!
//! A separable state keeps the correlation `J` (or its traceless variant
//! `J̃`) below a Hölder product of per-subsystem IC bounds; exceeding it
//! certifies entanglement.

mod criteria;
mod oracle;
mod scan;
mod scheme;
mod states;

pub use criteria::{
    correlation_j, correlation_j_product, correlation_jtilde, correlation_jtilde_product,
    holder_product, modified_ic_bound, theorem3_rhs, theorem4_rhs, CorrelationOperators,
    JOINT_DIM_CAP,
};
pub use oracle::{separable_oracle, OracleResult, HILL_CLIMB_STEPS, STEP_DECAY};
pub use scan::{
    criterion_rhs, detect_scan, family_state, Criterion, Family, GridSpec, ScanPoint,
    DEFAULT_GRID, VIOLATION_TOL,
};
pub use scheme::{ExponentVector, LocalMeasurement, LocalScheme};
pub use states::{isotropic, psi_beta_phi, rho_x_phi};
