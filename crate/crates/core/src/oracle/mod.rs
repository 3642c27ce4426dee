//! Brute-force numerical checks of the analytic claims on the truncated
//! internal ⊗ motional space.
//!
//! Ordering is internal ⊗ motional with the ground block first: index
//! `i < N + 1` is `|g, i>`, index `N + 1 + n` is `|e, n>`. Pauli matrices
//! in `(g, e)` order: `sigma_z = diag(-1, 1)`, `sigma_+ = |e><g|`.

mod checks;
mod dynamics;
mod hamiltonian;
mod relation;
mod report;

pub use checks::{
    count_local_extrema, diagonal_check_with, linspace, mid_interval_time, offdiagonal_residual_at,
    theta_prime_consistency, theta_prime_reading, verify_diagonal, verify_offdiagonal, DiagonalCheck, DiagonalMapping,
    ThetaPrimeReading, ThetaPrimeRecord,
};
pub use dynamics::{
    evolve_and_compare, step_convergence, ConvergenceRecord, DynamicsRow, DynamicsSeries, NORM_DRIFT_LIMIT,
    SAMPLES_PER_PERIOD,
};
pub use hamiltonian::{
    basis_vectors, build_lab_hamiltonian, build_rotated_hamiltonian, conjugate_internal, excited_coherent, project_2x2,
    rotate_back, rotation_residual, HamiltonianBuilder, ProductState, Rotation,
};
pub use relation::{concurrence_relation, ConcurrenceRelation, HypothesisFit, RELATION_TOL};
pub use report::{
    run_validation, CheckRecord, Comparison, DynamicsSummary, Finding, Summary, ThetaPrimeEntry, ValidationConfig,
    ValidationReport, CONVERGENCE_RANGE, DIAGONAL_TOL, NEGATIVE_CONTROL_AMPLITUDE, NEGATIVE_CONTROL_FLOOR,
    NORM_DRIFT_TOL, OFFDIAGONAL_TOL, ORTHONORMALITY_TOL, PERIODICITY_TOL, ROTATION_TOL,
};
