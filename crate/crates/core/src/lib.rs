//! Full and rotating-wave treatments of a laser-driven trapped two-level
//! ion, evaluated side by side in closed form and checked against a
//! truncated Fock-space numerical oracle.
//!
//! * [`closed_forms`]: parameter model plus every analytic expression
//!   (energies, diagonalization times, angles, probabilities, concurrences).
//! * [`fock`]: dense complex kernels on the truncated oscillator.
//! * [`oracle`]: Hamiltonian builders on the internal ⊗ motional product
//!   space and brute-force checks of the analytic claims.
//! * [`entanglement`]: effective two-qubit density matrices and the
//!   Wootters concurrence.
//! * [`cli`]: config parsing, figure tables and the command drivers used by
//!   the `ionrwa` binary.

pub mod cli;
pub mod closed_forms;
pub mod entanglement;
pub mod error;
pub mod fock;
pub mod oracle;

pub use closed_forms::{HamiltonianKind, SystemParams};
pub use error::{Error, Result};
pub use num_complex::Complex64;
