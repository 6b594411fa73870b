//! Generalised Smolin states and what they can do.
//!
//! The family lives on `2n` qubits and has a four-term expansion in the
//! Pauli-string basis: the identity string plus the three uniform strings
//! `sigma_i^(x)2n`, all with magnitude `1/2^(2n)`. Working in that basis
//! keeps every construction and expectation value sparse, so the crate
//! handles qubit counts far past anything a dense matrix could reach, while
//! dense oracles remain available below a configurable limit for
//! cross-checks and spectra.
//!
//! Modules:
//! - [`pauli`], [`operator`]: sparse Pauli-basis operator algebra
//!   (tensoring, single-site conjugation, partial transpose, expectations,
//!   dense round trips, a JSON wire format).
//! - [`dense`]: explicit matrices and kets, the brute-force oracle side.
//! - [`states`]: Bell projectors, the recursive and closed-form Smolin
//!   family, noisy mixtures, and the separable eta decomposition at
//!   `p = 1/3`.
//! - [`entanglement`]: spectra, partial-transpose eigenvalue analysis, and
//!   bipartition scans showing the bound-entanglement signature (positive
//!   partial transpose across even cuts, negative across odd ones).
//! - [`bell`]: dichotomic observables and the four-term correlation
//!   inequality the family violates maximally.
//! - [`concentration`]: exact simulation of remote information
//!   concentration through the state as a channel.

pub mod bell;
pub mod concentration;
pub mod dense;
pub mod entanglement;
pub mod operator;
pub mod pauli;
pub mod states;

use thiserror::Error as ThisError;

/// Coefficients below this magnitude are dropped after arithmetic, keeping
/// the exact sparsity of the Smolin family despite floating-point noise.
pub const PRUNE_THRESHOLD: f64 = 1e-14;

/// Default qubit ceiling for dense-matrix conversions (4096 x 4096).
pub const DEFAULT_DENSE_LIMIT: usize = 12;

/// Default tolerance for positive-partial-transpose verdicts: far above
/// eigensolver noise at the dense limit, far below the smallest structural
/// eigenvalue `2^(1-2n)` of the family at reachable sizes.
pub const PPT_TOL: f64 = 1e-10;

#[derive(Debug, ThisError)]
pub enum Error {
    #[error("site {index} out of range for a {n_qubits}-qubit operator")]
    SiteOutOfRange { index: usize, n_qubits: usize },

    #[error("qubit counts differ: {left} vs {right}")]
    QubitCountMismatch { left: usize, right: usize },

    #[error("{n_qubits} qubits exceed the dense limit of {limit}")]
    DenseLimitExceeded { n_qubits: usize, limit: usize },

    #[error("not Hermitian: deviation {deviation} exceeds tolerance {tol}")]
    NotHermitian { deviation: f64, tol: f64 },

    #[error("dimension {dim} is not a power of two")]
    DimensionNotPowerOfTwo { dim: usize },

    #[error("not a density operator: {0}")]
    NotDensityOperator(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub use bell::{
    canonical_settings, chsh_value, correlation, observable_from_axis, sweep, Axis, BellSettings,
    SiteSettings, SweepRow, CLASSICAL_BOUND, TSIRELSON_BOUND,
};
pub use concentration::{
    cloning_state, expected_average_state, fidelity, run_concentration, symmetric_basis_state,
    CloningParams, ConcentrationResult, OutcomeRecord, DENSE_PROTOCOL_LIMIT,
};
pub use dense::{DenseOperator, StateVector};
pub use entanglement::{
    cut_scan, cut_scan_with, pt_spectrum, sector_eigenvalues, spectrum, spectrum_with_limit,
    CutReport, CutScanOptions,
};
pub use operator::PauliOperator;
pub use pauli::{Pauli, PauliString, Phase};
pub use states::{
    bell_state, eta, gss_closed, gss_recursive, noisy_gss, separable_third, GssParams, Sign,
    TMatrix,
};
