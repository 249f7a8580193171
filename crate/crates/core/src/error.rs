use thiserror::Error;

/// Crate-wide error type.
#[derive(Error, Debug, Clone, PartialEq)]
pub enum Error {
    #[error("matrix is not square: {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is not Hermitian: max |M - M^dag| = {asymmetry:.3e}")]
    NotHermitian { asymmetry: f64 },
    #[error("matrix contains NaN or infinite entries")]
    NonFinite,
    #[error("dimension mismatch: {left} vs {right}")]
    DimMismatch { left: usize, right: usize },
    #[error("index or order out of range: {0}")]
    RangeError(String),
    #[error("invalid quantum state: {0}")]
    InvalidState(String),
    #[error("Renyi order must be positive and != 1, got {0}")]
    InvalidOrder(f64),
    #[error("Hamiltonian is degenerate (strict mode) at level index {index}")]
    DegenerateHamiltonian { index: usize },
    #[error("passive rearrangement is ambiguous under the degenerate Hamiltonian")]
    AmbiguousRearrangement,
    #[error("jump rate profile r_i is not concave at i = {index}: second difference {value:.3e}")]
    ConcavityViolated { index: usize, value: f64 },
    #[error("evolution time must be non-negative, got {0}")]
    NegativeTime(f64),
    #[error("evolved state violates density-matrix invariants: {0}")]
    StateInvariantViolated(String),
    #[error("source spectrum does not majorize the target")]
    NotMajorizing,
    #[error("invalid generator: {0}")]
    InvalidGenerator(String),
    #[error("Fock cutoff N = {0} too small, need N >= 5")]
    CutoffTooSmall(usize),
    #[error("spectrum degenerate at t = {t}: min gap {gap:.3e}")]
    DegenerateSpectrumAtT { t: f64, gap: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
