use thiserror::Error;

/// Errors shared by all modules of the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix is not square")]
    NotSquare,
    #[error("matrix is not Hermitian: max asymmetry {max_asymmetry:.3e} exceeds tolerance {tolerance:.3e}")]
    NotHermitian { max_asymmetry: f64, tolerance: f64 },
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("state vector is not normalized: |norm - 1| = {deviation:.3e}")]
    NonNormalizedState { deviation: f64 },
    #[error("non-finite entry encountered")]
    NonFinite,
    #[error("eigensolver failed to converge within {sweeps} sweeps")]
    ConvergenceFailure { sweeps: usize },
    #[error("eigenvalue {value:.3e} below the positive-semidefinite floor -{floor:.3e}")]
    NegativeEigenvalue { value: f64, floor: f64 },
    #[error("density matrix trace deviates from one by {deviation:.3e}")]
    TraceDeviation { deviation: f64 },
    #[error("superposition components cancel: assembled norm^2 = {norm_sq:.3e}")]
    DegenerateSuperposition { norm_sq: f64 },
    #[error("coefficient weights not normalized: |sum |alpha|^2 - 1| = {deviation:.3e}")]
    CoefficientsNotNormalized { deviation: f64 },
    #[error("superposition needs at least one component")]
    EmptySuperposition,
    #[error("invalid dimension {0}")]
    InvalidDimension(usize),
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("ensemble generation failed after {attempts} attempts")]
    GenerationFailure { attempts: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
