use thiserror::Error;

/// Errors raised by state construction, kernels, measures and audits.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix has non-finite entry at ({row}, {col})")]
    NonFinite { row: usize, col: usize },

    #[error("expected {expected} entries for a {dim}x{dim} matrix, got {found}")]
    BadShape {
        dim: usize,
        expected: usize,
        found: usize,
    },

    #[error("dimension must be at least {min}, got {dim}")]
    BadDimension { dim: usize, min: usize },

    #[error("matrix is not Hermitian (max |H - H^dagger| = {deviation:e})")]
    NotHermitian { deviation: f64 },

    #[error("matrix is not positive semidefinite (min eigenvalue {min_eigenvalue:e})")]
    NotPsd { min_eigenvalue: f64 },

    #[error("trace is not 1 (got {trace})")]
    BadTrace { trace: f64 },

    #[error("vector is not normalized (norm {norm})")]
    NotNormalized { norm: f64 },

    #[error("eigensolver did not converge within {iterations} iterations")]
    NoConvergence { iterations: usize },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("operation requires dimension {expected}, found {found}")]
    WrongDimension { expected: usize, found: usize },

    #[error("Bloch vector lies outside the unit ball (|r| = {norm})")]
    BlochOutOfBall { norm: f64 },

    #[error("rank {rank} is invalid for dimension {dim}")]
    BadRank { rank: usize, dim: usize },

    #[error("basis is not orthonormal (max |U^dagger U - I| = {defect:e})")]
    NotOrthonormal { defect: f64 },

    #[error("matrix is not real orthogonal (max |O^T O - I| = {defect:e})")]
    NotOrthogonal { defect: f64 },

    #[error("operator has imaginary entries (max |Im| = {max_imag:e})")]
    NotReal { max_imag: f64 },

    #[error("Kraus operators are not complete (max |sum K^T K - I| = {defect:e})")]
    IncompleteKraus { defect: f64 },

    #[error("invalid real projector set: {reason}")]
    InvalidProjectors { reason: String },

    #[error("alpha must lie in (0, 1), got {alpha}")]
    BadAlpha { alpha: f64 },

    #[error("sum of second-order principal minors is negative ({value:e})")]
    NegativeMinorSum { value: f64 },

    #[error("unknown check name `{0}`")]
    UnknownCheckName(String),

    #[error("check `{check}` does not apply to dimension {dim}")]
    CheckNotApplicable { check: String, dim: usize },

    #[error("audit needs at least one check")]
    EmptyChecks,

    #[error("unknown tolerance key `{0}`")]
    UnknownTolerance(String),

    #[error("state file: {0}")]
    StateFormat(String),
}

pub type Result<T> = std::result::Result<T, Error>;
