use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("negative probability {value} at index {index}")]
    NegativeProbability { index: usize, value: f64 },

    #[error("probabilities sum to {sum}, expected 1")]
    NotNormalized { sum: f64 },

    #[error("invalid entry {value} at row {row}, col {col}")]
    InvalidEntry { row: usize, col: usize, value: f64 },

    #[error("row {row} has {found} columns, expected {expected}")]
    RaggedRow {
        row: usize,
        expected: usize,
        found: usize,
    },

    #[error("table has {found} rows, expected {expected}")]
    RowCount { expected: usize, found: usize },

    #[error("alphabet is empty")]
    EmptyAlphabet,

    #[error("duplicate label {0:?}")]
    DuplicateLabel(String),

    #[error("unknown register {0:?}")]
    UnknownRegister(String),

    #[error("invalid register layout: {0}")]
    LayoutMismatch(String),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("dimension {dim} exceeds the supported maximum {max}")]
    DimensionTooLarge { dim: usize, max: usize },

    #[error("state is not normalized (norm {norm})")]
    NotNormalizedState { norm: f64 },

    #[error("matrix is not Hermitian (deviation {deviation:e})")]
    NotHermitian { deviation: f64 },

    #[error("matrix has negative eigenvalue {0:e}")]
    NegativeEigenvalue(f64),

    #[error("trace is {0}, expected 1")]
    InvalidTrace(f64),

    #[error("eigensolver did not converge after {sweeps} sweeps")]
    NoConvergence { sweeps: usize },

    #[error("phase assignment does not match the support: {0}")]
    PhaseKeyMismatch(String),

    #[error("expected {expected} coordinates, got {found}")]
    CoordinateCount { expected: usize, found: usize },

    #[error("{count} free phase coordinates exceed the limit of {max}")]
    TooManyCoordinates { count: usize, max: usize },

    #[error("parameter {name} = {value} out of range: {reason}")]
    ParameterOutOfRange {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },

    #[error("malformed function table: {0}")]
    MalformedTable(String),

    #[error("invalid POVM: {0}")]
    InvalidPovm(String),

    #[error("state does not reproduce the target distribution (total variation {0:e})")]
    DistributionMismatch(f64),

    #[error("unknown primitive {0:?}")]
    UnknownPrimitive(String),

    #[error("unknown suite {0:?}")]
    UnknownSuite(String),
}

pub type Result<T> = std::result::Result<T, Error>;
