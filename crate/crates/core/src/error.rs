use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid dimension n = {0}: need n >= 2")]
    InvalidDimension(usize),

    #[error("dimension mismatch: expected {expected} coordinates, got {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("root index {index} out of range for a root system with {len} roots")]
    RootIndexOutOfRange { index: usize, len: usize },

    #[error("not a trace-zero vector: coordinates sum to {trace}")]
    NonZeroTrace { trace: String },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("capacity exceeded: {what} is {value}, limit is {limit}")]
    Capacity {
        what: &'static str,
        value: usize,
        limit: usize,
    },

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("non-finite matrix entry at ({row}, {col})")]
    NonFinite { row: usize, col: usize },

    #[error("under-resolved quadrature: {points_per_period:.2} points per period, need at least {required}")]
    UnderResolved {
        points_per_period: f64,
        required: f64,
    },

    #[error("validation failed: {0}")]
    Validation(String),
}

impl Error {
    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Capacity { .. } => 3,
            Error::Validation(_) => 4,
            _ => 2,
        }
    }
}
