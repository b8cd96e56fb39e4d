use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(&'static str),

    #[error("dimension mismatch: expected {expected}, got {actual}")]
    Dimension { expected: usize, actual: usize },

    #[error("unsupported degenerate case: {0}")]
    Degenerate(&'static str),

    #[error("degenerate channel: column {column} has zero norm")]
    DegenerateChannel { column: usize },

    #[error("infeasible precoder: {0}")]
    InfeasiblePrecoder(&'static str),

    #[error("invariant violated: {0}")]
    InvariantViolation(&'static str),

    #[error("undefined correlation: sample has zero variance")]
    UndefinedCorrelation,

    #[error("unknown law `{0}`")]
    UnknownLaw(alloc::string::String),
}

pub type Result<T> = core::result::Result<T, Error>;
