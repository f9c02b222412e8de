//! Error type shared across the crate.

/// Errors produced by the library.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// A recurrence table does not hold enough coefficients for the request.
    #[error("insufficient recurrence coefficients: need {needed}, have {available}")]
    InsufficientCoefficients { needed: usize, available: usize },

    /// A recurrence table failed validation (non-finite entries, b <= 0, ...).
    #[error("invalid recurrence table: {0}")]
    InvalidTable(String),

    /// An argument lies outside the mathematical domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// The requested measure has no built-in coefficient route.
    #[error("unsupported measure: {0}")]
    UnsupportedMeasure(String),

    /// The tridiagonal eigensolver did not converge.
    #[error("eigensolver failed to converge on eigenvalue {index} after {sweeps} sweeps")]
    EigenNonConvergence { index: usize, sweeps: usize },

    /// A coefficient conversion produced inconsistent (non-positive) values.
    #[error("inconsistent coefficients: {0}")]
    InconsistentCoefficients(String),

    /// Generic numeric failure with context.
    #[error("numeric failure: {0}")]
    Numeric(String),

    /// The design matrix is numerically rank deficient.
    #[error("ill-conditioned design matrix (gram discrepancy {discrepancy:.3e})")]
    IllConditionedDesign { discrepancy: f64 },

    /// The reference oracle could not meet its accuracy target.
    #[error("oracle accuracy target not met: {0}")]
    OracleAccuracy(String),

    /// A coefficient-table file failed to parse.
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    /// I/O failure while reading or writing a table file.
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
