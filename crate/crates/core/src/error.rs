//! Error type shared by every module, with stable machine-readable codes.

use thiserror::Error;

/// Errors produced by the CAD engine.
///
/// Each variant maps to a stable diagnostic code (`E_*`) used on the CLI
/// error stream.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum CadError {
    /// An operation received an argument outside its domain (zero
    /// polynomial where nonzero is required, degree too small, ...).
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// A polynomial references a variable that is not in the variable order.
    #[error("unknown variable: {0}")]
    UnknownVariable(String),

    /// Exact division was requested but the divisor does not divide.
    #[error("not divisible: {0}")]
    NotDivisible(String),

    /// The zero polynomial was supplied as a constraint.
    #[error("zero polynomial is not a valid constraint")]
    ZeroPolynomial,

    /// An empty constraint set was supplied where at least one is required.
    #[error("empty input: {0}")]
    EmptyInput(String),

    /// The polynomial being added is already part of the system.
    #[error("duplicate input: {0}")]
    DuplicateInput(String),

    /// A state document violated the schema.
    #[error("schema error at {location}: {message}")]
    Schema { location: String, message: String },

    /// A query point has the wrong number of coordinates.
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    /// A cell reference does not name a live cell of the state.
    #[error("stale or invalid cell reference: {0}")]
    StaleCell(String),

    /// Failure while parsing polynomial text.
    #[error("parse error: {0}")]
    Parse(String),
}

impl CadError {
    /// Stable machine-readable code for the CLI error stream.
    pub fn code(&self) -> &'static str {
        match self {
            CadError::InvalidInput(_) => "E_INVALID_INPUT",
            CadError::UnknownVariable(_) => "E_UNKNOWN_VAR",
            CadError::NotDivisible(_) => "E_NOT_DIVISIBLE",
            CadError::ZeroPolynomial => "E_ZERO_POLY",
            CadError::EmptyInput(_) => "E_EMPTY_INPUT",
            CadError::DuplicateInput(_) => "E_DUP_INPUT",
            CadError::Schema { .. } => "E_SCHEMA",
            CadError::DimensionMismatch { .. } => "E_DIMENSION",
            CadError::StaleCell(_) => "E_STALE_CELL",
            CadError::Parse(_) => "E_PARSE",
        }
    }
}
