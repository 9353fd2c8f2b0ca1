use thiserror::Error;

/// Errors raised by the algebra engine and the fixture harness.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("ring mismatch: {0}")]
    RingMismatch(String),
    #[error("dimension mismatch: expected {expected} variables, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("{operation}: inhomogeneous element {element}")]
    Inhomogeneous {
        operation: &'static str,
        element: String,
    },
    #[error("{operation}: shape mismatch ({detail})")]
    ShapeMismatch {
        operation: &'static str,
        detail: String,
    },
    #[error("{operation}: containment violated by {element} (degree {degree})")]
    ContainmentViolated {
        operation: &'static str,
        element: String,
        degree: i32,
    },
    #[error("{operation}: index {index} outside window (max {max})")]
    WindowExceeded {
        operation: &'static str,
        index: usize,
        max: usize,
    },
    #[error("prime {0} carries no primality certificate")]
    UncertifiedPrime(String),
    #[error("operator extraction failed: {0}")]
    LiftFailure(String),
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("not a regular sequence: {0}")]
    NotRegular(String),
    #[error("invalid fixture: {0}")]
    Validation(String),
    #[error("invalid field characteristic {0}: must be a prime below 2^31")]
    BadPrime(u64),
}

pub type Result<T> = std::result::Result<T, AlgebraError>;
