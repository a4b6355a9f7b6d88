use thiserror::Error;

/// Errors raised by the coefficient machinery.
///
/// Hypothesis violations carry the violated condition verbatim so that
/// front ends can surface it unchanged.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{0}")]
    Hypothesis(&'static str),

    #[error("series order mismatch: {left} vs {right}")]
    OrderMismatch { left: usize, right: usize },

    #[error("series constant term must be {expected}, found {found}")]
    ConstantTerm { expected: f64, found: String },

    #[error("coefficient triple is not admissible for a Schwarz function")]
    Inadmissible,

    #[error("chart parameter {index} lies outside the closed unit disk (|z| = {modulus})")]
    OutsideDisk { index: usize, modulus: f64 },

    #[error("extremal index must be 1, 2 or 3, got {0}")]
    ExtremalIndex(usize),

    #[error("truncation order must be at least {min}, got {got}")]
    OrderTooLow { min: usize, got: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
