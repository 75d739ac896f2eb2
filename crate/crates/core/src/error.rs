use thiserror::Error;

/// Errors raised by constructions and certificates.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid group: {0}")]
    InvalidGroup(String),

    #[error("element {coords:?} does not belong to group {group}")]
    NotAnElement { coords: Vec<usize>, group: String },

    #[error("group mismatch: {left} vs {right}")]
    GroupMismatch { left: String, right: String },

    #[error("invalid exponent p = {0}")]
    InvalidExponent(f64),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("lacunarity violated: {0}")]
    Lacunarity(String),

    #[error("containment violated: {0}")]
    Containment(String),

    #[error("ill-conditioned rank decision: residual {residual:e} inside ambiguity band; use a smaller model")]
    IllConditioned { residual: f64 },

    #[error("dimension law violated: {0}")]
    LawViolation(String),

    #[error("not a subgroup model: {0}")]
    NotASubgroup(String),

    #[error("model is not thin: {0}")]
    NotThin(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("io error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;
