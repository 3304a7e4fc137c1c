//! Error types shared across the crate.

/// Errors raised during validation, construction, scoring, and ingestion.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// Observation and forecast dimensions disagree.
    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    /// An input value was NaN or infinite.
    #[error("non-finite input in {0}")]
    NonFiniteInput(&'static str),

    #[error("ensemble must contain at least one member")]
    EmptyEnsemble,

    #[error("bad member weights: {0}")]
    BadMemberWeights(&'static str),

    /// Interval bounds must satisfy a < b strictly in every dimension.
    #[error(
        "invalid bounds: lower bound a must be strictly less than upper bound b (a={lower}, b={upper})"
    )]
    InvalidBounds { lower: f64, upper: f64 },

    #[error("scale parameter sigma must be positive and finite, got {0}")]
    NonPositiveScale(f64),

    #[error("weight function returned a negative value {value} at input {input:?}")]
    NegativeWeight { input: Vec<f64>, value: f64 },

    #[error("weight or chaining function returned a non-finite value at input {input:?}")]
    NonFiniteFunctionOutput { input: Vec<f64> },

    /// A chaining function changed the dimension of its input.
    #[error("chaining function output has length {actual}, expected {expected}")]
    BadOutputShape { expected: usize, actual: usize },

    #[error("degenerate sample: all ensemble members are identical")]
    DegenerateSample,

    #[error("bandwidth selection needs at least 2 members, got {0}")]
    TooFewMembers(usize),

    #[error("bad variogram scaling weights: {0}")]
    BadVsWeights(String),

    #[error("variogram order p must be positive and finite, got {0}")]
    BadOrder(f64),

    #[error("no defined scores to summarize")]
    AllUndefined,

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("empty archive: no forecast cases found")]
    EmptyArchive,

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
