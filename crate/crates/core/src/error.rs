use thiserror::Error;

/// Errors raised across the crate.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid size: {0}")]
    InvalidSize(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("embedding error: {0}")]
    Embedding(String),
    #[error("geometry error: {0}")]
    Geometry(String),
    #[error("graph is disconnected; split it into components first")]
    Disconnected,
    #[error("size cap exceeded: {what} is {actual}, limit is {limit}; {hint}")]
    SizeCap {
        what: &'static str,
        actual: usize,
        limit: usize,
        hint: &'static str,
    },
    #[error("factor index {index} out of range (product has {k} factors)")]
    FactorIndex { index: usize, k: usize },
    #[error("missing weight for {0}")]
    MissingWeight(String),
    #[error("odd loop of length {0}")]
    OddLoop(usize),
    #[error("trail is not closed")]
    NotClosed,
    #[error("multigraph is not even: vertex {0} has odd degree")]
    NotEven(usize),
    #[error("exponent overflow")]
    ExponentOverflow,
    #[error("polynomial division is not exact")]
    InexactDivision,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("unsupported parity: {0}")]
    UnsupportedParity(String),
}

pub type Result<T> = std::result::Result<T, Error>;
