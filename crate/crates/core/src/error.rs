//! Error type shared by every module.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid gene spec at position {index}: {reason}")]
    InvalidSpec { index: usize, reason: String },
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("gene {index} value {value} is not valid for a {kind} gene")]
    InvalidGeneValue { index: usize, value: f64, kind: &'static str },
    #[error("unknown problem `{0}`")]
    UnknownProblem(String),
    #[error("invalid problem parameter: {0}")]
    InvalidProblemParameter(String),
    #[error("operator {operator} needs {needed} parents, got {got}")]
    InsufficientParents { operator: &'static str, needed: usize, got: usize },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("empty population")]
    EmptyPopulation,
    #[error("etv error: {0}")]
    Etv(String),
    #[error("oracle size limit exceeded: {0}")]
    OracleLimit(String),
    #[error("topology error: {0}")]
    Topology(String),
    #[error("graph is disconnected")]
    Disconnected,
    #[error("insufficient data: {0}")]
    InsufficientData(String),
    #[error("degenerate data: {0}")]
    Degenerate(String),
    #[error("config error: {0}")]
    Config(String),
    #[error("run aborted: {0}")]
    Aborted(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
}

impl Error {
    pub(crate) fn param(msg: impl Into<String>) -> Self {
        Error::InvalidParameter(msg.into())
    }
}
