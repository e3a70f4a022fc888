use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("edge {index}: endpoint {node} out of range 1..={n}")]
    EndpointOutOfRange { index: usize, node: usize, n: usize },

    #[error("edge {index} ({src} -> {dst}): weight must be positive and finite, got {weight}")]
    InvalidWeight {
        index: usize,
        src: usize,
        dst: usize,
        weight: f64,
    },

    #[error("node {node} out of range 1..={n}")]
    NodeOutOfRange { node: usize, n: usize },

    #[error("vector length {got} does not match node count {expected}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("negative score {0} passed to f_measure")]
    NegativeScore(f64),

    #[error("ranking key {key} is not available for {algorithm} scores")]
    KeyMismatch {
        key: &'static str,
        algorithm: &'static str,
    },

    #[error("rankings cover different node sets (sizes {left} and {right})")]
    NodeSetMismatch { left: usize, right: usize },

    #[error("top-k size {k} out of range 1..={n}")]
    KOutOfRange { k: usize, n: usize },

    #[error("ranking is not a permutation: {0}")]
    NotAPermutation(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("{0}")]
    Data(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }
}
