use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("invalid contraction: {0}")]
    InvalidContraction(String),
    #[error("invalid sequence: {0}")]
    InvalidSequence(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("graph is not regular: {0}")]
    NotRegular(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("vertex correspondence is not an isomorphism: {0}")]
    BadCorrespondence(String),
    #[error("generation retries exhausted: {0}")]
    RetryExhausted(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
