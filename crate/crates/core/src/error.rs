use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("invalid complex: {0}")]
    InvalidComplex(String),
    #[error("invalid cubical group: {0}")]
    InvalidCubical(String),
    #[error("not a chain map: {0}")]
    NotChainMap(String),
    #[error("cannot restrict a non-unit: {0}")]
    NonUnit(String),
    #[error("parse error at {field}: {message}")]
    Parse { field: String, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
