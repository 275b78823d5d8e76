use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("degenerate state: {0}")]
    DegenerateState(String),

    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),

    #[error("numerical failure: {0}")]
    NumericalFailure(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidArgument(msg.into())
}
