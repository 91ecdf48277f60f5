use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum IrdError {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),
    #[error("numerical failure: {0}")]
    Numerical(String),
    #[error("metric undefined: {0}")]
    UndefinedMetric(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for IrdError {
    fn from(e: std::io::Error) -> Self {
        IrdError::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, IrdError>;

pub(crate) fn invalid(msg: impl Into<String>) -> IrdError {
    IrdError::InvalidParameter(msg.into())
}
