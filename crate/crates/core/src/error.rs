use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid rational literal `{0}`")]
    BadRational(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("state is not homogeneous: {0}")]
    NotHomogeneous(String),
    #[error("element is not in the expected span: {0}")]
    NotInSpan(String),
    #[error("construction did not converge: {0}")]
    NoConvergence(String),
    #[error("system mismatch: {0}")]
    SystemMismatch(String),
}

pub type Result<T> = std::result::Result<T, Error>;
