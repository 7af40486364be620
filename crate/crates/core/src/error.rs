use crate::exact::ExactError;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("cap exceeded: {0}")]
    CapExceeded(String),
    #[error("non-generic weight: {0}")]
    NonGeneric(String),
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error(transparent)]
    Exact(#[from] ExactError),
}

pub type Result<T> = std::result::Result<T, Error>;
