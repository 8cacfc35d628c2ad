use thiserror::Error;

#[derive(Debug, Error)]
pub enum VerifyError {
    #[error("unknown check {0:?}")]
    UnknownCheck(String),
    #[error("invalid configuration: {0}")]
    ConfigInvalid(String),
    #[error("{check}: {source}")]
    Core {
        check: String,
        #[source]
        source: carlitz::Error,
    },
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

pub type VerifyResult<T> = std::result::Result<T, VerifyError>;
