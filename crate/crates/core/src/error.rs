use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// Malformed or out-of-range input.
    #[error("input error: {0}")]
    Input(String),

    /// A requested structure is too large (or too small) to build.
    #[error("size error: {0}")]
    Size(String),

    /// A documented precondition of an operation does not hold.
    #[error("precondition violated: {0}")]
    Precondition(String),

    /// A postcondition failed although preconditions held; indicates a bug.
    #[error("internal error: {0}")]
    Internal(String),

    #[error("json error at {location}: {message}")]
    Json { location: String, message: String },
}

impl Error {
    pub(crate) fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }
}
