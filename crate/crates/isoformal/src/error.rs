use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at byte {offset}: {message}")]
    Parse { offset: usize, message: String },
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("group too large: enumeration exceeded the cap of {cap} elements")]
    GroupTooLarge { cap: usize },
    #[error("degree cap reached at polynomial degree {degree}")]
    DegreeCap { degree: usize },
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

impl Error {
    pub fn parse(offset: usize, message: impl Into<String>) -> Self {
        Error::Parse { offset, message: message.into() }
    }

    pub fn invalid(message: impl Into<String>) -> Self {
        Error::Invalid(message.into())
    }

    /// CLI exit code: 2 for bad input, 3 for caps and unsupported inputs, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse { .. } | Error::Invalid(_) => 2,
            Error::GroupTooLarge { .. } | Error::DegreeCap { .. } | Error::Unsupported(_) => 3,
            Error::Internal(_) => 1,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
