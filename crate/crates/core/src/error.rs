use thiserror::Error;

/// Errors raised by the library. Every variant is a domain error; usage errors
/// are handled by the command-line layer.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("gcd(0, 0) is undefined")]
    ZeroGcd,

    #[error("parse error at byte {offset}: {message}")]
    Parse { offset: usize, message: String },

    #[error("subtorus pair must not be (0, 0)")]
    ZeroPair,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("prime {0} divides a denominator of the input")]
    BadPrime(u64),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn parse(offset: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            offset,
            message: message.into(),
        }
    }

    pub(crate) fn invalid(message: impl Into<String>) -> Self {
        Error::InvalidArgument(message.into())
    }
}
