use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("{value} is outside the table (bound {bound})")]
    OutOfTable { value: u64, bound: u64 },

    #[error("function is not invertible: f(1) = 0")]
    NotInvertible,

    #[error("precondition violated at n = {witness}: {reason}")]
    Precondition { witness: u64, reason: String },

    #[error("no nonzero value found in 1..={bound}")]
    IdenticallyZero { bound: u64 },

    #[error("argument {value} outside the domain of convergence: {reason}")]
    Domain { value: String, reason: String },

    #[error("convergence certificate violated: {0}")]
    Certificate(String),

    #[error("internal inconsistency: {0}")]
    Inconsistency(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidArgument(msg.into())
}
