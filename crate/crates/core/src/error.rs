use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An argument lies outside the operation's mathematical domain.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// The input is valid but larger than the supported evaluation bound.
    #[error("{what}: {value} exceeds the supported bound {bound}")]
    BoundExceeded {
        what: &'static str,
        value: u64,
        bound: u64,
    },

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("table for `{name}` has no entry at {p}^{alpha}")]
    MissingTableEntry { name: String, p: u64, alpha: u32 },

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    /// Both candidate sums vanish when converting h1 parameters to h2.
    #[error("h1 -> h2 conversion impossible at alpha = {alpha}: both candidate sums vanish")]
    Unconvertible { alpha: u32 },

    #[error("division by zero")]
    DivisionByZero,

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }

    pub(crate) fn bound(what: &'static str, value: u64, bound: u64) -> Self {
        Error::BoundExceeded { what, value, bound }
    }

    pub fn is_bound_exceeded(&self) -> bool {
        matches!(self, Error::BoundExceeded { .. })
    }
}
