use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An argument is outside the range an operation accepts.
    #[error("invalid parameter: {0}")]
    Parameter(String),

    /// The input does not satisfy an operation's precondition.
    #[error("domain error: {0}")]
    Domain(String),

    /// An exact integer computation left the 64-bit range.
    #[error("arithmetic overflow in {0}")]
    Overflow(&'static str),

    /// A coefficient was requested above the truncation order, where it is unknown.
    #[error("q^{requested} lies beyond the truncation order q^{trunc}")]
    OutOfTruncation { requested: u32, trunc: u32 },

    /// Two series with a different number of z variables were combined.
    #[error("variable count mismatch: {left} vs {right}")]
    VariableMismatch { left: usize, right: usize },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn checked_add(a: u64, b: u64, what: &'static str) -> Result<u64> {
    a.checked_add(b).ok_or(Error::Overflow(what))
}
