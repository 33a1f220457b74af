use thiserror::Error;

/// Errors reported by the library.
///
/// `Domain` marks a violated precondition on otherwise well-formed input
/// (out-of-range ground set, mismatched alphabet or truncation degree,
/// a distribution outside the normalized group, ...). `Invariant` marks a
/// broken internal invariant; it cannot occur for inputs that satisfy the
/// documented preconditions.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("invariant violation: {0}")]
    Invariant(String),
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub fn invariant(msg: impl Into<String>) -> Self {
        Error::Invariant(msg.into())
    }

    pub fn parse(msg: impl Into<String>) -> Self {
        Error::Parse(msg.into())
    }
}
