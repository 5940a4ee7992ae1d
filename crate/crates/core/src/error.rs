use thiserror::Error;

/// Errors raised by the library.
///
/// Parse errors come from malformed user input; everything else is a domain
/// error (a well-formed value outside the operation's range).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("instance too large: n = {n} exceeds the limit of {limit}")]
    TooLarge { n: usize, limit: usize },
    #[error("{0} is not an atom of the distribution")]
    NotAnAtom(String),
    #[error("quantile not attained: {0}")]
    NotAttained(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn parse(msg: impl Into<String>) -> Self {
        Error::Parse(msg.into())
    }

    /// True for malformed-input errors, false for domain errors.
    pub fn is_parse(&self) -> bool {
        matches!(self, Error::Parse(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
