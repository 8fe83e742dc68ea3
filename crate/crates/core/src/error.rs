use thiserror::Error;

/// Errors surfaced by the library.
///
/// `Domain` marks a violated mathematical precondition (order of a residue
/// that shares a factor with the modulus, a bisection bracket without a sign
/// change, ...). `Capacity` marks a request that exceeds a configured size
/// guard before any work is done.
#[derive(Debug, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("capacity error: {0}")]
    Capacity(String),
}

impl Error {
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub fn capacity(msg: impl Into<String>) -> Self {
        Error::Capacity(msg.into())
    }

    pub fn is_capacity(&self) -> bool {
        matches!(self, Error::Capacity(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
