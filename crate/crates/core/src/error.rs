use thiserror::Error;

use crate::cuspdata::Violation;

/// Errors raised by the engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid field: {0}")]
    Field(String),
    #[error("inverse of zero requested in F_{0}")]
    ZeroInverse(u32),
    #[error("invalid polynomial: {0}")]
    Poly(String),
    #[error("invalid group: {0}")]
    Group(String),
    #[error("invalid datum: {0}")]
    Datum(String),
    #[error("support rejected: {}", join(.0))]
    Support(Vec<Violation>),
    #[error("outside the domain: {0}")]
    Domain(String),
    #[error("malformed input: {0}")]
    Json(String),
}

impl Error {
    /// True when the input could not be read at all, as opposed to being read and rejected.
    pub fn is_malformed(&self) -> bool {
        matches!(self, Error::Json(_))
    }
}

fn join(v: &[Violation]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join("; ")
}

pub type Result<T> = std::result::Result<T, Error>;
