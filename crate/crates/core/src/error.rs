use thiserror::Error;

/// Errors raised by the library. Non-membership results (a class outside the
/// effective cone, a degree below alpha) are values, never errors.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("multiplicity lists have incompatible lengths ({left} vs {right})")]
    LengthMismatch { left: usize, right: usize },

    #[error("multiplicity at position {index} is negative ({value})")]
    NegativeMultiplicity { index: usize, value: i64 },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("{0} is not an exceptional class")]
    NotExceptional(String),

    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn precondition<S: Into<String>>(ok: bool, what: S) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::Precondition(what.into()))
    }
}
