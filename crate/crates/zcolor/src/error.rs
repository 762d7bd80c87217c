use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("integer overflow in {0}")]
    Overflow(&'static str),
    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },
    #[error("vector length {0} is below the minimum of 2")]
    TooShort(usize),
    #[error("move index {index} out of range for m = {m}")]
    InvalidIndex { index: usize, m: usize },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("resource limit: {0}")]
    Resource(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn ck(v: Option<i64>, ctx: &'static str) -> Result<i64> {
    v.ok_or(Error::Overflow(ctx))
}
