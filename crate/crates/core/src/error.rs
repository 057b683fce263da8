use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("parse error at offset {position}: {message}")]
    Parse { position: usize, message: String },
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("invalid descriptor: {0}")]
    InvalidDescriptor(String),
    #[error("precision exhausted at {bits} bits: {reason}")]
    PrecisionExhausted { bits: u32, reason: String },
    #[error("insufficient truncation: {0}")]
    InsufficientTruncation(String),
    #[error("infinite intersection: {0}")]
    InfiniteIntersection(String),
    #[error("incomplete semigroup: {0}")]
    IncompleteSemigroup(String),
    #[error("internal error: {0}")]
    Internal(String),
}

impl Error {
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Parse { .. } => "parse-error",
            Error::InvalidInput(_) => "invalid-input",
            Error::InvalidDescriptor(_) => "invalid-descriptor",
            Error::PrecisionExhausted { .. } => "precision-exhausted",
            Error::InsufficientTruncation(_) => "insufficient-truncation",
            Error::InfiniteIntersection(_) => "infinite-intersection",
            Error::IncompleteSemigroup(_) => "incomplete-semigroup",
            Error::Internal(_) => "internal-error",
        }
    }

    pub(crate) fn precision(bits: u32, reason: impl Into<String>) -> Self {
        Error::PrecisionExhausted { bits, reason: reason.into() }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

/// Largest working precision reached by automatic escalation.
pub const MAX_PRECISION: u32 = 8192;

/// Runs `f` at `start` bits, doubling the precision whenever a numeric
/// decision was too close to call.
pub fn escalate<T>(start: u32, mut f: impl FnMut(u32) -> Result<T>) -> Result<T> {
    let mut prec = start.max(64);
    loop {
        match f(prec) {
            Err(Error::PrecisionExhausted { .. }) if prec < MAX_PRECISION => prec *= 2,
            r => return r,
        }
    }
}
