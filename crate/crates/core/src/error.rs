use std::time::Duration;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("ring mismatch: {0} vs {1}")]
    RingMismatch(String, String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("series truncation too small: need order {needed}, have {available}")]
    Truncation { needed: usize, available: usize },

    #[error("mixed quadratic radicals sqrt({0}) and sqrt({1})")]
    MixedRadicals(u64, u64),

    #[error("budget of {budget:?} exceeded during {what} after {elapsed:?}: {progress}")]
    BudgetExceeded {
        what: String,
        budget: Duration,
        elapsed: Duration,
        progress: String,
    },

    #[error("normal form requested outside the truncated basis range: {0}")]
    TruncatedBasis(String),

    #[error("inconclusive: {0}")]
    Inconclusive(String),

    #[error("numerical failure: {0}")]
    Numerical(String),

    #[error("invariant violated: {0}")]
    Invariant(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Budget exhaustion and inconclusive searches are not wrong answers; callers
    /// report them separately from hard failures.
    pub fn is_inconclusive(&self) -> bool {
        matches!(self, Error::BudgetExceeded { .. } | Error::Inconclusive(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
