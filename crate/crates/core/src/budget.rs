use std::time::{Duration, Instant};

use crate::error::{Error, Result};

/// Environment variable overriding the default wall-clock budget (seconds).
pub const BUDGET_ENV: &str = "CYCLICITY_BUDGET_SECS";

pub const DEFAULT_BUDGET: Duration = Duration::from_secs(600);

/// Wall-clock budget for long computations.
#[derive(Clone, Debug)]
pub struct Budget {
    limit: Option<Duration>,
    start: Instant,
}

impl Budget {
    pub fn new(limit: Duration) -> Self {
        Budget { limit: Some(limit), start: Instant::now() }
    }

    pub fn unlimited() -> Self {
        Budget { limit: None, start: Instant::now() }
    }

    /// Budget from `CYCLICITY_BUDGET_SECS`, falling back to ten minutes.
    pub fn from_env() -> Self {
        let secs = std::env::var(BUDGET_ENV).ok().and_then(|s| s.trim().parse::<f64>().ok());
        match secs {
            Some(s) if s > 0.0 => Self::new(Duration::from_secs_f64(s)),
            _ => Self::new(DEFAULT_BUDGET),
        }
    }

    pub fn limit(&self) -> Option<Duration> {
        self.limit
    }

    pub fn elapsed(&self) -> Duration {
        self.start.elapsed()
    }

    pub fn exceeded(&self) -> bool {
        self.limit.is_some_and(|l| self.start.elapsed() > l)
    }

    pub fn check(&self, what: &str, progress: impl FnOnce() -> String) -> Result<()> {
        match self.limit {
            Some(limit) if self.start.elapsed() > limit => Err(Error::BudgetExceeded {
                what: what.to_string(),
                budget: limit,
                elapsed: self.start.elapsed(),
                progress: progress(),
            }),
            _ => Ok(()),
        }
    }
}

impl Default for Budget {
    fn default() -> Self {
        Self::new(DEFAULT_BUDGET)
    }
}
