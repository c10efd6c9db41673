//! Resource caps for enumerations over implicitly defined infinite graphs.

use std::time::{Duration, Instant};
use thiserror::Error;

/// Default cap on the number of vertices an enumeration may create.
pub const DEFAULT_MAX_VERTICES: usize = 1_000_000;

/// Environment variable overriding [`DEFAULT_MAX_VERTICES`].
pub const BUDGET_ENV: &str = "COXSPINE_BUDGET";

/// A cap was reached before the enumeration finished.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BudgetError {
    /// Too many vertices were generated.
    #[error("vertex budget of {limit} exceeded after reaching {reached} vertices")]
    Vertices { limit: usize, reached: usize },
    /// The wall-clock budget ran out.
    #[error("time budget of {limit_ms} ms exceeded")]
    Time { limit_ms: u128 },
}

/// Vertex and wall-clock caps. The clock starts when the budget is created.
#[derive(Debug, Clone)]
pub struct Budget {
    pub max_vertices: usize,
    pub max_time: Option<Duration>,
    started: Instant,
}

impl Default for Budget {
    fn default() -> Self {
        Budget::new(DEFAULT_MAX_VERTICES, None)
    }
}

impl Budget {
    pub fn new(max_vertices: usize, max_time: Option<Duration>) -> Self {
        Budget { max_vertices, max_time, started: Instant::now() }
    }

    /// Default caps, with the vertex cap read from `COXSPINE_BUDGET` when set.
    pub fn from_env() -> Self {
        let max_vertices = std::env::var(BUDGET_ENV)
            .ok()
            .and_then(|s| s.trim().parse::<usize>().ok())
            .unwrap_or(DEFAULT_MAX_VERTICES);
        Budget::new(max_vertices, None)
    }

    pub fn unlimited() -> Self {
        Budget::new(usize::MAX, None)
    }

    pub fn with_time(mut self, limit: Duration) -> Self {
        self.max_time = Some(limit);
        self
    }

    pub fn check_vertices(&self, count: usize) -> Result<(), BudgetError> {
        if count > self.max_vertices {
            Err(BudgetError::Vertices { limit: self.max_vertices, reached: count })
        } else {
            Ok(())
        }
    }

    pub fn check_time(&self) -> Result<(), BudgetError> {
        match self.max_time {
            Some(limit) if self.started.elapsed() > limit => Err(BudgetError::Time { limit_ms: limit.as_millis() }),
            _ => Ok(()),
        }
    }

    pub fn check(&self, count: usize) -> Result<(), BudgetError> {
        self.check_vertices(count)?;
        self.check_time()
    }
}
