use std::time::Duration;

use super::observer::Event;
use super::solution::FloatSolution;
use crate::error::Result;

/// Decides from the latest progress event whether a run should stop.
pub trait TerminationCriterion: Send {
    fn is_met(&self, event: &Event<'_>) -> Result<bool>;
}

/// Stops once `EVALUATIONS >= max`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StoppingByEvaluations {
    pub max: u64,
}

impl StoppingByEvaluations {
    pub fn new(max: u64) -> Self {
        StoppingByEvaluations { max }
    }
}

impl TerminationCriterion for StoppingByEvaluations {
    fn is_met(&self, event: &Event<'_>) -> Result<bool> {
        Ok(event.require_evaluations()? >= self.max)
    }
}

/// Stops once the reported `COMPUTING_TIME` reaches the budget.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StoppingByTime {
    pub budget: Duration,
}

impl StoppingByTime {
    pub fn new(budget: Duration) -> Self {
        StoppingByTime { budget }
    }
}

impl TerminationCriterion for StoppingByTime {
    fn is_met(&self, event: &Event<'_>) -> Result<bool> {
        Ok(event.require_computing_time()? >= self.budget)
    }
}

/// Stops once a quality indicator computed on `SOLUTIONS` reaches a threshold.
pub struct StoppingByQuality {
    indicator: Box<dyn Fn(&[FloatSolution]) -> Result<f64> + Send>,
    threshold: f64,
    larger_is_better: bool,
}

impl StoppingByQuality {
    pub fn new<F>(indicator: F, threshold: f64, larger_is_better: bool) -> Self
    where
        F: Fn(&[FloatSolution]) -> Result<f64> + Send + 'static,
    {
        StoppingByQuality {
            indicator: Box::new(indicator),
            threshold,
            larger_is_better,
        }
    }
}

impl TerminationCriterion for StoppingByQuality {
    fn is_met(&self, event: &Event<'_>) -> Result<bool> {
        let value = (self.indicator)(event.require_solutions()?)?;
        Ok(if self.larger_is_better {
            value >= self.threshold
        } else {
            value <= self.threshold
        })
    }
}

/// Stops when any of the wrapped criteria is met.
pub struct AnyOf(pub Vec<Box<dyn TerminationCriterion>>);

impl TerminationCriterion for AnyOf {
    fn is_met(&self, event: &Event<'_>) -> Result<bool> {
        for c in &self.0 {
            if c.is_met(event)? {
                return Ok(true);
            }
        }
        Ok(false)
    }
}
