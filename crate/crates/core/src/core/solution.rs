use std::collections::BTreeMap;

use crate::error::{Error, Result};

/// Attribute key written by non-dominated sorting.
pub const RANK: &str = "rank";
/// Attribute key written by the crowding distance estimator.
pub const CROWDING_DISTANCE: &str = "crowding_distance";
/// Attribute key holding the overall constraint violation.
pub const CONSTRAINT_VIOLATION: &str = "constraint_violation";

/// A candidate solution: decision variables, objective values, constraint values and
/// a string-keyed attribute map.
///
/// The objective vector is empty until the solution has been evaluated. Constraint values
/// follow the usual convention: a negative value is the magnitude of a violation.
#[derive(Debug, Clone, PartialEq)]
pub struct Solution<V = f64> {
    pub variables: Vec<V>,
    pub objectives: Vec<f64>,
    pub constraints: Vec<f64>,
    pub attributes: BTreeMap<String, f64>,
}

pub type FloatSolution = Solution<f64>;
pub type IntegerSolution = Solution<i64>;
pub type BinarySolution = Solution<bool>;
pub type PermutationSolution = Solution<usize>;

impl<V> Solution<V> {
    pub fn new(variables: Vec<V>) -> Self {
        Solution {
            variables,
            objectives: Vec::new(),
            constraints: Vec::new(),
            attributes: BTreeMap::new(),
        }
    }

    /// Builds an already evaluated solution, mostly useful for tests and file readers.
    pub fn with_objectives(variables: Vec<V>, objectives: Vec<f64>) -> Self {
        Solution {
            objectives,
            ..Solution::new(variables)
        }
    }

    pub fn is_evaluated(&self) -> bool {
        !self.objectives.is_empty()
    }

    pub(crate) fn ensure_evaluated(&self) -> Result<()> {
        if self.is_evaluated() {
            Ok(())
        } else {
            Err(Error::State("solution has not been evaluated".into()))
        }
    }

    /// Sum of the negative constraint values (0 for feasible solutions).
    pub fn overall_constraint_violation(&self) -> f64 {
        self.constraints.iter().filter(|&&c| c < 0.0).sum()
    }

    pub fn is_feasible(&self) -> bool {
        self.overall_constraint_violation() == 0.0
    }

    pub fn attribute(&self, key: &str) -> Option<f64> {
        self.attributes.get(key).copied()
    }

    pub fn set_attribute(&mut self, key: &str, value: f64) {
        self.attributes.insert(key.to_string(), value);
    }

    pub fn rank(&self) -> Option<usize> {
        self.attribute(RANK).map(|r| r as usize)
    }

    pub fn crowding_distance(&self) -> Option<f64> {
        self.attribute(CROWDING_DISTANCE)
    }

    /// Drops everything derived from a previous evaluation.
    pub fn reset_evaluation(&mut self) {
        self.objectives.clear();
        self.constraints.clear();
        self.attributes.clear();
    }
}

/// Per-variable box constraints of a continuous problem.
#[derive(Debug, Clone, PartialEq)]
pub struct Bounds {
    lower: Vec<f64>,
    upper: Vec<f64>,
}

impl Bounds {
    pub fn new(lower: Vec<f64>, upper: Vec<f64>) -> Result<Self> {
        if lower.len() != upper.len() {
            return Err(Error::dimension(lower.len(), upper.len()));
        }
        if lower.is_empty() {
            return Err(Error::Config("bounds need at least one variable".into()));
        }
        if let Some(i) = (0..lower.len()).find(|&i| !(lower[i] < upper[i])) {
            return Err(Error::Config(format!(
                "lower bound {} is not below upper bound {} for variable {i}",
                lower[i], upper[i]
            )));
        }
        Ok(Bounds { lower, upper })
    }

    pub fn uniform(n: usize, lower: f64, upper: f64) -> Result<Self> {
        Bounds::new(vec![lower; n], vec![upper; n])
    }

    pub fn len(&self) -> usize {
        self.lower.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lower.is_empty()
    }

    pub fn lower(&self) -> &[f64] {
        &self.lower
    }

    pub fn upper(&self) -> &[f64] {
        &self.upper
    }

    pub fn clamp(&self, index: usize, value: f64) -> f64 {
        value.clamp(self.lower[index], self.upper[index])
    }

    pub fn contains(&self, variables: &[f64]) -> bool {
        variables.len() == self.len()
            && variables
                .iter()
                .enumerate()
                .all(|(i, &x)| x >= self.lower[i] && x <= self.upper[i])
    }

    pub(crate) fn check(&self, variables: &[f64]) -> Result<()> {
        if variables.len() != self.len() {
            return Err(Error::Config(format!(
                "solution has {} variables but the bounds describe {}",
                variables.len(),
                self.len()
            )));
        }
        Ok(())
    }
}

/// Objective vectors of a solution list, borrowed.
pub fn objectives_of<V>(solutions: &[Solution<V>]) -> Vec<Vec<f64>> {
    solutions.iter().map(|s| s.objectives.clone()).collect()
}
