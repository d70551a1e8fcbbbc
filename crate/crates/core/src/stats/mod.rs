//! Non-parametric and Bayesian comparison of algorithms.
//!
//! The pairwise Wilcoxon test used throughout is the rank-sum test on two independent
//! samples of per-run indicator values, not the paired signed-rank test.

mod bayesian;
mod nonparametric;
mod posthoc;
mod ranks;
pub mod special;

pub use bayesian::{
    bayesian_sign_test, bayesian_signed_rank_test, posterior_barycentric_points, BayesianConfig,
    BayesianOutcome, PosteriorTriple, PriorLocation, DEFAULT_ROPE, DEFAULT_SAMPLES, MIN_SAMPLES,
};
pub use nonparametric::{
    aligned_ranks, friedman, friedman_aligned, quade, sign_test, wilcoxon_rank_sum,
    wilcoxon_rank_sum_with, Alternative, EXACT_RANK_SUM_LIMIT,
};
pub use posthoc::{
    adjust_pvalues, critical_distance, friedman_posthoc, nemenyi_q, running_max,
    running_min_from_right, shaffer_true_counts, Adjustment, PairComparison,
};
pub use ranks::{average_ranks, iqr, median, quantile, tie_groups};

use crate::error::{Error, Result};

/// Problems (rows) by algorithms (columns).
#[derive(Debug, Clone, PartialEq)]
pub struct ScoreMatrix {
    values: Vec<Vec<f64>>,
    larger_is_better: bool,
}

impl ScoreMatrix {
    pub fn new(values: Vec<Vec<f64>>, larger_is_better: bool) -> Result<Self> {
        let k = values.first().map_or(0, Vec::len);
        if values.is_empty() || k < 2 {
            return Err(Error::Argument(format!(
                "score matrix needs at least 1 problem and 2 algorithms, got {}x{k}",
                values.len()
            )));
        }
        if let Some((i, row)) = values.iter().enumerate().find(|(_, r)| r.len() != k) {
            return Err(Error::Argument(format!(
                "row {i} has {} cells, expected {k}",
                row.len()
            )));
        }
        if values.iter().flatten().any(|v| !v.is_finite()) {
            return Err(Error::Argument("score matrix contains non-finite values".into()));
        }
        Ok(ScoreMatrix {
            values,
            larger_is_better,
        })
    }

    pub fn values(&self) -> &[Vec<f64>] {
        &self.values
    }

    pub fn larger_is_better(&self) -> bool {
        self.larger_is_better
    }

    pub fn n_problems(&self) -> usize {
        self.values.len()
    }

    pub fn n_algorithms(&self) -> usize {
        self.values[0].len()
    }

    /// Rows flipped so that lower is always better.
    pub(crate) fn oriented_rows(&self) -> impl Iterator<Item = Vec<f64>> + '_ {
        let sign = if self.larger_is_better { -1.0 } else { 1.0 };
        self.values
            .iter()
            .map(move |r| r.iter().map(|v| sign * v).collect())
    }

    /// Per-problem ranks, 1 = best, ties averaged.
    pub fn row_ranks(&self) -> Vec<Vec<f64>> {
        self.oriented_rows().map(|r| average_ranks(&r)).collect()
    }

    /// Average rank of each algorithm over the problems.
    pub fn average_ranks(&self) -> Vec<f64> {
        let ranks = self.row_ranks();
        let n = ranks.len() as f64;
        (0..self.n_algorithms())
            .map(|j| ranks.iter().map(|r| r[j]).sum::<f64>() / n)
            .collect()
    }

    pub(crate) fn require_rows(&self, min: usize) -> Result<()> {
        if self.n_problems() < min {
            return Err(Error::Argument(format!(
                "test needs at least {min} problems, got {}",
                self.n_problems()
            )));
        }
        Ok(())
    }
}

/// Outcome of a null-hypothesis test.
#[derive(Debug, Clone, PartialEq)]
pub struct TestReport {
    pub test: String,
    pub statistic: f64,
    pub p_value: f64,
    /// Per-algorithm average ranks for the multi-sample tests, empty otherwise.
    pub average_ranks: Vec<f64>,
}

impl TestReport {
    pub(crate) fn new(test: &str, statistic: f64, p_value: f64) -> Self {
        TestReport {
            test: test.to_string(),
            statistic,
            p_value,
            average_ranks: Vec::new(),
        }
    }

    pub(crate) fn with_ranks(mut self, ranks: Vec<f64>) -> Self {
        self.average_ranks = ranks;
        self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matrix_validation() {
        assert!(ScoreMatrix::new(vec![], true).is_err());
        assert!(ScoreMatrix::new(vec![vec![1.0]], true).is_err());
        assert!(ScoreMatrix::new(vec![vec![1.0, 2.0], vec![1.0]], true).is_err());
        assert!(ScoreMatrix::new(vec![vec![1.0, f64::NAN]], true).is_err());
    }

    #[test]
    fn ranks_follow_orientation() {
        let m = ScoreMatrix::new(vec![vec![0.6, 0.5, 0.6]], true).unwrap();
        assert_eq!(m.row_ranks(), vec![vec![1.5, 3.0, 1.5]]);
        let m = ScoreMatrix::new(vec![vec![0.6, 0.5, 0.6]], false).unwrap();
        assert_eq!(m.row_ranks(), vec![vec![2.5, 1.0, 2.5]]);
    }
}
