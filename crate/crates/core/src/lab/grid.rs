use std::collections::HashMap;

use super::summary::SummaryRecord;
use crate::error::{Error, Result};
use crate::indicators;
use crate::stats::{median, ScoreMatrix};

/// Samples of one indicator arranged by algorithm and problem, in order of first appearance.
#[derive(Debug, Clone)]
pub struct IndicatorGrid {
    pub indicator: String,
    pub algorithms: Vec<String>,
    pub problems: Vec<String>,
    pub larger_is_better: bool,
    cells: HashMap<(usize, usize), Vec<(u64, f64)>>,
}

impl IndicatorGrid {
    pub fn from_records(records: &[SummaryRecord], indicator: &str) -> Result<Self> {
        let mut algorithms: Vec<String> = Vec::new();
        let mut problems: Vec<String> = Vec::new();
        let mut cells: HashMap<(usize, usize), Vec<(u64, f64)>> = HashMap::new();
        for r in records.iter().filter(|r| r.indicator == indicator) {
            let a = position_or_push(&mut algorithms, &r.algorithm);
            let p = position_or_push(&mut problems, &r.problem);
            cells.entry((a, p)).or_default().push((r.execution_id, r.value));
        }
        if cells.is_empty() {
            return Err(Error::Data(format!("indicator '{indicator}' not present in the summary")));
        }
        for v in cells.values_mut() {
            v.sort_by_key(|(id, _)| *id);
        }
        Ok(IndicatorGrid {
            indicator: indicator.to_string(),
            algorithms,
            problems,
            larger_is_better: indicators::larger_is_better(indicator),
            cells,
        })
    }

    /// Values of one cell ordered by execution id.
    pub fn sample(&self, algorithm: usize, problem: usize) -> Result<Vec<f64>> {
        self.cells
            .get(&(algorithm, problem))
            .map(|v| v.iter().map(|(_, x)| *x).collect())
            .ok_or_else(|| {
                Error::Data(format!(
                    "no {} values for algorithm '{}' on problem '{}'",
                    self.indicator, self.algorithms[algorithm], self.problems[problem]
                ))
            })
    }

    /// `(execution_id, value)` pairs of one cell.
    pub fn runs(&self, algorithm: usize, problem: usize) -> Result<Vec<(u64, f64)>> {
        self.sample(algorithm, problem)?;
        Ok(self.cells[&(algorithm, problem)].clone())
    }

    pub fn algorithm_index(&self, name: &str) -> Result<usize> {
        self.algorithms.iter().position(|a| a == name).ok_or_else(|| Error::Lookup {
            kind: "algorithm",
            name: name.to_string(),
        })
    }

    pub fn problem_index(&self, name: &str) -> Result<usize> {
        self.problems.iter().position(|p| p == name).ok_or_else(|| Error::Lookup {
            kind: "problem",
            name: name.to_string(),
        })
    }

    /// Per-problem medians over runs (problems by algorithms).
    pub fn median_matrix(&self) -> Result<ScoreMatrix> {
        let rows = (0..self.problems.len())
            .map(|p| {
                (0..self.algorithms.len())
                    .map(|a| self.sample(a, p).map(|s| median(&s)))
                    .collect::<Result<Vec<f64>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        ScoreMatrix::new(rows, self.larger_is_better)
    }
}

fn position_or_push(list: &mut Vec<String>, name: &str) -> usize {
    match list.iter().position(|x| x == name) {
        Some(i) => i,
        None => {
            list.push(name.to_string());
            list.len() - 1
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn groups_by_first_appearance() {
        let recs = vec![
            SummaryRecord::new("B", "P1", "HV", 1, 0.4),
            SummaryRecord::new("A", "P1", "HV", 0, 0.3),
            SummaryRecord::new("B", "P1", "HV", 0, 0.2),
            SummaryRecord::new("B", "P1", "EP", 0, 9.0),
        ];
        let g = IndicatorGrid::from_records(&recs, "HV").unwrap();
        assert_eq!(g.algorithms, vec!["B", "A"]);
        assert!(g.larger_is_better);
        assert_eq!(g.sample(0, 0).unwrap(), vec![0.2, 0.4]);
        assert!(matches!(IndicatorGrid::from_records(&recs, "IGD"), Err(Error::Data(_))));
        let m = g.median_matrix().unwrap();
        assert_eq!(m.values(), &[vec![0.30000000000000004, 0.3]]);
    }
}
