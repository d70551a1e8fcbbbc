//! Algorithm x problem x run grids driven by a TOML plan.

use std::collections::HashSet;
use std::fs;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::summary::{write_summary, SummaryRecord};
use crate::algorithms::output::{write_fun, write_var};
use crate::algorithms::{execute, AlgorithmSpec, RunSettings};
use crate::error::{Error, Result};
use crate::evaluators::EngineKind;
use crate::indicators::{Front, Indicator};
use crate::problems::{default_reference_front, problem_by_name};

fn default_max_evaluations() -> u64 {
    25_000
}

fn default_workers() -> usize {
    1
}

/// Experiment plan file.
///
/// ```toml
/// output_dir = "results"
/// base_seed = 0
/// independent_runs = 25
/// max_evaluations = 25000
/// problems = ["ZDT1", "ZDT2"]
/// indicators = ["EP", "SPREAD", "HV"]
///
/// [[algorithms]]
/// kind = "NSGAII"
///
/// [[algorithms]]
/// kind = "SMPSO"
/// archive_size = 100
/// ```
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentPlan {
    pub output_dir: PathBuf,
    #[serde(default)]
    pub base_seed: u64,
    pub independent_runs: u64,
    #[serde(default = "default_max_evaluations")]
    pub max_evaluations: u64,
    pub problems: Vec<String>,
    pub indicators: Vec<String>,
    pub algorithms: Vec<AlgorithmSpec>,
    #[serde(default)]
    pub engine: EngineKind,
    #[serde(default = "default_workers")]
    pub workers: usize,
}

impl ExperimentPlan {
    pub fn from_toml(text: &str) -> Result<Self> {
        let plan: ExperimentPlan =
            toml::from_str(text).map_err(|e| Error::Config(format!("invalid plan: {e}")))?;
        plan.validate()?;
        Ok(plan)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).map_err(|e| Error::file(path, e))?;
        Self::from_toml(&text)
    }

    /// Resolves every name and parameter before anything runs.
    pub fn validate(&self) -> Result<()> {
        if self.independent_runs == 0 {
            return Err(Error::Config("independent_runs must be positive".into()));
        }
        if self.max_evaluations == 0 {
            return Err(Error::Config("max_evaluations must be positive".into()));
        }
        for (what, empty) in [
            ("algorithms", self.algorithms.is_empty()),
            ("problems", self.problems.is_empty()),
            ("indicators", self.indicators.is_empty()),
        ] {
            if empty {
                return Err(Error::Config(format!("plan lists no {what}")));
            }
        }
        for p in &self.problems {
            problem_by_name(p)?;
        }
        for i in &self.indicators {
            i.parse::<Indicator>()?;
        }
        let mut labels = HashSet::new();
        for a in &self.algorithms {
            a.validate()?;
            if !labels.insert(a.label()) {
                return Err(Error::Config(format!("duplicate algorithm name '{}'", a.label())));
            }
        }
        if self.workers == 0 {
            return Err(Error::Config("workers must be positive".into()));
        }
        Ok(())
    }

    pub fn seed(&self, run: u64) -> u64 {
        self.base_seed.wrapping_add(run)
    }

    /// `output_dir/algorithm/problem`.
    pub fn run_dir(&self, algorithm: &str, problem: &str) -> PathBuf {
        self.output_dir.join(sanitize(algorithm)).join(sanitize(problem))
    }

    pub fn expected_rows(&self) -> usize {
        self.algorithms.len() * self.problems.len() * self.indicators.len() * self.independent_runs as usize
    }
}

fn sanitize(name: &str) -> String {
    name.chars()
        .map(|c| if c.is_ascii_alphanumeric() || "-_+.".contains(c) { c } else { '_' })
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunFailure {
    pub algorithm: String,
    pub problem: String,
    pub run: u64,
    pub message: String,
}

#[derive(Debug, Clone)]
pub struct ExperimentReport {
    pub summary_path: PathBuf,
    pub records: Vec<SummaryRecord>,
    pub failures: Vec<RunFailure>,
}

#[derive(Serialize)]
struct Manifest<'a> {
    tool: &'static str,
    version: &'static str,
    base_seed: u64,
    seeds: Vec<u64>,
    plan: &'a ExperimentPlan,
    failures: Vec<String>,
}

/// Runs every cell, writes FUN/VAR files, `summary.csv` and `manifest.json`.
///
/// Failed runs are reported in the result and left out of the summary.
pub fn run_experiment(plan: &ExperimentPlan) -> Result<ExperimentReport> {
    plan.validate()?;
    let indicators: Vec<Indicator> = plan
        .indicators
        .iter()
        .map(|i| i.parse())
        .collect::<Result<_>>()?;
    let references: Vec<Front> = plan
        .problems
        .iter()
        .map(|p| default_reference_front(p))
        .collect::<Result<_>>()?;
    fs::create_dir_all(&plan.output_dir).map_err(|e| Error::file(&plan.output_dir, e))?;

    let cells: Vec<(usize, usize, u64)> = (0..plan.algorithms.len())
        .flat_map(|a| {
            (0..plan.problems.len()).flat_map(move |p| (0..plan.independent_runs).map(move |r| (a, p, r)))
        })
        .collect();
    let results: Vec<std::result::Result<Vec<f64>, RunFailure>> = cells
        .par_iter()
        .map(|&(a, p, run)| {
            run_cell(plan, a, p, run, &indicators, &references[p]).map_err(|e| RunFailure {
                algorithm: plan.algorithms[a].label().to_string(),
                problem: plan.problems[p].clone(),
                run,
                message: e.to_string(),
            })
        })
        .collect();

    let mut records = Vec::with_capacity(plan.expected_rows());
    let mut failures = Vec::new();
    let runs = plan.independent_runs as usize;
    for a in 0..plan.algorithms.len() {
        for p in 0..plan.problems.len() {
            let base = (a * plan.problems.len() + p) * runs;
            let cell = &results[base..base + runs];
            for (i, indicator) in indicators.iter().enumerate() {
                for (run, res) in cell.iter().enumerate() {
                    if let Ok(values) = res {
                        records.push(SummaryRecord::new(
                            plan.algorithms[a].label(),
                            &plan.problems[p],
                            indicator.name(),
                            run as u64,
                            values[i],
                        ));
                    }
                }
            }
            failures.extend(cell.iter().filter_map(|r| r.as_ref().err().cloned()));
        }
    }
    for f in &failures {
        log::error!("{} on {} run {} failed: {}", f.algorithm, f.problem, f.run, f.message);
    }
    let summary_path = plan.output_dir.join("summary.csv");
    write_summary(&summary_path, &records)?;
    let manifest = Manifest {
        tool: env!("CARGO_PKG_NAME"),
        version: env!("CARGO_PKG_VERSION"),
        base_seed: plan.base_seed,
        seeds: (0..plan.independent_runs).map(|r| plan.seed(r)).collect(),
        plan,
        failures: failures
            .iter()
            .map(|f| format!("{}/{}/{}: {}", f.algorithm, f.problem, f.run, f.message))
            .collect(),
    };
    let manifest_path = plan.output_dir.join("manifest.json");
    let json = serde_json::to_string_pretty(&manifest).map_err(|e| Error::Data(e.to_string()))?;
    fs::write(&manifest_path, json + "\n").map_err(|e| Error::file(&manifest_path, e))?;
    Ok(ExperimentReport {
        summary_path,
        records,
        failures,
    })
}

fn run_cell(
    plan: &ExperimentPlan,
    a: usize,
    p: usize,
    run: u64,
    indicators: &[Indicator],
    reference: &Front,
) -> Result<Vec<f64>> {
    let spec = &plan.algorithms[a];
    let problem = problem_by_name(&plan.problems[p])?;
    let settings = RunSettings {
        max_evaluations: plan.max_evaluations,
        seed: plan.seed(run),
        engine: plan.engine,
        workers: plan.workers,
    };
    let outcome = execute(spec, problem, &settings)?;
    let dir = plan.run_dir(spec.label(), &plan.problems[p]);
    fs::create_dir_all(&dir).map_err(|e| Error::file(&dir, e))?;
    write_fun(dir.join(format!("FUN.{run}")), &outcome.front)?;
    write_var(dir.join(format!("VAR.{run}")), &outcome.front)?;
    let front = Front::from_solutions(&outcome.front)?;
    indicators.iter().map(|i| i.compute(&front, reference)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn plan_text(dir: &Path, extra: &str) -> String {
        format!(
            r#"
output_dir = "{}"
base_seed = 3
independent_runs = 2
max_evaluations = 400
problems = ["ZDT1", "ZDT2"]
indicators = ["EP", "HV", "IGD+"]
{extra}
[[algorithms]]
kind = "NSGAII"
population_size = 20

[[algorithms]]
kind = "GDE3"
name = "GDE3-small"
population_size = 20
"#,
            dir.display()
        )
    }

    #[test]
    fn plan_schema_errors() {
        let dir = tempfile::tempdir().unwrap();
        let bad_key = plan_text(dir.path(), "colour = 1");
        match ExperimentPlan::from_toml(&bad_key) {
            Err(Error::Config(msg)) => assert!(msg.contains("colour"), "{msg}"),
            other => panic!("{other:?}"),
        }
        let bad_indicator = plan_text(dir.path(), "").replace("\"IGD+\"", "\"R2\"");
        assert!(matches!(
            ExperimentPlan::from_toml(&bad_indicator),
            Err(Error::Lookup { kind: "indicator", .. })
        ));
        let bad_param = plan_text(dir.path(), "").replace("name = \"GDE3-small\"", "archive_size = 5");
        assert!(matches!(ExperimentPlan::from_toml(&bad_param), Err(Error::Config(_))));
    }

    #[test]
    fn runs_grid_and_is_deterministic() {
        let dir = tempfile::tempdir().unwrap();
        let plan = ExperimentPlan::from_toml(&plan_text(dir.path(), "")).unwrap();
        assert_eq!(plan.expected_rows(), 24);
        let report = run_experiment(&plan).unwrap();
        assert!(report.failures.is_empty());
        assert_eq!(report.records.len(), 24);
        let first = fs::read(&report.summary_path).unwrap();
        assert!(dir.path().join("GDE3-small/ZDT2/FUN.1").exists());
        assert!(dir.path().join("NSGAII/ZDT1/VAR.0").exists());
        assert!(dir.path().join("manifest.json").exists());
        let again = run_experiment(&plan).unwrap();
        assert_eq!(fs::read(&again.summary_path).unwrap(), first);
        let text = String::from_utf8(first).unwrap();
        assert_eq!(text.lines().count(), 25);
        assert!(text.lines().nth(1).unwrap().starts_with("NSGAII,ZDT1,EP,0,"));
    }
}
