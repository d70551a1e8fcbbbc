//! Writes the statistical artifacts for one indicator of a summary.

use std::collections::HashMap;
use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use super::grid::IndicatorGrid;
use super::plots::{boxplot_svg, posterior_plot_svg, CdDiagram};
use super::summary::SummaryRecord;
use super::tables::{median_iqr_table, posthoc_table, rank_test_table, wilcoxon_symbol_table, RankTest};
use crate::error::{Error, Result};
use crate::stats::{bayesian_sign_test, Adjustment, BayesianConfig, DEFAULT_ROPE};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Artifact {
    Median,
    Wilcoxon,
    Boxplot,
    Cd,
    Bayesian,
    Friedman,
    FriedmanAligned,
    Quade,
    Posthoc,
}

impl Artifact {
    pub const ALL: [Artifact; 9] = [
        Artifact::Median,
        Artifact::Wilcoxon,
        Artifact::Boxplot,
        Artifact::Cd,
        Artifact::Bayesian,
        Artifact::Friedman,
        Artifact::FriedmanAligned,
        Artifact::Quade,
        Artifact::Posthoc,
    ];

    /// Median table, Wilcoxon table, boxplots, CD plot and posterior plot.
    pub const DEFAULT: [Artifact; 5] = [
        Artifact::Median,
        Artifact::Wilcoxon,
        Artifact::Boxplot,
        Artifact::Cd,
        Artifact::Bayesian,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Artifact::Median => "median",
            Artifact::Wilcoxon => "wilcoxon",
            Artifact::Boxplot => "boxplot",
            Artifact::Cd => "cd",
            Artifact::Bayesian => "bayesian",
            Artifact::Friedman => "friedman",
            Artifact::FriedmanAligned => "friedman_aligned",
            Artifact::Quade => "quade",
            Artifact::Posthoc => "posthoc",
        }
    }
}

impl fmt::Display for Artifact {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Artifact {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Artifact::ALL
            .into_iter()
            .find(|a| a.name().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| Error::Lookup {
                kind: "statistical test",
                name: s.to_string(),
            })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct StatsOptions {
    pub indicator: String,
    pub artifacts: Vec<Artifact>,
    pub alpha: f64,
    pub rope: f64,
    /// Algorithms for the posterior plot; defaults to the first two in the summary.
    pub pair: Option<(String, String)>,
    pub bayesian_samples: usize,
    pub seed: u64,
    /// Control algorithm for post-hoc tests; all pairs when `None`.
    pub control: Option<String>,
    pub adjustment: Adjustment,
    pub out_dir: PathBuf,
}

impl StatsOptions {
    pub fn new(indicator: &str, out_dir: impl Into<PathBuf>) -> Self {
        StatsOptions {
            indicator: indicator.to_string(),
            artifacts: Artifact::DEFAULT.to_vec(),
            alpha: 0.05,
            rope: DEFAULT_ROPE,
            pair: None,
            bayesian_samples: crate::stats::DEFAULT_SAMPLES,
            seed: 0,
            control: None,
            adjustment: Adjustment::Holm,
            out_dir: out_dir.into(),
        }
    }
}

/// Differences `score(a) - score(b)` over runs matched by problem and execution id, signed so
/// that positive values favour `a`.
pub fn paired_differences(grid: &IndicatorGrid, a: &str, b: &str) -> Result<Vec<f64>> {
    let (ia, ib) = (grid.algorithm_index(a)?, grid.algorithm_index(b)?);
    let sign = if grid.larger_is_better { 1.0 } else { -1.0 };
    let mut z = Vec::new();
    for p in 0..grid.problems.len() {
        let (sa, sb) = (grid.runs(ia, p)?, grid.runs(ib, p)?);
        let by_id: HashMap<u64, f64> = sb.into_iter().collect();
        z.extend(
            sa.into_iter()
                .filter_map(|(id, va)| by_id.get(&id).map(|vb| sign * (va - vb))),
        );
    }
    if z.is_empty() {
        return Err(Error::Data(format!("no matching runs for {a} and {b}")));
    }
    Ok(z)
}

fn write(path: PathBuf, content: &str) -> Result<PathBuf> {
    fs::write(&path, content).map_err(|e| Error::file(&path, e))?;
    Ok(path)
}

fn file_stem(s: &str) -> String {
    s.chars()
        .map(|c| if c.is_ascii_alphanumeric() || "-_".contains(c) { c } else { '_' })
        .collect()
}

/// Generates the requested artifacts under `out_dir` and returns the written paths.
pub fn write_stats_artifacts(records: &[SummaryRecord], options: &StatsOptions) -> Result<Vec<PathBuf>> {
    let grid = IndicatorGrid::from_records(records, &options.indicator)?;
    fs::create_dir_all(&options.out_dir).map_err(|e| Error::file(&options.out_dir, e))?;
    let ind = &options.indicator;
    let stem = file_stem(ind);
    let dir: &Path = &options.out_dir;
    let mut written = Vec::new();
    for &artifact in &options.artifacts {
        match artifact {
            Artifact::Median => {
                let tex = median_iqr_table(records, ind)?;
                written.push(write(dir.join(format!("median_iqr_{stem}.tex")), &tex)?);
            }
            Artifact::Wilcoxon => {
                let tex = wilcoxon_symbol_table(records, ind, options.alpha)?;
                written.push(write(dir.join(format!("wilcoxon_{stem}.tex")), &tex)?);
            }
            Artifact::Boxplot => {
                for problem in &grid.problems {
                    let svg = boxplot_svg(records, ind, problem)?;
                    let name = format!("boxplot_{stem}_{}.svg", file_stem(problem));
                    written.push(write(dir.join(name), &svg)?);
                }
            }
            Artifact::Cd => {
                let svg = CdDiagram::from_records(records, ind, options.alpha)?.render();
                written.push(write(dir.join(format!("cd_{stem}.svg")), &svg)?);
            }
            Artifact::Bayesian => {
                let (a, b) = match &options.pair {
                    Some((a, b)) => (a.clone(), b.clone()),
                    None if grid.algorithms.len() >= 2 => {
                        (grid.algorithms[0].clone(), grid.algorithms[1].clone())
                    }
                    None => return Err(Error::Data("posterior plot needs two algorithms".into())),
                };
                let z = paired_differences(&grid, &a, &b)?;
                let config = BayesianConfig {
                    rope: options.rope,
                    samples: options.bayesian_samples,
                    seed: options.seed,
                    ..BayesianConfig::default()
                };
                let outcome = bayesian_sign_test(&z, &config)?;
                // negative differences favour `b`, so it labels the left vertex
                let svg = posterior_plot_svg(&outcome, &b, &a, 5000);
                let name = format!("posterior_{stem}_{}_{}.svg", file_stem(&a), file_stem(&b));
                written.push(write(dir.join(name), &svg)?);
            }
            Artifact::Friedman | Artifact::FriedmanAligned | Artifact::Quade => {
                let test = match artifact {
                    Artifact::Friedman => RankTest::Friedman,
                    Artifact::FriedmanAligned => RankTest::FriedmanAligned,
                    _ => RankTest::Quade,
                };
                let tex = rank_test_table(records, ind, test)?;
                written.push(write(dir.join(format!("{}_{stem}.tex", artifact.name())), &tex)?);
            }
            Artifact::Posthoc => {
                let tex = posthoc_table(records, ind, options.control.as_deref(), options.adjustment)?;
                written.push(write(dir.join(format!("posthoc_{stem}.tex")), &tex)?);
            }
        }
    }
    Ok(written)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn records() -> Vec<SummaryRecord> {
        let mut out = Vec::new();
        for (p, problem) in ["ZDT1", "ZDT2", "ZDT3"].iter().enumerate() {
            for run in 0..6u64 {
                let base = 0.5 + p as f64 * 0.01 + run as f64 * 0.001;
                out.push(SummaryRecord::new("A", problem, "HV", run, base + 0.05));
                out.push(SummaryRecord::new("B", problem, "HV", run, base));
                out.push(SummaryRecord::new("C", problem, "HV", run, base - 0.01));
            }
        }
        out
    }

    #[test]
    fn default_artifacts_are_written() {
        let dir = tempfile::tempdir().unwrap();
        let paths = write_stats_artifacts(&records(), &StatsOptions::new("HV", dir.path())).unwrap();
        let names: Vec<String> = paths
            .iter()
            .map(|p| p.file_name().unwrap().to_string_lossy().into_owned())
            .collect();
        assert!(names.contains(&"median_iqr_HV.tex".to_string()));
        assert!(names.contains(&"wilcoxon_HV.tex".to_string()));
        assert!(names.contains(&"cd_HV.svg".to_string()));
        assert!(names.contains(&"posterior_HV_A_B.svg".to_string()));
        assert_eq!(names.iter().filter(|n| n.starts_with("boxplot_")).count(), 3);
    }

    #[test]
    fn single_test_and_missing_indicator() {
        let dir = tempfile::tempdir().unwrap();
        let mut opts = StatsOptions::new("HV", dir.path());
        opts.artifacts = vec!["friedman".parse().unwrap()];
        let paths = write_stats_artifacts(&records(), &opts).unwrap();
        assert_eq!(paths.len(), 1);
        opts.indicator = "IGD".into();
        assert!(matches!(write_stats_artifacts(&records(), &opts), Err(Error::Data(_))));
        assert!("anova".parse::<Artifact>().is_err());
    }

    #[test]
    fn differences_are_oriented() {
        let grid = IndicatorGrid::from_records(&records(), "HV").unwrap();
        let z = paired_differences(&grid, "A", "B").unwrap();
        assert_eq!(z.len(), 18);
        assert!(z.iter().all(|v| *v > 0.0));
        let recs: Vec<SummaryRecord> = records()
            .into_iter()
            .map(|mut r| {
                r.indicator = "IGD".into();
                r
            })
            .collect();
        let grid = IndicatorGrid::from_records(&recs, "IGD").unwrap();
        assert!(paired_differences(&grid, "A", "B").unwrap().iter().all(|v| *v < 0.0));
    }
}
