//! Command-line driver: `run`, `experiment`, `indicators`, `stats` and `plot`.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::algorithms::output::{read_matrix, write_fun, write_var};
use crate::algorithms::{execute, AlgorithmKind, AlgorithmSpec, RunSettings};
use crate::error::{Error, Result};
use crate::evaluators::EngineKind;
use crate::indicators::{Front, Indicator};
use crate::lab::{
    front_plot_svg, read_summary, run_experiment, write_stats_artifacts, Artifact, ExperimentPlan,
    StatsOptions,
};
use crate::problems::{default_reference_front, problem_by_name};
use crate::stats::{Adjustment, DEFAULT_ROPE, DEFAULT_SAMPLES};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "moolab", version, about = "Multi-objective optimization runs, indicators and statistics")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Execute one seeded run and write FUN/VAR files.
    Run(RunArgs),
    /// Execute an experiment plan and write summary.csv.
    Experiment(ExperimentArgs),
    /// Compute quality indicators of a front against a reference front.
    Indicators(IndicatorArgs),
    /// Produce LaTeX tables and SVG plots from a summary file.
    Stats(StatsArgs),
    /// Plot a front as SVG.
    Plot(PlotArgs),
}

#[derive(Debug, Args)]
pub struct RunArgs {
    /// NSGAII, SMPSO, GDE3 or MOEAD.
    #[arg(long)]
    pub algorithm: String,
    /// Problem name, e.g. ZDT1 or DTLZ2:5 (five objectives).
    #[arg(long)]
    pub problem: String,
    /// Evaluation budget.
    #[arg(long, default_value_t = 25_000)]
    pub evaluations: u64,
    /// Random seed.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// sequential, parallel_map or async_steady_state.
    #[arg(long, default_value = "sequential")]
    pub engine: String,
    /// Worker threads for the parallel engines.
    #[arg(long, default_value_t = 1)]
    pub workers: usize,
    /// Comma-separated g-dominance reference point (NSGAII only).
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    pub reference_point: Option<Vec<f64>>,
    /// Output directory for FUN and VAR.
    #[arg(long, default_value = ".")]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct ExperimentArgs {
    /// TOML plan file.
    #[arg(long)]
    pub plan: PathBuf,
}

#[derive(Debug, Args)]
pub struct IndicatorArgs {
    /// Front file (one point per line).
    #[arg(long)]
    pub front: PathBuf,
    /// Reference front file or problem name.
    #[arg(long)]
    pub reference_front: String,
    /// Comma-separated indicator names (default: all).
    #[arg(long, value_delimiter = ',')]
    pub indicators: Option<Vec<String>>,
}

#[derive(Debug, Args)]
pub struct StatsArgs {
    /// Summary CSV.
    #[arg(long)]
    pub summary: PathBuf,
    /// Indicator to analyse.
    #[arg(long)]
    pub indicator: String,
    /// Comma-separated artifacts: median, wilcoxon, boxplot, cd, bayesian, friedman,
    /// friedman_aligned, quade, posthoc (default: the first five).
    #[arg(long, value_delimiter = ',')]
    pub tests: Option<Vec<String>>,
    /// Significance level.
    #[arg(long, default_value_t = 0.05)]
    pub alpha: f64,
    /// Rope radius of the Bayesian test.
    #[arg(long, default_value_t = DEFAULT_ROPE)]
    pub rope: f64,
    /// Algorithm pair A,B for the posterior plot (default: first two in the summary).
    #[arg(long, value_delimiter = ',')]
    pub pair: Option<Vec<String>>,
    /// Posterior draws.
    #[arg(long, default_value_t = DEFAULT_SAMPLES)]
    pub samples: usize,
    /// Seed of the posterior sampler.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Control algorithm for post-hoc tests (default: all pairs).
    #[arg(long)]
    pub control: Option<String>,
    /// bonferroni_dunn, holm, holland, finner, hochberg, li or shaffer.
    #[arg(long, default_value = "holm")]
    pub adjustment: String,
    /// Directory for the artifacts.
    #[arg(long, default_value = ".")]
    pub out_dir: PathBuf,
}

#[derive(Debug, Args)]
pub struct PlotArgs {
    /// FUN file to plot.
    #[arg(long)]
    pub fun: PathBuf,
    /// Reference front file or problem name.
    #[arg(long)]
    pub reference_front: Option<String>,
    /// Comma-separated reference point drawn in red.
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    pub reference_point: Option<Vec<f64>>,
    /// Output SVG path.
    #[arg(long)]
    pub out: PathBuf,
}

/// Exit status for an error: 2 for usage and configuration problems, 1 otherwise.
pub fn exit_code(error: &Error) -> i32 {
    match error {
        Error::Argument(_) | Error::Config(_) | Error::Lookup { .. } => EXIT_USAGE,
        _ => EXIT_FAILURE,
    }
}

/// Parses `args` and runs the command, writing to `out`; returns the exit status.
pub fn main_with_args<I, T>(args: I, out: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let _ = e.print();
            return code;
        }
    };
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

fn dispatch(command: Command, out: &mut dyn Write) -> Result<i32> {
    match command {
        Command::Run(a) => cmd_run(&a, out),
        Command::Experiment(a) => cmd_experiment(&a, out),
        Command::Indicators(a) => cmd_indicators(&a, out),
        Command::Stats(a) => cmd_stats(&a, out),
        Command::Plot(a) => cmd_plot(&a, out),
    }
}

fn io(e: std::io::Error) -> Error {
    Error::Io(e)
}

pub fn cmd_run(args: &RunArgs, out: &mut dyn Write) -> Result<i32> {
    let kind: AlgorithmKind = args.algorithm.parse()?;
    let problem = problem_by_name(&args.problem)?;
    let engine: EngineKind = args.engine.parse()?;
    let mut spec = AlgorithmSpec::new(kind);
    if let Some(p) = &args.reference_point {
        if kind != AlgorithmKind::Nsgaii {
            return Err(Error::Argument(format!("--reference-point is only supported by NSGAII, not {kind}")));
        }
        spec.reference_point = Some(p.clone());
    }
    let settings = RunSettings {
        max_evaluations: args.evaluations,
        seed: args.seed,
        engine,
        workers: args.workers,
    };
    let outcome = execute(&spec, problem, &settings)?;
    fs::create_dir_all(&args.out).map_err(|e| Error::file(&args.out, e))?;
    write_fun(args.out.join("FUN"), &outcome.front)?;
    write_var(args.out.join("VAR"), &outcome.front)?;
    writeln!(out, "algorithm: {}", spec.label()).map_err(io)?;
    writeln!(out, "problem: {}", args.problem).map_err(io)?;
    writeln!(out, "seed: {}", args.seed).map_err(io)?;
    writeln!(out, "evaluations: {}", outcome.evaluations).map_err(io)?;
    writeln!(out, "computing time: {:.3} s", outcome.elapsed.as_secs_f64()).map_err(io)?;
    writeln!(out, "front size: {}", outcome.front.len()).map_err(io)?;
    Ok(EXIT_OK)
}

pub fn cmd_experiment(args: &ExperimentArgs, out: &mut dyn Write) -> Result<i32> {
    let plan = ExperimentPlan::load(&args.plan)?;
    let report = run_experiment(&plan)?;
    writeln!(out, "{}", report.summary_path.display()).map_err(io)?;
    if report.failures.is_empty() {
        Ok(EXIT_OK)
    } else {
        for f in &report.failures {
            eprintln!("failed: {} on {} run {}: {}", f.algorithm, f.problem, f.run, f.message);
        }
        Ok(EXIT_FAILURE)
    }
}

/// Loads a reference front from a file, or from the problem registry when no such file exists.
pub fn load_reference(spec: &str) -> Result<Front> {
    let path = Path::new(spec);
    if path.is_file() {
        return Front::new(read_matrix(path)?);
    }
    default_reference_front(spec)
}

pub fn cmd_indicators(args: &IndicatorArgs, out: &mut dyn Write) -> Result<i32> {
    let front = Front::new(read_matrix(&args.front)?)?;
    let reference = load_reference(&args.reference_front)?;
    let indicators: Vec<Indicator> = match &args.indicators {
        Some(names) => names.iter().map(|n| n.parse()).collect::<Result<_>>()?,
        None => Indicator::ALL.to_vec(),
    };
    for i in indicators {
        match i.compute(&front, &reference) {
            Ok(v) => writeln!(out, "{}: {v}", i.name()).map_err(io)?,
            // spread is only defined for two objectives
            Err(Error::UnsupportedDimension(msg)) if args.indicators.is_none() => {
                writeln!(out, "{}: n/a ({msg})", i.name()).map_err(io)?
            }
            Err(e) => return Err(e),
        }
    }
    Ok(EXIT_OK)
}

pub fn cmd_stats(args: &StatsArgs, out: &mut dyn Write) -> Result<i32> {
    let records = read_summary(&args.summary)?;
    let mut options = StatsOptions::new(&args.indicator, &args.out_dir);
    if let Some(tests) = &args.tests {
        options.artifacts = tests.iter().map(|t| t.parse()).collect::<Result<Vec<Artifact>>>()?;
    }
    options.alpha = args.alpha;
    options.rope = args.rope;
    options.bayesian_samples = args.samples;
    options.seed = args.seed;
    options.control = args.control.clone();
    options.pair = match &args.pair {
        None => None,
        Some(v) if v.len() == 2 => Some((v[0].clone(), v[1].clone())),
        Some(v) => return Err(Error::Argument(format!("--pair needs two names, got {}", v.len()))),
    };
    options.adjustment = if args.adjustment.eq_ignore_ascii_case("shaffer") {
        Adjustment::Shaffer { k: 0 }
    } else {
        args.adjustment.parse()?
    };
    if !(0.0 < args.alpha && args.alpha < 1.0) {
        return Err(Error::Argument(format!("alpha {} must lie in (0, 1)", args.alpha)));
    }
    for path in write_stats_artifacts(&records, &options)? {
        writeln!(out, "{}", path.display()).map_err(io)?;
    }
    Ok(EXIT_OK)
}

pub fn cmd_plot(args: &PlotArgs, out: &mut dyn Write) -> Result<i32> {
    let front = Front::new(read_matrix(&args.fun)?)?;
    let reference = args.reference_front.as_deref().map(load_reference).transpose()?;
    let svg = front_plot_svg(&front, reference.as_ref(), args.reference_point.as_deref())?;
    fs::write(&args.out, svg).map_err(|e| Error::file(&args.out, e))?;
    writeln!(out, "{}", args.out.display()).map_err(io)?;
    Ok(EXIT_OK)
}
