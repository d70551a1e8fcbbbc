//! Metaheuristics and the configuration layer used by the CLI and experiment plans.

mod archive;
mod context;
pub mod dynamic;
pub mod gde3;
pub mod moead;
pub mod nsgaii;
pub mod output;
pub mod smpso;

pub use archive::CrowdingArchive;
pub use context::Context;
pub use dynamic::{DynamicNsgaii, EpochFront};
pub use gde3::{Gde3, Gde3Config};
pub use moead::{Moead, MoeadConfig};
pub use nsgaii::{Nsgaii, NsgaiiConfig};
pub use smpso::{Smpso, SmpsoConfig};

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use crate::core::{DominanceComparator, FloatSolution, Problem, ReferencePoint, StoppingByEvaluations};
use crate::error::{Error, Result};
use crate::evaluators::{async_nsgaii_run, synchronous_evaluator, EngineKind};
use crate::operators::{DifferentialEvolution, PolynomialMutation, SbxCrossover};

/// A runnable solver.
pub trait Algorithm {
    fn name(&self) -> &str;

    fn context(&self) -> &Context;

    fn context_mut(&mut self) -> &mut Context;

    /// Runs until the termination criterion is met and returns the final
    /// non-dominated solutions.
    fn run(&mut self) -> Result<Vec<FloatSolution>>;
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum AlgorithmKind {
    #[serde(rename = "NSGAII")]
    Nsgaii,
    #[serde(rename = "SMPSO")]
    Smpso,
    #[serde(rename = "GDE3")]
    Gde3,
    #[serde(rename = "MOEAD")]
    Moead,
}

impl AlgorithmKind {
    pub const ALL: [AlgorithmKind; 4] = [
        AlgorithmKind::Nsgaii,
        AlgorithmKind::Smpso,
        AlgorithmKind::Gde3,
        AlgorithmKind::Moead,
    ];

    pub fn name(self) -> &'static str {
        match self {
            AlgorithmKind::Nsgaii => "NSGAII",
            AlgorithmKind::Smpso => "SMPSO",
            AlgorithmKind::Gde3 => "GDE3",
            AlgorithmKind::Moead => "MOEAD",
        }
    }
}

impl fmt::Display for AlgorithmKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for AlgorithmKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let key: String = s
            .chars()
            .filter(|c| c.is_ascii_alphanumeric())
            .collect::<String>()
            .to_ascii_uppercase();
        AlgorithmKind::ALL
            .into_iter()
            .find(|k| k.name() == key)
            .ok_or_else(|| Error::Lookup {
                kind: "algorithm",
                name: s.to_string(),
            })
    }
}

/// Named algorithm configuration. Unset parameters take the solver defaults.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgorithmSpec {
    /// Label used in output paths and summary rows; defaults to the kind's name.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub kind: AlgorithmKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub population_size: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub offspring_size: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reference_point: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub crossover_probability: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub crossover_distribution_index: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mutation_probability: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mutation_distribution_index: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub f: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cr: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub archive_size: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub neighborhood_size: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_replacements: Option<usize>,
}

impl AlgorithmSpec {
    pub fn new(kind: AlgorithmKind) -> Self {
        AlgorithmSpec {
            name: None,
            kind,
            population_size: None,
            offspring_size: None,
            reference_point: None,
            crossover_probability: None,
            crossover_distribution_index: None,
            mutation_probability: None,
            mutation_distribution_index: None,
            f: None,
            cr: None,
            archive_size: None,
            neighborhood_size: None,
            max_replacements: None,
        }
    }

    pub fn label(&self) -> &str {
        self.name.as_deref().unwrap_or(self.kind.name())
    }

    /// Rejects parameters that the chosen kind does not use.
    pub fn validate(&self) -> Result<()> {
        let set = [
            ("offspring_size", self.offspring_size.is_some(), &[AlgorithmKind::Nsgaii][..]),
            ("reference_point", self.reference_point.is_some(), &[AlgorithmKind::Nsgaii][..]),
            ("crossover_probability", self.crossover_probability.is_some(), &[AlgorithmKind::Nsgaii][..]),
            ("crossover_distribution_index", self.crossover_distribution_index.is_some(), &[AlgorithmKind::Nsgaii][..]),
            (
                "mutation_probability",
                self.mutation_probability.is_some(),
                &[AlgorithmKind::Nsgaii, AlgorithmKind::Smpso, AlgorithmKind::Moead][..],
            ),
            (
                "mutation_distribution_index",
                self.mutation_distribution_index.is_some(),
                &[AlgorithmKind::Nsgaii, AlgorithmKind::Smpso, AlgorithmKind::Moead][..],
            ),
            ("f", self.f.is_some(), &[AlgorithmKind::Gde3, AlgorithmKind::Moead][..]),
            ("cr", self.cr.is_some(), &[AlgorithmKind::Gde3, AlgorithmKind::Moead][..]),
            ("archive_size", self.archive_size.is_some(), &[AlgorithmKind::Smpso][..]),
            ("neighborhood_size", self.neighborhood_size.is_some(), &[AlgorithmKind::Moead][..]),
            ("max_replacements", self.max_replacements.is_some(), &[AlgorithmKind::Moead][..]),
        ];
        let offending: Vec<&str> = set
            .iter()
            .filter(|(_, present, kinds)| *present && !kinds.contains(&self.kind))
            .map(|(k, _, _)| *k)
            .collect();
        if !offending.is_empty() {
            return Err(Error::Config(format!(
                "{} does not accept: {}",
                self.kind,
                offending.join(", ")
            )));
        }
        Ok(())
    }

    fn mutation(&self, n_vars: usize) -> Result<Option<PolynomialMutation>> {
        if self.mutation_probability.is_none() && self.mutation_distribution_index.is_none() {
            return Ok(None);
        }
        let d = PolynomialMutation::default_for(n_vars);
        PolynomialMutation::new(
            self.mutation_probability.unwrap_or(d.probability),
            self.mutation_distribution_index.unwrap_or(d.distribution_index),
        )
        .map(Some)
    }

    pub fn nsgaii_config(&self, problem: &dyn Problem) -> Result<NsgaiiConfig> {
        let d = NsgaiiConfig::default();
        let population_size = self.population_size.unwrap_or(d.population_size);
        let dominance = match &self.reference_point {
            Some(g) => {
                if g.len() != problem.n_objectives() {
                    return Err(Error::Config(format!(
                        "reference point has {} coordinates, {} has {} objectives",
                        g.len(),
                        problem.name(),
                        problem.n_objectives()
                    )));
                }
                DominanceComparator::GDominance(ReferencePoint::new(g.clone()))
            }
            None => DominanceComparator::Pareto,
        };
        let sbx = SbxCrossover::default();
        Ok(NsgaiiConfig {
            population_size,
            offspring_size: self.offspring_size.unwrap_or(population_size),
            crossover: SbxCrossover::new(
                self.crossover_probability.unwrap_or(sbx.probability),
                self.crossover_distribution_index.unwrap_or(sbx.distribution_index),
            )?,
            mutation: self.mutation(problem.n_vars())?,
            dominance,
        })
    }

    fn de(&self, default: DifferentialEvolution) -> Result<DifferentialEvolution> {
        DifferentialEvolution::new(self.f.unwrap_or(default.f), self.cr.unwrap_or(default.cr))
    }

    /// Builds the solver bound to `ctx`.
    pub fn build(&self, ctx: Context) -> Result<Box<dyn Algorithm>> {
        self.validate()?;
        let problem = Arc::clone(&ctx.problem);
        Ok(match self.kind {
            AlgorithmKind::Nsgaii => Box::new(Nsgaii::new(self.nsgaii_config(problem.as_ref())?, ctx)?),
            AlgorithmKind::Smpso => {
                let d = SmpsoConfig::default();
                let swarm_size = self.population_size.unwrap_or(d.swarm_size);
                Box::new(Smpso::new(
                    SmpsoConfig {
                        swarm_size,
                        archive_size: self.archive_size.unwrap_or(swarm_size),
                        mutation: self.mutation(problem.n_vars())?,
                        ..d
                    },
                    ctx,
                )?)
            }
            AlgorithmKind::Gde3 => {
                let d = Gde3Config::default();
                Box::new(Gde3::new(
                    Gde3Config {
                        population_size: self.population_size.unwrap_or(d.population_size),
                        de: self.de(d.de)?,
                        ..d
                    },
                    ctx,
                )?)
            }
            AlgorithmKind::Moead => {
                let d = MoeadConfig::default();
                Box::new(Moead::new(
                    MoeadConfig {
                        population_size: self.population_size.unwrap_or(d.population_size),
                        neighborhood_size: self.neighborhood_size.unwrap_or(d.neighborhood_size),
                        max_replacements: self.max_replacements.unwrap_or(d.max_replacements),
                        de: self.de(d.de)?,
                        mutation: self.mutation(problem.n_vars())?,
                    },
                    ctx,
                )?)
            }
        })
    }
}

/// Budget, seed and engine for one run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RunSettings {
    pub max_evaluations: u64,
    pub seed: u64,
    pub engine: EngineKind,
    pub workers: usize,
}

impl Default for RunSettings {
    fn default() -> Self {
        RunSettings {
            max_evaluations: 25_000,
            seed: 0,
            engine: EngineKind::Sequential,
            workers: 1,
        }
    }
}

#[derive(Debug, Clone)]
pub struct RunOutcome {
    pub front: Vec<FloatSolution>,
    pub evaluations: u64,
    pub elapsed: Duration,
}

/// Runs one seeded execution of `spec` on `problem`.
pub fn execute(spec: &AlgorithmSpec, problem: Arc<dyn Problem>, settings: &RunSettings) -> Result<RunOutcome> {
    spec.validate()?;
    let started = Instant::now();
    if settings.engine == EngineKind::AsyncSteadyState {
        if spec.kind != AlgorithmKind::Nsgaii {
            return Err(Error::Config(format!(
                "the asynchronous engine only drives NSGAII, not {}",
                spec.kind
            )));
        }
        let mut config = spec.nsgaii_config(problem.as_ref())?;
        match spec.offspring_size {
            None | Some(1) => config.offspring_size = 1,
            Some(other) => {
                return Err(Error::Config(format!(
                    "the asynchronous engine needs offspring_size 1, got {other}"
                )))
            }
        }
        let out = async_nsgaii_run(&config, problem, settings.workers, settings.max_evaluations, settings.seed)?;
        return Ok(RunOutcome {
            front: out.front,
            evaluations: out.evaluations,
            elapsed: started.elapsed(),
        });
    }
    let evaluator = synchronous_evaluator(settings.engine, settings.workers)?;
    let ctx = Context::new(
        problem,
        Box::new(StoppingByEvaluations::new(settings.max_evaluations)),
        settings.seed,
    )
    .with_evaluator(evaluator);
    let mut algorithm = spec.build(ctx)?;
    let front = algorithm.run()?;
    Ok(RunOutcome {
        front,
        evaluations: algorithm.context().evaluations,
        elapsed: started.elapsed(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::problems::problem_by_name;

    #[test]
    fn kind_names() {
        for k in AlgorithmKind::ALL {
            assert_eq!(k.name().parse::<AlgorithmKind>().unwrap(), k);
        }
        assert_eq!("nsga-ii".parse::<AlgorithmKind>().unwrap(), AlgorithmKind::Nsgaii);
        assert!("MOCell".parse::<AlgorithmKind>().is_err());
    }

    #[test]
    fn inapplicable_parameters_are_named() {
        let mut spec = AlgorithmSpec::new(AlgorithmKind::Smpso);
        spec.neighborhood_size = Some(10);
        spec.f = Some(0.3);
        match spec.validate() {
            Err(Error::Config(msg)) => {
                assert!(msg.contains("neighborhood_size") && msg.contains("f"));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn every_kind_runs_on_a_small_budget() {
        let problem = problem_by_name("ZDT1").unwrap();
        for k in AlgorithmKind::ALL {
            let spec = AlgorithmSpec::new(k);
            let settings = RunSettings {
                max_evaluations: 500,
                ..RunSettings::default()
            };
            let out = execute(&spec, problem.clone(), &settings).unwrap();
            assert!(!out.front.is_empty(), "{k}");
            assert!(out.evaluations >= 500);
        }
    }

    #[test]
    fn engines_agree_for_synchronous_kinds() {
        let problem = problem_by_name("ZDT1").unwrap();
        let spec = AlgorithmSpec::new(AlgorithmKind::Nsgaii);
        let base = RunSettings {
            max_evaluations: 600,
            seed: 3,
            ..RunSettings::default()
        };
        let seq = execute(&spec, problem.clone(), &base).unwrap();
        let par = execute(
            &spec,
            problem,
            &RunSettings {
                engine: EngineKind::ParallelMap,
                workers: 4,
                ..base
            },
        )
        .unwrap();
        assert_eq!(seq.front, par.front);
    }

    #[test]
    fn async_engine_requires_nsgaii() {
        let problem = problem_by_name("ZDT1").unwrap();
        let settings = RunSettings {
            engine: EngineKind::AsyncSteadyState,
            workers: 2,
            max_evaluations: 300,
            ..RunSettings::default()
        };
        assert!(execute(&AlgorithmSpec::new(AlgorithmKind::Gde3), problem.clone(), &settings).is_err());
        let out = execute(&AlgorithmSpec::new(AlgorithmKind::Nsgaii), problem, &settings).unwrap();
        assert_eq!(out.evaluations, 300);
    }

    #[test]
    fn spec_from_toml() {
        let spec: AlgorithmSpec = toml::from_str("kind = \"NSGAII\"\nname = \"NSGAII-RP\"\nreference_point = [0.5, 0.5]\n").unwrap();
        assert_eq!(spec.label(), "NSGAII-RP");
        assert!(toml::from_str::<AlgorithmSpec>("kind = \"NSGAII\"\nbogus = 1\n").is_err());
    }
}
