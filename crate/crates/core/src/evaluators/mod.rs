//! Evaluation engines. Synchronous engines return solutions in input order; the
//! asynchronous engine hands out per-task handles.

pub mod asynchronous;

pub use asynchronous::{async_nsgaii_run, AsyncEvaluator, EngineStats, TaskHandle};

use std::str::FromStr;
use std::sync::Arc;
use std::time::Duration;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::core::{Bounds, FloatSolution, Problem};
use crate::error::{Error, Result};

/// Evaluates a batch of solutions against a problem.
pub trait Evaluator: Send + Sync {
    fn evaluate(&self, solutions: Vec<FloatSolution>, problem: &dyn Problem) -> Result<Vec<FloatSolution>>;
}

fn evaluate_one(index: usize, mut s: FloatSolution, problem: &dyn Problem) -> Result<FloatSolution> {
    match problem.evaluate(&mut s) {
        Ok(()) => Ok(s),
        Err(e) => Err(Error::Evaluation {
            index,
            message: e.to_string(),
        }),
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct SequentialEvaluator;

impl Evaluator for SequentialEvaluator {
    fn evaluate(&self, solutions: Vec<FloatSolution>, problem: &dyn Problem) -> Result<Vec<FloatSolution>> {
        solutions
            .into_iter()
            .enumerate()
            .map(|(i, s)| evaluate_one(i, s, problem))
            .collect()
    }
}

/// Data-parallel evaluation on a dedicated thread pool.
pub struct ParallelMapEvaluator {
    pool: rayon::ThreadPool,
    workers: usize,
}

impl ParallelMapEvaluator {
    pub fn new(workers: usize) -> Result<Self> {
        if workers == 0 {
            return Err(Error::Config("worker count must be positive".into()));
        }
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(workers)
            .thread_name(|i| format!("eval-{i}"))
            .build()
            .map_err(|e| Error::Config(e.to_string()))?;
        Ok(ParallelMapEvaluator { pool, workers })
    }

    pub fn workers(&self) -> usize {
        self.workers
    }
}

impl std::fmt::Debug for ParallelMapEvaluator {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("ParallelMapEvaluator")
            .field("workers", &self.workers)
            .finish()
    }
}

impl Evaluator for ParallelMapEvaluator {
    fn evaluate(&self, solutions: Vec<FloatSolution>, problem: &dyn Problem) -> Result<Vec<FloatSolution>> {
        self.pool.install(|| {
            solutions
                .into_par_iter()
                .enumerate()
                .map(|(i, s)| evaluate_one(i, s, problem))
                .collect()
        })
    }
}

/// Engine choice as given on the command line or in a plan.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EngineKind {
    #[default]
    Sequential,
    ParallelMap,
    AsyncSteadyState,
}

impl EngineKind {
    pub fn name(self) -> &'static str {
        match self {
            EngineKind::Sequential => "sequential",
            EngineKind::ParallelMap => "parallel_map",
            EngineKind::AsyncSteadyState => "async_steady_state",
        }
    }
}

impl FromStr for EngineKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "sequential" => Ok(EngineKind::Sequential),
            "parallel_map" => Ok(EngineKind::ParallelMap),
            "async_steady_state" | "async" => Ok(EngineKind::AsyncSteadyState),
            _ => Err(Error::Lookup {
                kind: "engine",
                name: s.to_string(),
            }),
        }
    }
}

/// Builds a synchronous evaluator. The asynchronous engine is driven separately.
pub fn synchronous_evaluator(kind: EngineKind, workers: usize) -> Result<Arc<dyn Evaluator>> {
    match kind {
        EngineKind::Sequential => Ok(Arc::new(SequentialEvaluator)),
        EngineKind::ParallelMap => Ok(Arc::new(ParallelMapEvaluator::new(workers)?)),
        EngineKind::AsyncSteadyState => Err(Error::Config(
            "the asynchronous engine is not a batch evaluator".into(),
        )),
    }
}

/// Wraps a problem and sleeps for a fixed time before every evaluation. Used to emulate
/// expensive objective functions.
pub struct Delayed {
    inner: Arc<dyn Problem>,
    delay: Duration,
}

impl Delayed {
    pub fn new(inner: Arc<dyn Problem>, delay: Duration) -> Self {
        Delayed { inner, delay }
    }
}

impl Problem for Delayed {
    fn name(&self) -> &str {
        self.inner.name()
    }

    fn n_objectives(&self) -> usize {
        self.inner.n_objectives()
    }

    fn n_constraints(&self) -> usize {
        self.inner.n_constraints()
    }

    fn bounds(&self) -> &Bounds {
        self.inner.bounds()
    }

    fn evaluate(&self, solution: &mut FloatSolution) -> Result<()> {
        std::thread::sleep(self.delay);
        self.inner.evaluate(solution)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::problems::{Zdt, ZdtVariant};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn batch(p: &dyn Problem, n: usize) -> Vec<FloatSolution> {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        (0..n).map(|_| p.create_solution(&mut rng)).collect()
    }

    #[test]
    fn empty_batch() {
        let p = Zdt::new(ZdtVariant::Zdt1);
        assert!(SequentialEvaluator.evaluate(vec![], &p).unwrap().is_empty());
        let par = ParallelMapEvaluator::new(2).unwrap();
        assert!(par.evaluate(vec![], &p).unwrap().is_empty());
    }

    #[test]
    fn parallel_matches_sequential() {
        let p = Zdt::new(ZdtVariant::Zdt1);
        let input = batch(&p, 100);
        let seq = SequentialEvaluator.evaluate(input.clone(), &p).unwrap();
        let par = ParallelMapEvaluator::new(4).unwrap().evaluate(input, &p).unwrap();
        assert_eq!(seq, par);
    }

    #[test]
    fn failing_index_is_reported() {
        let p = Zdt::new(ZdtVariant::Zdt1);
        let mut input = batch(&p, 10);
        input[7].variables.pop();
        for eval in [
            Box::new(SequentialEvaluator) as Box<dyn Evaluator>,
            Box::new(ParallelMapEvaluator::new(3).unwrap()),
        ] {
            match eval.evaluate(input.clone(), &p) {
                Err(Error::Evaluation { index, .. }) => assert_eq!(index, 7),
                other => panic!("unexpected {other:?}"),
            }
        }
    }

    #[test]
    fn engine_names() {
        for k in [EngineKind::Sequential, EngineKind::ParallelMap, EngineKind::AsyncSteadyState] {
            assert_eq!(k.name().parse::<EngineKind>().unwrap(), k);
        }
        assert!("spark".parse::<EngineKind>().is_err());
        assert!(synchronous_evaluator(EngineKind::AsyncSteadyState, 2).is_err());
        assert!(ParallelMapEvaluator::new(0).is_err());
    }
}
