use std::sync::Arc;
use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::core::{Event, FloatSolution, Observable, Problem, TerminationCriterion};
use crate::error::Result;
use crate::evaluators::{Evaluator, SequentialEvaluator};

/// State shared by every solver: problem, evaluation engine, stopping rule, observers,
/// random stream and the evaluation counter.
pub struct Context {
    pub problem: Arc<dyn Problem>,
    pub evaluator: Arc<dyn Evaluator>,
    pub termination: Box<dyn TerminationCriterion>,
    pub observable: Observable,
    pub rng: ChaCha8Rng,
    pub evaluations: u64,
    started: Instant,
}

impl Context {
    /// Sequential evaluation, random stream seeded with `seed`.
    pub fn new(
        problem: Arc<dyn Problem>,
        termination: Box<dyn TerminationCriterion>,
        seed: u64,
    ) -> Self {
        Context {
            problem,
            evaluator: Arc::new(SequentialEvaluator),
            termination,
            observable: Observable::new(),
            rng: ChaCha8Rng::seed_from_u64(seed),
            evaluations: 0,
            started: Instant::now(),
        }
    }

    pub fn with_evaluator(mut self, evaluator: Arc<dyn Evaluator>) -> Self {
        self.evaluator = evaluator;
        self
    }

    /// Evaluates through the configured engine. Does not touch the counter.
    pub fn evaluate(&self, solutions: Vec<FloatSolution>) -> Result<Vec<FloatSolution>> {
        self.evaluator.evaluate(solutions, self.problem.as_ref())
    }

    pub fn create_solutions(&mut self, n: usize) -> Vec<FloatSolution> {
        (0..n)
            .map(|_| self.problem.create_solution(&mut self.rng))
            .collect()
    }

    pub(crate) fn restart_clock(&mut self) {
        self.started = Instant::now();
    }

    pub fn elapsed(&self) -> Duration {
        self.started.elapsed()
    }

    pub fn event<'a>(&'a self, solutions: &'a [FloatSolution]) -> Event<'a> {
        Event {
            problem: Some(self.problem.name()),
            computing_time: Some(self.elapsed()),
            ..Event::progress(self.evaluations, solutions)
        }
    }

    pub fn notify(&self, solutions: &[FloatSolution]) {
        self.observable.notify_all(&self.event(solutions));
    }

    pub fn is_met(&self, solutions: &[FloatSolution]) -> Result<bool> {
        self.termination.is_met(&self.event(solutions))
    }
}
