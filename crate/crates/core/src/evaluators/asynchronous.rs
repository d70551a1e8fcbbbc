//! Asynchronous evaluation: a pool of worker threads fed through a channel, with one reply
//! channel per task. The coordinator owns every random draw.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::atomic::{AtomicU64, AtomicUsize, Ordering};
use std::sync::Arc;
use std::thread::JoinHandle;

use crossbeam_channel::{bounded, unbounded, Receiver, Select, Sender, TryRecvError};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::algorithms::nsgaii::{nsgaii_replacement, reproduce, NsgaiiConfig};
use crate::core::{assign_rank_and_crowding, nondominated, FloatSolution, Problem};
use crate::error::{Error, Result};

struct Task {
    id: u64,
    solution: FloatSolution,
    reply: Sender<Result<FloatSolution>>,
}

#[derive(Default)]
struct Counters {
    submitted: AtomicU64,
    completed: AtomicU64,
    busy: AtomicUsize,
}

/// Snapshot of the engine's bookkeeping.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EngineStats {
    pub workers: usize,
    pub submitted: u64,
    pub completed: u64,
    pub in_flight: u64,
    pub busy_workers: usize,
}

/// Resolves to the evaluated solution of one submitted task.
#[derive(Debug)]
pub struct TaskHandle {
    id: u64,
    rx: Receiver<Result<FloatSolution>>,
}

impl TaskHandle {
    /// Submission sequence number, starting at 0.
    pub fn id(&self) -> u64 {
        self.id
    }

    pub fn wait(self) -> Result<FloatSolution> {
        self.rx
            .recv()
            .map_err(|_| Error::State(format!("worker dropped task {}", self.id)))?
    }
}

pub struct AsyncEvaluator {
    sender: Option<Sender<Task>>,
    threads: Vec<JoinHandle<()>>,
    counters: Arc<Counters>,
    workers: usize,
}

impl AsyncEvaluator {
    pub fn new(problem: Arc<dyn Problem>, workers: usize) -> Result<Self> {
        if workers == 0 {
            return Err(Error::Config("worker count must be positive".into()));
        }
        let (tx, rx) = unbounded::<Task>();
        let counters = Arc::new(Counters::default());
        let threads = (0..workers)
            .map(|w| {
                let rx = rx.clone();
                let problem = Arc::clone(&problem);
                let counters = Arc::clone(&counters);
                std::thread::Builder::new()
                    .name(format!("async-eval-{w}"))
                    .spawn(move || {
                        for task in rx.iter() {
                            counters.busy.fetch_add(1, Ordering::SeqCst);
                            let mut s = task.solution;
                            let outcome = catch_unwind(AssertUnwindSafe(|| problem.evaluate(&mut s)));
                            let result = match outcome {
                                Ok(Ok(())) => Ok(s),
                                Ok(Err(e)) => Err(Error::Evaluation {
                                    index: task.id as usize,
                                    message: e.to_string(),
                                }),
                                Err(_) => Err(Error::Evaluation {
                                    index: task.id as usize,
                                    message: "evaluation panicked".into(),
                                }),
                            };
                            counters.busy.fetch_sub(1, Ordering::SeqCst);
                            counters.completed.fetch_add(1, Ordering::SeqCst);
                            let _ = task.reply.send(result);
                        }
                    })
                    .map_err(Error::Io)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(AsyncEvaluator {
            sender: Some(tx),
            threads,
            counters,
            workers,
        })
    }

    pub fn workers(&self) -> usize {
        self.workers
    }

    pub fn submit(&self, solution: FloatSolution) -> Result<TaskHandle> {
        let sender = self
            .sender
            .as_ref()
            .ok_or_else(|| Error::State("engine has been shut down".into()))?;
        let id = self.counters.submitted.fetch_add(1, Ordering::SeqCst);
        let (reply, rx) = bounded(1);
        sender
            .send(Task { id, solution, reply })
            .map_err(|_| Error::State("engine has no live workers".into()))?;
        Ok(TaskHandle { id, rx })
    }

    pub fn stats(&self) -> EngineStats {
        let submitted = self.counters.submitted.load(Ordering::SeqCst);
        let completed = self.counters.completed.load(Ordering::SeqCst);
        EngineStats {
            workers: self.workers,
            submitted,
            completed,
            in_flight: submitted - completed,
            busy_workers: self.counters.busy.load(Ordering::SeqCst),
        }
    }

    /// Blocks until one of `handles` resolves, removes it and returns its id and result.
    /// When several are ready, the one that comes first in `handles` is taken.
    pub fn wait_any(handles: &mut Vec<TaskHandle>) -> Result<(u64, FloatSolution)> {
        if handles.is_empty() {
            return Err(Error::State("no tasks in flight".into()));
        }
        loop {
            for i in 0..handles.len() {
                match handles[i].rx.try_recv() {
                    Ok(result) => {
                        let handle = handles.remove(i);
                        return Ok((handle.id, result?));
                    }
                    Err(TryRecvError::Empty) => {}
                    Err(TryRecvError::Disconnected) => {
                        return Err(Error::State(format!("worker dropped task {}", handles[i].id)));
                    }
                }
            }
            let mut sel = Select::new();
            for h in handles.iter() {
                sel.recv(&h.rx);
            }
            sel.ready();
        }
    }

    /// Stops accepting work, lets queued tasks finish and joins the workers.
    pub fn shutdown(&mut self) {
        self.sender.take();
        for t in self.threads.drain(..) {
            let _ = t.join();
        }
    }
}

impl Drop for AsyncEvaluator {
    fn drop(&mut self) {
        self.shutdown();
    }
}

/// Result of [`async_nsgaii_run`].
#[derive(Debug, Clone)]
pub struct AsyncRunOutcome {
    pub front: Vec<FloatSolution>,
    pub population: Vec<FloatSolution>,
    pub evaluations: u64,
}

/// Steady-state NSGA-II on the asynchronous engine.
///
/// The first `population_size` random solutions are submitted together. Each completed
/// evaluation either fills the population or goes through steady-state replacement; once
/// the population is full, new offspring are submitted until every worker has a task or
/// the budget is exhausted. With one worker the run performs exactly the same operations,
/// in the same order, as the sequential steady-state algorithm with the same seed.
pub fn async_nsgaii_run(
    config: &NsgaiiConfig,
    problem: Arc<dyn Problem>,
    workers: usize,
    budget: u64,
    seed: u64,
) -> Result<AsyncRunOutcome> {
    config.validate()?;
    if config.offspring_size != 1 {
        return Err(Error::Config(
            "the asynchronous engine runs the steady-state scheme (offspring size 1)".into(),
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mutation = config.mutation_for(problem.n_vars());
    let bounds = problem.bounds().clone();
    let n = config.population_size;
    let mut engine = AsyncEvaluator::new(Arc::clone(&problem), workers)?;

    let mut handles = Vec::new();
    let mut submitted = 0u64;
    while submitted < budget.min(n as u64) {
        handles.push(engine.submit(problem.create_solution(&mut rng))?);
        submitted += 1;
    }

    let mut population: Vec<FloatSolution> = Vec::with_capacity(n + 1);
    let mut completed = 0u64;
    while completed < budget {
        let (_, solution) = AsyncEvaluator::wait_any(&mut handles)?;
        completed += 1;
        if population.len() < n {
            population.push(solution);
            if population.len() == n {
                assign_rank_and_crowding(&mut population, &config.dominance)?;
            }
        } else {
            population = nsgaii_replacement(population, vec![solution], n, &config.dominance)?;
        }
        if population.len() == n {
            while handles.len() < workers && submitted < budget {
                let child = reproduce(&population, 1, &config.crossover, &mutation, &bounds, &mut rng)?
                    .pop()
                    .expect("one offspring");
                handles.push(engine.submit(child)?);
                submitted += 1;
            }
        }
    }
    engine.shutdown();
    if population.len() < n {
        assign_rank_and_crowding(&mut population, &config.dominance)?;
    }
    let front = nondominated(&population, &config.dominance)?;
    Ok(AsyncRunOutcome {
        front,
        population,
        evaluations: completed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algorithms::{Algorithm, Context, Nsgaii};
    use crate::core::StoppingByEvaluations;
    use crate::evaluators::Delayed;
    use crate::problems::{Zdt, ZdtVariant};
    use std::time::Duration;

    fn zdt1() -> Arc<dyn Problem> {
        Arc::new(Zdt::new(ZdtVariant::Zdt1))
    }

    #[test]
    fn submit_then_wait() {
        let p = zdt1();
        let engine = AsyncEvaluator::new(p.clone(), 2).unwrap();
        let s = FloatSolution::new(vec![0.0; 30]);
        let h = engine.submit(s).unwrap();
        assert_eq!(h.wait().unwrap().objectives, vec![0.0, 1.0]);
    }

    #[test]
    fn saturation_is_visible_in_stats() {
        let p: Arc<dyn Problem> = Arc::new(Delayed::new(zdt1(), Duration::from_millis(200)));
        let engine = AsyncEvaluator::new(p.clone(), 4).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let handles: Vec<_> = (0..4)
            .map(|_| engine.submit(p.create_solution(&mut rng)).unwrap())
            .collect();
        std::thread::sleep(Duration::from_millis(80));
        let stats = engine.stats();
        assert_eq!(stats.busy_workers, 4);
        assert_eq!(stats.submitted, stats.completed + stats.in_flight);
        for h in handles {
            h.wait().unwrap();
        }
        assert_eq!(engine.stats().in_flight, 0);
    }

    #[test]
    fn single_worker_completes_in_submission_order() {
        let p = zdt1();
        let engine = AsyncEvaluator::new(p.clone(), 1).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let mut handles: Vec<_> = (0..20)
            .map(|_| engine.submit(p.create_solution(&mut rng)).unwrap())
            .collect();
        let mut order = Vec::new();
        while !handles.is_empty() {
            order.push(AsyncEvaluator::wait_any(&mut handles).unwrap().0);
        }
        assert_eq!(order, (0..20).collect::<Vec<_>>());
    }

    #[test]
    fn submit_after_shutdown_is_a_state_error() {
        let mut engine = AsyncEvaluator::new(zdt1(), 2).unwrap();
        engine.shutdown();
        assert!(matches!(
            engine.submit(FloatSolution::new(vec![0.0; 30])),
            Err(Error::State(_))
        ));
    }

    #[test]
    fn failures_carry_the_task_index() {
        let engine = AsyncEvaluator::new(zdt1(), 2).unwrap();
        engine.submit(FloatSolution::new(vec![0.0; 30])).unwrap().wait().unwrap();
        let bad = engine.submit(FloatSolution::new(vec![0.0; 3])).unwrap();
        assert!(matches!(bad.wait(), Err(Error::Evaluation { index: 1, .. })));
    }

    #[test]
    fn budget_is_consumed_exactly() {
        for workers in [1, 3, 8] {
            let out = async_nsgaii_run(&NsgaiiConfig::steady_state(), zdt1(), workers, 250, 5).unwrap();
            assert_eq!(out.evaluations, 250);
            assert_eq!(out.population.len(), 100);
        }
    }

    #[test]
    fn single_worker_matches_sequential_steady_state() {
        for seed in [0, 17] {
            let out = async_nsgaii_run(&NsgaiiConfig::steady_state(), zdt1(), 1, 600, seed).unwrap();
            let ctx = Context::new(zdt1(), Box::new(StoppingByEvaluations::new(600)), seed);
            let mut seq = Nsgaii::new(NsgaiiConfig::steady_state(), ctx).unwrap();
            let front = seq.run().unwrap();
            assert_eq!(out.population, seq.population());
            assert_eq!(out.front, front);
        }
    }

    #[test]
    fn generational_config_is_rejected() {
        assert!(async_nsgaii_run(&NsgaiiConfig::default(), zdt1(), 2, 200, 0).is_err());
    }
}
