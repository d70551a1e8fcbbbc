use std::sync::Arc;

use rand::seq::index::sample;

use super::nsgaii::{nsgaii_replacement, reproduce, NsgaiiConfig};
use super::{Algorithm, Context};
use crate::core::{assign_rank_and_crowding, nondominated, DynamicProblem, Event, FloatSolution};
use crate::error::{Error, Result};
use crate::operators::PolynomialMutation;

/// A finished epoch: its index, the counter value when it ended and its front.
#[derive(Debug, Clone, PartialEq)]
pub struct EpochFront {
    pub epoch: usize,
    pub evaluations: u64,
    pub front: Vec<FloatSolution>,
}

/// NSGA-II for problems that change while it runs.
///
/// Each generation checks the problem's changed flag; when set, part of the population is
/// replaced with fresh random solutions, everything is re-evaluated and the flag is cleared.
/// Meeting the termination criterion closes an epoch: observers receive the front with the
/// `EPOCH` key, the population is restarted and the counter is reset. The run ends after
/// `max_epochs` epochs.
pub struct DynamicNsgaii<P: DynamicProblem + 'static> {
    pub config: NsgaiiConfig,
    /// Fraction of the population replaced on restart.
    pub restart_fraction: f64,
    pub max_epochs: usize,
    problem: Arc<P>,
    ctx: Context,
    mutation: PolynomialMutation,
    population: Vec<FloatSolution>,
    completed_iterations: usize,
    restarts: usize,
    epochs: Vec<EpochFront>,
}

impl<P: DynamicProblem + 'static> DynamicNsgaii<P> {
    /// `ctx.problem` is replaced by `problem`.
    pub fn new(config: NsgaiiConfig, problem: Arc<P>, mut ctx: Context, max_epochs: usize) -> Result<Self> {
        config.validate()?;
        if max_epochs == 0 {
            return Err(Error::Config("max_epochs must be positive".into()));
        }
        ctx.problem = problem.clone();
        let mutation = config.mutation_for(problem.n_vars());
        Ok(DynamicNsgaii {
            config,
            restart_fraction: 0.3,
            max_epochs,
            problem,
            ctx,
            mutation,
            population: Vec::new(),
            completed_iterations: 0,
            restarts: 0,
            epochs: Vec::new(),
        })
    }

    pub fn with_restart_fraction(mut self, fraction: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&fraction) {
            return Err(Error::Config(format!("restart fraction {fraction} outside [0, 1]")));
        }
        self.restart_fraction = fraction;
        Ok(self)
    }

    pub fn population(&self) -> &[FloatSolution] {
        &self.population
    }

    pub fn restarts(&self) -> usize {
        self.restarts
    }

    pub fn completed_iterations(&self) -> usize {
        self.completed_iterations
    }

    pub fn epoch_fronts(&self) -> &[EpochFront] {
        &self.epochs
    }

    fn init_progress(&mut self) -> Result<()> {
        assign_rank_and_crowding(&mut self.population, &self.config.dominance)?;
        self.ctx.evaluations = self.config.population_size as u64;
        self.ctx.notify(&self.population);
        Ok(())
    }

    /// Replaces `restart_fraction` of the population with new random solutions and
    /// re-evaluates the whole population against the current problem state.
    pub fn restart(&mut self) -> Result<()> {
        let n = self.population.len();
        let k = ((n as f64) * self.restart_fraction).round() as usize;
        for i in sample(&mut self.ctx.rng, n, k.min(n)).into_iter() {
            self.population[i] = self.problem.create_solution(&mut self.ctx.rng);
        }
        let mut pop = std::mem::take(&mut self.population);
        for s in &mut pop {
            s.reset_evaluation();
        }
        self.population = self.ctx.evaluate(pop)?;
        assign_rank_and_crowding(&mut self.population, &self.config.dominance)?;
        self.restarts += 1;
        Ok(())
    }

    fn step(&mut self) -> Result<()> {
        let offspring = reproduce(
            &self.population,
            self.config.offspring_size,
            &self.config.crossover,
            &self.mutation,
            self.problem.bounds(),
            &mut self.ctx.rng,
        )?;
        let offspring = self.ctx.evaluate(offspring)?;
        let population = std::mem::take(&mut self.population);
        self.population = nsgaii_replacement(
            population,
            offspring,
            self.config.population_size,
            &self.config.dominance,
        )?;
        Ok(())
    }

    fn update_progress(&mut self) -> Result<()> {
        if self.problem.has_changed() {
            self.restart()?;
            self.problem.clear_changed();
        }
        self.ctx.evaluations += self.config.offspring_size as u64;
        self.ctx.notify(&self.population);
        Ok(())
    }

    fn end_epoch(&mut self) -> Result<()> {
        let front = nondominated(&self.population, &self.config.dominance)?;
        let event = Event {
            epoch: Some(self.completed_iterations),
            ..self.ctx.event(&front)
        };
        self.ctx.observable.notify_all(&event);
        self.epochs.push(EpochFront {
            epoch: self.completed_iterations,
            evaluations: self.ctx.evaluations,
            front,
        });
        self.completed_iterations += 1;
        Ok(())
    }
}

impl<P: DynamicProblem + 'static> Algorithm for DynamicNsgaii<P> {
    fn name(&self) -> &str {
        "DynamicNSGAII"
    }

    fn context(&self) -> &Context {
        &self.ctx
    }

    fn context_mut(&mut self) -> &mut Context {
        &mut self.ctx
    }

    /// Returns the front of the last epoch.
    fn run(&mut self) -> Result<Vec<FloatSolution>> {
        self.ctx.restart_clock();
        let initial = self.ctx.create_solutions(self.config.population_size);
        self.population = self.ctx.evaluate(initial)?;
        self.init_progress()?;
        loop {
            self.step()?;
            self.update_progress()?;
            if self.ctx.is_met(&self.population)? {
                self.end_epoch()?;
                if self.completed_iterations >= self.max_epochs {
                    break;
                }
                self.restart()?;
                self.problem.clear_changed();
                self.ctx.restart_clock();
                self.init_progress()?;
            }
        }
        Ok(self.epochs.last().map(|e| e.front.clone()).unwrap_or_default())
    }
}
