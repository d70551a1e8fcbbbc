use rand::Rng;

use super::{Algorithm, Context};
use crate::core::{
    assign_rank_and_crowding, nondominated, ranking_and_crowding_selection, Bounds,
    DominanceComparator, FloatSolution,
};
use crate::error::{Error, Result};
use crate::operators::{binary_tournament, rank_and_crowding, PolynomialMutation, SbxCrossover};

#[derive(Debug, Clone, PartialEq)]
pub struct NsgaiiConfig {
    pub population_size: usize,
    /// `population_size` gives the generational scheme, 1 the steady-state one.
    pub offspring_size: usize,
    pub crossover: SbxCrossover,
    /// `None` selects `1/n_vars` with index 20.
    pub mutation: Option<PolynomialMutation>,
    pub dominance: DominanceComparator,
}

impl Default for NsgaiiConfig {
    fn default() -> Self {
        NsgaiiConfig {
            population_size: 100,
            offspring_size: 100,
            crossover: SbxCrossover::default(),
            mutation: None,
            dominance: DominanceComparator::Pareto,
        }
    }
}

impl NsgaiiConfig {
    pub fn steady_state() -> Self {
        NsgaiiConfig {
            offspring_size: 1,
            ..NsgaiiConfig::default()
        }
    }

    pub(crate) fn validate(&self) -> Result<()> {
        if self.population_size < 2 {
            return Err(Error::Config("population size must be at least 2".into()));
        }
        if self.offspring_size == 0 {
            return Err(Error::Config("offspring size must be positive".into()));
        }
        Ok(())
    }

    pub(crate) fn mutation_for(&self, n_vars: usize) -> PolynomialMutation {
        self.mutation
            .unwrap_or_else(|| PolynomialMutation::default_for(n_vars))
    }
}

/// Produces `n` offspring: pairs of parents chosen by crowded binary tournament, SBX, then
/// polynomial mutation on each child. With an odd `n` the second child of the last pair is
/// dropped.
pub fn reproduce<R: Rng + ?Sized>(
    population: &[FloatSolution],
    n: usize,
    crossover: &SbxCrossover,
    mutation: &PolynomialMutation,
    bounds: &Bounds,
    rng: &mut R,
) -> Result<Vec<FloatSolution>> {
    let mut offspring = Vec::with_capacity(n + 1);
    while offspring.len() < n {
        let p1 = binary_tournament(population, rank_and_crowding, rng)?;
        let p2 = binary_tournament(population, rank_and_crowding, rng)?;
        let (c1, c2) = crossover.execute((p1, p2), bounds, rng)?;
        offspring.push(mutation.execute(&c1, bounds, rng)?);
        if offspring.len() < n {
            offspring.push(mutation.execute(&c2, bounds, rng)?);
        }
    }
    Ok(offspring)
}

/// Merges population and offspring and keeps the best `n` by rank, then crowding.
pub fn nsgaii_replacement(
    population: Vec<FloatSolution>,
    offspring: Vec<FloatSolution>,
    n: usize,
    dominance: &DominanceComparator,
) -> Result<Vec<FloatSolution>> {
    let mut join = population;
    join.extend(offspring);
    ranking_and_crowding_selection(join, n, dominance)
}

/// NSGA-II. The offspring size selects between the generational and steady-state schemes;
/// the dominance comparator can be swapped for g-dominance.
pub struct Nsgaii {
    pub config: NsgaiiConfig,
    ctx: Context,
    mutation: PolynomialMutation,
    population: Vec<FloatSolution>,
}

impl Nsgaii {
    pub fn new(config: NsgaiiConfig, ctx: Context) -> Result<Self> {
        config.validate()?;
        let mutation = config.mutation_for(ctx.problem.n_vars());
        Ok(Nsgaii {
            config,
            ctx,
            mutation,
            population: Vec::new(),
        })
    }

    pub fn population(&self) -> &[FloatSolution] {
        &self.population
    }

    fn init(&mut self) -> Result<()> {
        self.ctx.restart_clock();
        let initial = self.ctx.create_solutions(self.config.population_size);
        self.population = self.ctx.evaluate(initial)?;
        assign_rank_and_crowding(&mut self.population, &self.config.dominance)?;
        self.ctx.evaluations = self.config.population_size as u64;
        self.ctx.notify(&self.population);
        Ok(())
    }

    fn step(&mut self) -> Result<()> {
        let offspring = reproduce(
            &self.population,
            self.config.offspring_size,
            &self.config.crossover,
            &self.mutation,
            self.ctx.problem.bounds(),
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
        self.ctx.evaluations += self.config.offspring_size as u64;
        self.ctx.notify(&self.population);
        Ok(())
    }
}

impl Algorithm for Nsgaii {
    fn name(&self) -> &str {
        "NSGAII"
    }

    fn context(&self) -> &Context {
        &self.ctx
    }

    fn context_mut(&mut self) -> &mut Context {
        &mut self.ctx
    }

    fn run(&mut self) -> Result<Vec<FloatSolution>> {
        self.init()?;
        while !self.ctx.is_met(&self.population)? {
            self.step()?;
        }
        nondominated(&self.population, &self.config.dominance)
    }
}
