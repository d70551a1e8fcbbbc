use super::{Algorithm, Context};
use crate::core::{
    assign_rank_and_crowding, nondominated, ranking_and_crowding_selection, ComparisonResult,
    DominanceComparator, FloatSolution,
};
use crate::error::{Error, Result};
use crate::operators::DifferentialEvolution;

#[derive(Debug, Clone, PartialEq)]
pub struct Gde3Config {
    pub population_size: usize,
    pub de: DifferentialEvolution,
    pub dominance: DominanceComparator,
}

impl Default for Gde3Config {
    fn default() -> Self {
        Gde3Config {
            population_size: 100,
            de: DifferentialEvolution::default(),
            dominance: DominanceComparator::Pareto,
        }
    }
}

/// Generalized differential evolution, third version.
pub struct Gde3 {
    pub config: Gde3Config,
    ctx: Context,
    population: Vec<FloatSolution>,
}

/// One selection round: each target is compared with its trial. A dominated target is
/// replaced, a dominated trial is discarded and otherwise both survive; the grown set is
/// cut back to `n` by rank and crowding.
pub fn gde3_selection(
    population: Vec<FloatSolution>,
    trials: Vec<FloatSolution>,
    n: usize,
    dominance: &DominanceComparator,
) -> Result<Vec<FloatSolution>> {
    let mut next = Vec::with_capacity(2 * population.len());
    for (target, trial) in population.into_iter().zip(trials) {
        match dominance.compare(&trial, &target)? {
            ComparisonResult::FirstWins => next.push(trial),
            ComparisonResult::SecondWins => next.push(target),
            ComparisonResult::Indifferent => {
                next.push(target);
                next.push(trial);
            }
        }
    }
    if next.len() > n {
        ranking_and_crowding_selection(next, n, dominance)
    } else {
        Ok(next)
    }
}

impl Gde3 {
    pub fn new(config: Gde3Config, ctx: Context) -> Result<Self> {
        if config.population_size < 4 {
            return Err(Error::Config("GDE3 needs a population of at least 4".into()));
        }
        Ok(Gde3 {
            config,
            ctx,
            population: Vec::new(),
        })
    }

    pub fn population(&self) -> &[FloatSolution] {
        &self.population
    }

    fn step(&mut self) -> Result<()> {
        let bounds = self.ctx.problem.bounds().clone();
        let trials = (0..self.population.len())
            .map(|i| {
                self.config
                    .de
                    .rand_1_bin(i, &self.population, &bounds, &mut self.ctx.rng)
            })
            .collect::<Result<Vec<_>>>()?;
        let trials = self.ctx.evaluate(trials)?;
        let n = trials.len();
        let population = std::mem::take(&mut self.population);
        self.population = gde3_selection(population, trials, self.config.population_size, &self.config.dominance)?;
        self.ctx.evaluations += n as u64;
        self.ctx.notify(&self.population);
        Ok(())
    }
}

impl Algorithm for Gde3 {
    fn name(&self) -> &str {
        "GDE3"
    }

    fn context(&self) -> &Context {
        &self.ctx
    }

    fn context_mut(&mut self) -> &mut Context {
        &mut self.ctx
    }

    fn run(&mut self) -> Result<Vec<FloatSolution>> {
        self.ctx.restart_clock();
        let initial = self.ctx.create_solutions(self.config.population_size);
        self.population = self.ctx.evaluate(initial)?;
        assign_rank_and_crowding(&mut self.population, &self.config.dominance)?;
        self.ctx.evaluations = self.config.population_size as u64;
        self.ctx.notify(&self.population);
        while !self.ctx.is_met(&self.population)? {
            self.step()?;
        }
        nondominated(&self.population, &self.config.dominance)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::core::{dominates, StoppingByEvaluations};
    use crate::problems::{Zdt, ZdtVariant};
    use std::sync::Arc;

    fn s(o: &[f64]) -> FloatSolution {
        FloatSolution::with_objectives(vec![o[0]], o.to_vec())
    }

    #[test]
    fn dominating_trial_replaces_target() {
        let pop = vec![s(&[0.5, 0.5]), s(&[0.2, 0.9])];
        let trials = vec![s(&[0.4, 0.4]), s(&[0.3, 0.95])];
        let next = gde3_selection(pop, trials, 2, &DominanceComparator::Pareto).unwrap();
        assert_eq!(next[0].objectives, vec![0.4, 0.4]);
        assert_eq!(next[1].objectives, vec![0.2, 0.9]);
    }

    #[test]
    fn mutual_nondomination_is_pruned_back() {
        let pop: Vec<_> = (0..5).map(|i| s(&[i as f64, 10.0 - i as f64])).collect();
        let trials: Vec<_> = (0..5).map(|i| s(&[i as f64 + 0.5, 9.5 - i as f64])).collect();
        let next = gde3_selection(pop, trials, 5, &DominanceComparator::Pareto).unwrap();
        assert_eq!(next.len(), 5);
    }

    #[test]
    fn identical_population_is_a_fixed_point() {
        let problem = Arc::new(Zdt::new(ZdtVariant::Zdt1));
        let ctx = Context::new(problem.clone(), Box::new(StoppingByEvaluations::new(1000)), 1);
        let config = Gde3Config {
            population_size: 6,
            de: DifferentialEvolution::new(0.0, 1.0).unwrap(),
            ..Gde3Config::default()
        };
        let mut alg = Gde3::new(config, ctx).unwrap();
        let one = crate::core::problem::evaluated(problem.as_ref(), FloatSolution::new(vec![0.3; 30])).unwrap();
        alg.population = vec![one.clone(); 6];
        assign_rank_and_crowding(&mut alg.population, &DominanceComparator::Pareto).unwrap();
        alg.step().unwrap();
        assert_eq!(alg.population().len(), 6);
        for p in alg.population() {
            assert_eq!(p.variables, one.variables);
        }
    }

    #[test]
    fn run_returns_nondominated_front() {
        let problem = Arc::new(Zdt::new(ZdtVariant::Zdt2));
        let ctx = Context::new(problem, Box::new(StoppingByEvaluations::new(3000)), 8);
        let mut alg = Gde3::new(Gde3Config::default(), ctx).unwrap();
        let front = alg.run().unwrap();
        assert_eq!(alg.context().evaluations, 3000);
        for a in &front {
            for b in &front {
                assert!(!dominates(&a.objectives, &b.objectives));
            }
        }
    }
}
