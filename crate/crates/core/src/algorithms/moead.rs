use rand::seq::SliceRandom;
use rand::Rng;

use super::{Algorithm, Context};
use crate::core::{nondominated, DominanceComparator, FloatSolution};
use crate::error::{Error, Result};
use crate::operators::{DifferentialEvolution, PolynomialMutation};
use crate::problems::dtlz::{lattice_size, simplex_lattice};

#[derive(Debug, Clone, PartialEq)]
pub struct MoeadConfig {
    /// Upper bound on the number of subproblems; the simplex lattice may use fewer.
    pub population_size: usize,
    pub neighborhood_size: usize,
    pub max_replacements: usize,
    pub de: DifferentialEvolution,
    /// `None` selects `1/n_vars` with index 20.
    pub mutation: Option<PolynomialMutation>,
}

impl Default for MoeadConfig {
    fn default() -> Self {
        MoeadConfig {
            population_size: 100,
            neighborhood_size: 20,
            max_replacements: 2,
            de: DifferentialEvolution { f: 0.5, cr: 1.0 },
            mutation: None,
        }
    }
}

/// `max_k w_k |f_k - z_k|`.
pub fn tchebycheff(f: &[f64], weights: &[f64], ideal: &[f64]) -> f64 {
    f.iter()
        .zip(weights)
        .zip(ideal)
        .map(|((fk, wk), zk)| wk * (fk - zk).abs())
        .fold(f64::NEG_INFINITY, f64::max)
}

/// Uniform weights: the simplex lattice with the most points not exceeding `n`.
pub fn uniform_weights(m: usize, n: usize) -> Result<Vec<Vec<f64>>> {
    if m < 2 || n < 2 {
        return Err(Error::Config("weights need m >= 2 and at least 2 subproblems".into()));
    }
    if m == 2 {
        return Ok(simplex_lattice(2, n - 1));
    }
    let mut h = 1;
    while lattice_size(m, h + 1) <= n {
        h += 1;
    }
    if lattice_size(m, h) > n {
        return Err(Error::Config(format!(
            "population {n} too small for {m} objectives"
        )));
    }
    Ok(simplex_lattice(m, h))
}

/// Indices of the `t` closest weight vectors (Euclidean) for each weight, itself included.
pub fn neighborhoods(weights: &[Vec<f64>], t: usize) -> Vec<Vec<usize>> {
    weights
        .iter()
        .map(|w| {
            let mut idx: Vec<(f64, usize)> = weights
                .iter()
                .enumerate()
                .map(|(j, v)| {
                    let d: f64 = w.iter().zip(v).map(|(a, b)| (a - b) * (a - b)).sum();
                    (d, j)
                })
                .collect();
            idx.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
            idx.into_iter().take(t).map(|(_, j)| j).collect()
        })
        .collect()
}

/// MOEA/D with DE reproduction and Tchebycheff aggregation.
pub struct Moead {
    pub config: MoeadConfig,
    ctx: Context,
    mutation: PolynomialMutation,
    weights: Vec<Vec<f64>>,
    neighbors: Vec<Vec<usize>>,
    ideal: Vec<f64>,
    population: Vec<FloatSolution>,
}

impl Moead {
    pub fn new(config: MoeadConfig, ctx: Context) -> Result<Self> {
        let m = ctx.problem.n_objectives();
        let weights = uniform_weights(m, config.population_size)?;
        let n = weights.len();
        if config.neighborhood_size < 3 || config.neighborhood_size > n {
            return Err(Error::Config(format!(
                "neighborhood size must lie in [3, {n}], got {}",
                config.neighborhood_size
            )));
        }
        if config.max_replacements == 0 {
            return Err(Error::Config("max_replacements must be positive".into()));
        }
        let neighbors = neighborhoods(&weights, config.neighborhood_size);
        let mutation = config
            .mutation
            .unwrap_or_else(|| PolynomialMutation::default_for(ctx.problem.n_vars()));
        Ok(Moead {
            config,
            ctx,
            mutation,
            weights,
            neighbors,
            ideal: vec![f64::INFINITY; m],
            population: Vec::new(),
        })
    }

    pub fn weights(&self) -> &[Vec<f64>] {
        &self.weights
    }

    pub fn ideal(&self) -> &[f64] {
        &self.ideal
    }

    pub fn population(&self) -> &[FloatSolution] {
        &self.population
    }

    fn update_ideal(&mut self, f: &[f64]) {
        for (z, v) in self.ideal.iter_mut().zip(f) {
            if *v < *z {
                *z = *v;
            }
        }
    }

    fn step(&mut self) -> Result<()> {
        let bounds = self.ctx.problem.bounds().clone();
        let mut order: Vec<usize> = (0..self.population.len()).collect();
        order.shuffle(&mut self.ctx.rng);
        for i in order {
            let hood = &self.neighbors[i];
            let a = hood[self.ctx.rng.gen_range(0..hood.len())];
            let b = loop {
                let b = hood[self.ctx.rng.gen_range(0..hood.len())];
                if b != a {
                    break b;
                }
            };
            let child = self.config.de.trial(
                &self.population[i].variables,
                [
                    &self.population[i].variables,
                    &self.population[a].variables,
                    &self.population[b].variables,
                ],
                &bounds,
                &mut self.ctx.rng,
            )?;
            let child = self.mutation.execute(&child, &bounds, &mut self.ctx.rng)?;
            let child = self.ctx.evaluate(vec![child])?.pop().expect("one child");
            self.ctx.evaluations += 1;
            self.update_ideal(&child.objectives.clone());

            let mut hood = self.neighbors[i].clone();
            hood.shuffle(&mut self.ctx.rng);
            let mut replaced = 0;
            for j in hood {
                let w = &self.weights[j];
                if tchebycheff(&child.objectives, w, &self.ideal)
                    < tchebycheff(&self.population[j].objectives, w, &self.ideal)
                {
                    self.population[j] = child.clone();
                    replaced += 1;
                    if replaced >= self.config.max_replacements {
                        break;
                    }
                }
            }
        }
        self.ctx.notify(&self.population);
        Ok(())
    }
}

impl Algorithm for Moead {
    fn name(&self) -> &str {
        "MOEAD"
    }

    fn context(&self) -> &Context {
        &self.ctx
    }

    fn context_mut(&mut self) -> &mut Context {
        &mut self.ctx
    }

    fn run(&mut self) -> Result<Vec<FloatSolution>> {
        self.ctx.restart_clock();
        let initial = self.ctx.create_solutions(self.weights.len());
        self.population = self.ctx.evaluate(initial)?;
        for s in self.population.clone() {
            self.update_ideal(&s.objectives);
        }
        self.ctx.evaluations = self.population.len() as u64;
        self.ctx.notify(&self.population);
        while !self.ctx.is_met(&self.population)? {
            self.step()?;
        }
        nondominated(&self.population, &DominanceComparator::Pareto)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::core::{dominates, StoppingByEvaluations};
    use crate::problems::{problem_by_name, Zdt, ZdtVariant};
    use std::sync::Arc;

    #[test]
    fn tchebycheff_examples() {
        assert_eq!(tchebycheff(&[3.0, 7.0], &[1.0, 0.0], &[0.0, 0.0]), 3.0);
        assert_eq!(tchebycheff(&[3.0, 7.0], &[0.5, 0.5], &[1.0, 1.0]), 3.0);
    }

    #[test]
    fn ideal_point_is_componentwise_min() {
        let problem = Arc::new(Zdt::new(ZdtVariant::Zdt1));
        let ctx = Context::new(problem, Box::new(StoppingByEvaluations::new(100)), 0);
        let mut alg = Moead::new(MoeadConfig::default(), ctx).unwrap();
        alg.ideal = vec![0.2, 0.5];
        alg.update_ideal(&[0.1, 0.9]);
        assert_eq!(alg.ideal(), &[0.1, 0.5]);
    }

    #[test]
    fn weights_and_neighborhoods() {
        let w = uniform_weights(2, 100).unwrap();
        assert_eq!(w.len(), 100);
        for v in &w {
            assert!((v.iter().sum::<f64>() - 1.0).abs() < 1e-12);
        }
        let w3 = uniform_weights(3, 100).unwrap();
        assert_eq!(w3.len(), 91);
        let hoods = neighborhoods(&w, 20);
        assert!(hoods.iter().all(|h| h.len() == 20));
        assert_eq!(hoods[0][0], 0);
        let full = neighborhoods(&w, 100);
        assert!(full.iter().all(|h| {
            let mut s = h.clone();
            s.sort();
            s == (0..100).collect::<Vec<_>>()
        }));
    }

    #[test]
    fn runs_on_two_and_three_objectives() {
        for (name, max) in [("ZDT1", 3000), ("DTLZ2", 2000)] {
            let problem = problem_by_name(name).unwrap();
            let ctx = Context::new(problem, Box::new(StoppingByEvaluations::new(max)), 4);
            let mut alg = Moead::new(MoeadConfig::default(), ctx).unwrap();
            let front = alg.run().unwrap();
            assert!(alg.context().evaluations >= max);
            for a in &front {
                for b in &front {
                    assert!(!dominates(&a.objectives, &b.objectives));
                }
            }
        }
    }
}
