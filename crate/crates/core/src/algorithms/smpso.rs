use rand::Rng;

use super::archive::CrowdingArchive;
use super::{Algorithm, Context};
use crate::core::{dominates, Bounds, FloatSolution};
use crate::error::{Error, Result};
use crate::operators::PolynomialMutation;

#[derive(Debug, Clone, PartialEq)]
pub struct SmpsoConfig {
    pub swarm_size: usize,
    pub archive_size: usize,
    /// `None` selects `1/n_vars` with index 20.
    pub mutation: Option<PolynomialMutation>,
    pub c1: (f64, f64),
    pub c2: (f64, f64),
    pub weight: f64,
}

impl Default for SmpsoConfig {
    fn default() -> Self {
        SmpsoConfig {
            swarm_size: 100,
            archive_size: 100,
            mutation: None,
            c1: (1.5, 2.5),
            c2: (1.5, 2.5),
            weight: 0.1,
        }
    }
}

/// Constriction coefficient for `phi = c1 + c2`. The closed form is negative for `phi > 4`.
pub fn constriction(phi: f64) -> f64 {
    if phi > 4.0 {
        2.0 / (2.0 - phi - (phi * phi - 4.0 * phi).sqrt())
    } else {
        1.0
    }
}

/// Limits `v` to `[-delta, delta]`.
pub fn clamp_velocity(v: f64, delta: f64) -> f64 {
    v.clamp(-delta, delta)
}

/// Speed-constrained multi-objective PSO with a crowding-pruned leader archive.
pub struct Smpso {
    pub config: SmpsoConfig,
    ctx: Context,
    mutation: PolynomialMutation,
    delta: Vec<f64>,
    swarm: Vec<FloatSolution>,
    velocity: Vec<Vec<f64>>,
    best: Vec<FloatSolution>,
    leaders: CrowdingArchive,
}

impl Smpso {
    pub fn new(config: SmpsoConfig, ctx: Context) -> Result<Self> {
        if config.swarm_size == 0 || config.archive_size == 0 {
            return Err(Error::Config("swarm and archive sizes must be positive".into()));
        }
        let bounds = ctx.problem.bounds();
        let delta = bounds
            .lower()
            .iter()
            .zip(bounds.upper())
            .map(|(l, u)| (u - l) / 2.0)
            .collect();
        let mutation = config
            .mutation
            .unwrap_or_else(|| PolynomialMutation::default_for(bounds.len()));
        let leaders = CrowdingArchive::new(config.archive_size);
        Ok(Smpso {
            config,
            ctx,
            mutation,
            delta,
            swarm: Vec::new(),
            velocity: Vec::new(),
            best: Vec::new(),
            leaders,
        })
    }

    pub fn leaders(&self) -> &CrowdingArchive {
        &self.leaders
    }

    pub fn velocities(&self) -> &[Vec<f64>] {
        &self.velocity
    }

    pub fn swarm(&self) -> &[FloatSolution] {
        &self.swarm
    }

    fn init(&mut self) -> Result<()> {
        self.ctx.restart_clock();
        let initial = self.ctx.create_solutions(self.config.swarm_size);
        self.swarm = self.ctx.evaluate(initial)?;
        for s in &self.swarm {
            self.leaders.add(s.clone());
        }
        self.velocity = vec![vec![0.0; self.delta.len()]; self.swarm.len()];
        self.best = self.swarm.clone();
        self.ctx.evaluations = self.config.swarm_size as u64;
        self.ctx.notify(self.leaders.members());
        Ok(())
    }

    /// Global guide: binary tournament on crowding distance among the leaders.
    fn select_leader(&mut self, crowding: &[f64]) -> usize {
        let n = self.leaders.len();
        if n == 1 {
            return 0;
        }
        let i = self.ctx.rng.gen_range(0..n);
        let mut j = self.ctx.rng.gen_range(0..n - 1);
        if j >= i {
            j += 1;
        }
        if crowding[i] > crowding[j] {
            i
        } else if crowding[j] > crowding[i] {
            j
        } else if self.ctx.rng.gen::<bool>() {
            i
        } else {
            j
        }
    }

    fn update_velocities(&mut self) {
        let crowding = self.leaders.crowding();
        for i in 0..self.swarm.len() {
            let g = self.select_leader(&crowding);
            let rng = &mut self.ctx.rng;
            let r1: f64 = rng.gen();
            let r2: f64 = rng.gen();
            let c1 = rng.gen_range(self.config.c1.0..=self.config.c1.1);
            let c2 = rng.gen_range(self.config.c2.0..=self.config.c2.1);
            let chi = constriction(c1 + c2);
            let x = &self.swarm[i].variables;
            let p = &self.best[i].variables;
            let gb = &self.leaders.members()[g].variables;
            for j in 0..x.len() {
                let v = chi
                    * (self.config.weight * self.velocity[i][j]
                        + c1 * r1 * (p[j] - x[j])
                        + c2 * r2 * (gb[j] - x[j]));
                self.velocity[i][j] = clamp_velocity(v, self.delta[j]);
            }
        }
    }

    fn update_positions(&mut self, bounds: &Bounds) {
        for (s, v) in self.swarm.iter_mut().zip(&mut self.velocity) {
            for j in 0..s.variables.len() {
                let x = s.variables[j] + v[j];
                if x < bounds.lower()[j] {
                    s.variables[j] = bounds.lower()[j];
                    v[j] = -v[j];
                } else if x > bounds.upper()[j] {
                    s.variables[j] = bounds.upper()[j];
                    v[j] = -v[j];
                } else {
                    s.variables[j] = x;
                }
            }
            s.reset_evaluation();
        }
    }

    fn step(&mut self) -> Result<()> {
        let bounds = self.ctx.problem.bounds().clone();
        self.update_velocities();
        self.update_positions(&bounds);
        for (i, s) in self.swarm.iter_mut().enumerate() {
            if i % 6 == 0 {
                self.mutation.mutate_in_place(&mut s.variables, &bounds, &mut self.ctx.rng);
            }
        }
        let swarm = std::mem::take(&mut self.swarm);
        self.swarm = self.ctx.evaluate(swarm)?;
        for s in &self.swarm {
            self.leaders.add(s.clone());
        }
        for (b, s) in self.best.iter_mut().zip(&self.swarm) {
            if !dominates(&b.objectives, &s.objectives) {
                *b = s.clone();
            }
        }
        self.ctx.evaluations += self.swarm.len() as u64;
        self.ctx.notify(self.leaders.members());
        Ok(())
    }
}

impl Algorithm for Smpso {
    fn name(&self) -> &str {
        "SMPSO"
    }

    fn context(&self) -> &Context {
        &self.ctx
    }

    fn context_mut(&mut self) -> &mut Context {
        &mut self.ctx
    }

    fn run(&mut self) -> Result<Vec<FloatSolution>> {
        self.init()?;
        while !self.ctx.is_met(self.leaders.members())? {
            self.step()?;
        }
        Ok(self.leaders.members().to_vec())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::core::StoppingByEvaluations;
    use crate::problems::{Zdt, ZdtVariant};
    use std::sync::Arc;

    fn solver(max: u64, seed: u64) -> Smpso {
        let problem = Arc::new(Zdt::new(ZdtVariant::Zdt4));
        let ctx = Context::new(problem, Box::new(StoppingByEvaluations::new(max)), seed);
        Smpso::new(SmpsoConfig::default(), ctx).unwrap()
    }

    #[test]
    fn constriction_branches() {
        assert_eq!(constriction(3.0), 1.0);
        assert_eq!(constriction(4.0), 1.0);
        // phi = 4.1: 2 / (2 - 4.1 - sqrt(0.41))
        let expected = -2.0 / (2.1 + 0.41f64.sqrt());
        assert!((constriction(4.1) - expected).abs() < 1e-15);
        // phi = 5: 2 / (2 - 5 - sqrt(5)) = -2 / (3 + sqrt 5)
        assert!((constriction(5.0) + 2.0 / (3.0 + 5f64.sqrt())).abs() < 1e-15);
    }

    #[test]
    fn velocity_clamp() {
        assert_eq!(clamp_velocity(7.0, 5.0), 5.0);
        assert_eq!(clamp_velocity(-7.0, 5.0), -5.0);
        assert_eq!(clamp_velocity(1.0, 5.0), 1.0);
    }

    #[test]
    fn invariants_hold_during_run() {
        let mut alg = solver(2000, 3);
        let front = alg.run().unwrap();
        assert!(front.len() <= 100);
        assert_eq!(alg.context().evaluations, 2000);
        let bounds = alg.context().problem.bounds().clone();
        for (s, v) in alg.swarm().iter().zip(alg.velocities()) {
            assert!(bounds.contains(&s.variables));
            for (j, vj) in v.iter().enumerate() {
                assert!(vj.abs() <= (bounds.upper()[j] - bounds.lower()[j]) / 2.0);
            }
        }
        for a in &front {
            for b in &front {
                assert!(!dominates(&a.objectives, &b.objectives));
            }
        }
    }

    #[test]
    fn seeded_runs_are_identical() {
        assert_eq!(solver(1000, 11).run().unwrap(), solver(1000, 11).run().unwrap());
    }
}
