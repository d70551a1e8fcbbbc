use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::core::{Bounds, FloatSolution};
use crate::error::{Error, Result};

/// DE/rand/1/bin parameters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DifferentialEvolution {
    pub f: f64,
    pub cr: f64,
}

impl Default for DifferentialEvolution {
    fn default() -> Self {
        DifferentialEvolution { f: 0.5, cr: 0.5 }
    }
}

impl DifferentialEvolution {
    pub fn new(f: f64, cr: f64) -> Result<Self> {
        if !(0.0..=2.0).contains(&f) {
            return Err(Error::Config(format!("differential weight {f} out of range")));
        }
        super::check_probability(cr)?;
        Ok(DifferentialEvolution { f, cr })
    }

    /// Builds the trial vector for `population[target]` from three distinct random members
    /// (all different from the target). Needs at least four members.
    pub fn rand_1_bin<R: Rng + ?Sized>(
        &self,
        target: usize,
        population: &[FloatSolution],
        bounds: &Bounds,
        rng: &mut R,
    ) -> Result<FloatSolution> {
        let n = population.len();
        if n < 4 {
            return Err(Error::Argument(format!(
                "DE/rand/1/bin needs at least 4 solutions, got {n}"
            )));
        }
        if target >= n {
            return Err(Error::Argument(format!("target index {target} out of range")));
        }
        let mut picks = [target; 3];
        for k in 0..3 {
            picks[k] = loop {
                let r = rng.gen_range(0..n);
                if r != target && !picks[..k].contains(&r) {
                    break r;
                }
            };
        }
        let [r1, r2, r3] = picks;
        self.trial(
            &population[target].variables,
            [
                &population[r1].variables,
                &population[r2].variables,
                &population[r3].variables,
            ],
            bounds,
            rng,
        )
    }

    /// Binomial crossover between `target` and `x_r1 + F (x_r2 - x_r3)`. One index, drawn
    /// uniformly, always takes the mutant value. Out-of-range values are clamped.
    pub fn trial<R: Rng + ?Sized>(
        &self,
        target: &[f64],
        donors: [&[f64]; 3],
        bounds: &Bounds,
        rng: &mut R,
    ) -> Result<FloatSolution> {
        bounds.check(target)?;
        for d in donors {
            bounds.check(d)?;
        }
        let n = target.len();
        let j_rand = rng.gen_range(0..n);
        let [x1, x2, x3] = donors;
        let variables = (0..n)
            .map(|j| {
                if rng.gen::<f64>() < self.cr || j == j_rand {
                    bounds.clamp(j, x1[j] + self.f * (x2[j] - x3[j]))
                } else {
                    target[j]
                }
            })
            .collect();
        Ok(FloatSolution::new(variables))
    }
}
