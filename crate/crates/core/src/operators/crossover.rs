use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::core::{Bounds, FloatSolution};
use crate::error::Result;

/// Simulated binary crossover.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SbxCrossover {
    pub probability: f64,
    pub distribution_index: f64,
}

impl Default for SbxCrossover {
    fn default() -> Self {
        SbxCrossover {
            probability: 0.9,
            distribution_index: 20.0,
        }
    }
}

impl SbxCrossover {
    pub fn new(probability: f64, distribution_index: f64) -> Result<Self> {
        super::check_probability(probability)?;
        super::check_distribution_index(distribution_index)?;
        Ok(SbxCrossover {
            probability,
            distribution_index,
        })
    }

    /// Produces two children. With probability `1 - probability` they are plain copies of
    /// the parents. Otherwise each differing variable is recombined with probability 0.5 using a
    /// spread factor drawn from the SBX distribution, clamped to the bounds, and the two child
    /// values are exchanged with probability 0.5.
    pub fn execute<R: Rng + ?Sized>(
        &self,
        parents: (&FloatSolution, &FloatSolution),
        bounds: &Bounds,
        rng: &mut R,
    ) -> Result<(FloatSolution, FloatSolution)> {
        let (p1, p2) = parents;
        bounds.check(&p1.variables)?;
        bounds.check(&p2.variables)?;
        let mut c1 = FloatSolution::new(p1.variables.clone());
        let mut c2 = FloatSolution::new(p2.variables.clone());
        if rng.gen::<f64>() > self.probability {
            return Ok((c1, c2));
        }
        for i in 0..bounds.len() {
            if rng.gen::<f64>() > 0.5 {
                continue;
            }
            if (p1.variables[i] - p2.variables[i]).abs() <= 1e-14 {
                continue;
            }
            let u = rng.gen::<f64>();
            let beta = sbx_spread_factor(u, self.distribution_index);
            let (a, b) = sbx_pair(p1.variables[i], p2.variables[i], beta);
            let (a, b) = (bounds.clamp(i, a), bounds.clamp(i, b));
            let (a, b) = if rng.gen::<bool>() { (b, a) } else { (a, b) };
            c1.variables[i] = a;
            c2.variables[i] = b;
        }
        Ok((c1, c2))
    }
}

/// Spread factor for a uniform draw `u` in `[0, 1)`; equals 1 at `u = 0.5`.
pub fn sbx_spread_factor(u: f64, eta: f64) -> f64 {
    let exponent = 1.0 / (eta + 1.0);
    if u <= 0.5 {
        (2.0 * u).powf(exponent)
    } else {
        (1.0 / (2.0 * (1.0 - u))).powf(exponent)
    }
}

/// Children values for a given spread factor; their mean equals the parents' mean.
pub fn sbx_pair(x1: f64, x2: f64, beta: f64) -> (f64, f64) {
    (
        0.5 * ((1.0 + beta) * x1 + (1.0 - beta) * x2),
        0.5 * ((1.0 - beta) * x1 + (1.0 + beta) * x2),
    )
}
