use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::core::{Bounds, FloatSolution};
use crate::error::Result;

/// Polynomial mutation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PolynomialMutation {
    pub probability: f64,
    pub distribution_index: f64,
}

impl PolynomialMutation {
    pub fn new(probability: f64, distribution_index: f64) -> Result<Self> {
        super::check_probability(probability)?;
        super::check_distribution_index(distribution_index)?;
        Ok(PolynomialMutation {
            probability,
            distribution_index,
        })
    }

    /// Probability `1/n_vars`, index 20.
    pub fn default_for(n_vars: usize) -> Self {
        PolynomialMutation {
            probability: 1.0 / n_vars.max(1) as f64,
            distribution_index: 20.0,
        }
    }

    /// Returns a mutated copy of `solution`; the input is left untouched.
    pub fn execute<R: Rng + ?Sized>(
        &self,
        solution: &FloatSolution,
        bounds: &Bounds,
        rng: &mut R,
    ) -> Result<FloatSolution> {
        bounds.check(&solution.variables)?;
        let mut child = solution.clone();
        self.mutate_in_place(&mut child.variables, bounds, rng);
        Ok(child)
    }

    pub(crate) fn mutate_in_place<R: Rng + ?Sized>(
        &self,
        variables: &mut [f64],
        bounds: &Bounds,
        rng: &mut R,
    ) {
        for (i, x) in variables.iter_mut().enumerate() {
            if rng.gen::<f64>() <= self.probability {
                let u = rng.gen::<f64>();
                *x = polynomial_perturbation(
                    *x,
                    bounds.lower()[i],
                    bounds.upper()[i],
                    u,
                    self.distribution_index,
                );
            }
        }
    }
}

/// Closed form of the bounded polynomial perturbation for a uniform draw `u`.
///
/// `u = 0.5` leaves the value unchanged; the result is clamped to `[lower, upper]`.
pub fn polynomial_perturbation(y: f64, lower: f64, upper: f64, u: f64, eta: f64) -> f64 {
    let range = upper - lower;
    if range <= 0.0 {
        return lower;
    }
    let delta1 = (y - lower) / range;
    let delta2 = (upper - y) / range;
    let mut_pow = 1.0 / (eta + 1.0);
    let deltaq = if u <= 0.5 {
        let xy = 1.0 - delta1;
        let val = 2.0 * u + (1.0 - 2.0 * u) * xy.powf(eta + 1.0);
        val.powf(mut_pow) - 1.0
    } else {
        let xy = 1.0 - delta2;
        let val = 2.0 * (1.0 - u) + 2.0 * (u - 0.5) * xy.powf(eta + 1.0);
        1.0 - val.powf(mut_pow)
    };
    (y + deltaq * range).clamp(lower, upper)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn zero_probability_is_identity() {
        let bounds = Bounds::uniform(5, 0.0, 1.0).unwrap();
        let s = FloatSolution::new(vec![0.1, 0.2, 0.3, 0.4, 0.5]);
        let m = PolynomialMutation::new(0.0, 20.0).unwrap();
        let out = m.execute(&s, &bounds, &mut ChaCha8Rng::seed_from_u64(1)).unwrap();
        assert_eq!(out.variables, s.variables);
    }

    #[test]
    fn midpoint_draw_leaves_value_unchanged() {
        assert_eq!(polynomial_perturbation(0.3, 0.0, 1.0, 0.5, 20.0), 0.3);
        assert_eq!(polynomial_perturbation(-2.0, -5.0, 5.0, 0.5, 5.0), -2.0);
    }

    #[test]
    fn perturbation_is_clamped() {
        // extreme draws push towards the bounds but never past them
        for &u in &[0.0, 1e-12, 1.0 - 1e-12, 1.0] {
            let y = polynomial_perturbation(0.999, 0.0, 1.0, u, 0.1);
            assert!((0.0..=1.0).contains(&y), "{y}");
        }
        assert_eq!(polynomial_perturbation(1.0, 0.0, 1.0, 1.0, 20.0), 1.0);
    }

    #[test]
    fn rejects_bad_config_and_bound_mismatch() {
        assert!(PolynomialMutation::new(1.5, 20.0).is_err());
        assert!(PolynomialMutation::new(0.5, 0.0).is_err());
        let m = PolynomialMutation::default_for(3);
        let bounds = Bounds::uniform(3, 0.0, 1.0).unwrap();
        let s = FloatSolution::new(vec![0.5; 2]);
        assert!(matches!(
            m.execute(&s, &bounds, &mut ChaCha8Rng::seed_from_u64(0)),
            Err(Error::Config(_))
        ));
    }
}
