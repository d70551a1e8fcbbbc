use rand::Rng;

use super::observer::Observer;
use super::solution::{Bounds, FloatSolution};
use crate::error::{Error, Result};

/// A continuous optimization problem. All objectives are minimized; maximization problems
/// negate their objectives when they are defined.
///
/// `evaluate` must be deterministic for a fixed input (and, for dynamic problems, a fixed
/// time): the parallel evaluators rely on it.
pub trait Problem: Send + Sync {
    fn name(&self) -> &str;

    fn n_objectives(&self) -> usize;

    fn n_constraints(&self) -> usize {
        0
    }

    fn bounds(&self) -> &Bounds;

    fn n_vars(&self) -> usize {
        self.bounds().len()
    }

    /// Fills the objectives (and constraints, if any) of `solution`.
    fn evaluate(&self, solution: &mut FloatSolution) -> Result<()>;

    /// A new solution drawn uniformly at random inside the bounds, not yet evaluated.
    fn create_solution(&self, rng: &mut dyn rand::RngCore) -> FloatSolution {
        let bounds = self.bounds();
        let variables = (0..bounds.len())
            .map(|i| rng.gen_range(bounds.lower()[i]..=bounds.upper()[i]))
            .collect();
        FloatSolution::new(variables)
    }
}

/// A problem whose landscape changes over time. Changes are produced by an external
/// observable (typically a [`TimeCounter`](super::observer::TimeCounter)) that the problem is
/// registered with; the algorithm polls [`has_changed`](DynamicProblem::has_changed) and
/// acknowledges with [`clear_changed`](DynamicProblem::clear_changed).
pub trait DynamicProblem: Problem + Observer {
    fn has_changed(&self) -> bool;

    fn clear_changed(&self);
}

pub(crate) fn check_dimension(problem: &dyn Problem, solution: &FloatSolution) -> Result<()> {
    if solution.variables.len() != problem.n_vars() {
        return Err(Error::Argument(format!(
            "{} expects {} variables, got {}",
            problem.name(),
            problem.n_vars(),
            solution.variables.len()
        )));
    }
    Ok(())
}

/// Evaluates a single solution in place and returns it.
pub fn evaluated(problem: &dyn Problem, mut solution: FloatSolution) -> Result<FloatSolution> {
    problem.evaluate(&mut solution)?;
    Ok(solution)
}
