//! Variation and selection operators for real-coded solutions.
//!
//! Every operator takes its random stream explicitly and never mutates its inputs.

pub mod crossover;
pub mod differential;
pub mod mutation;
pub mod selection;

pub use crossover::SbxCrossover;
pub use differential::DifferentialEvolution;
pub use mutation::PolynomialMutation;
pub use selection::{binary_tournament, crowding, rank_and_crowding};

use crate::error::{Error, Result};

pub(crate) fn check_probability(p: f64) -> Result<()> {
    if (0.0..=1.0).contains(&p) {
        Ok(())
    } else {
        Err(Error::Config(format!("probability {p} outside [0, 1]")))
    }
}

pub(crate) fn check_distribution_index(eta: f64) -> Result<()> {
    if eta > 0.0 && eta.is_finite() {
        Ok(())
    } else {
        Err(Error::Config(format!("distribution index {eta} must be positive")))
    }
}
