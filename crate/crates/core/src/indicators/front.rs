use crate::core::Solution;
use crate::error::{Error, Result};

/// A non-empty list of objective vectors sharing one dimensionality.
#[derive(Debug, Clone, PartialEq)]
pub struct Front {
    points: Vec<Vec<f64>>,
}

impl Front {
    pub fn new(points: Vec<Vec<f64>>) -> Result<Self> {
        let first = points
            .first()
            .ok_or_else(|| Error::Argument("front is empty".into()))?;
        let m = first.len();
        if m == 0 {
            return Err(Error::Argument("front points have no objectives".into()));
        }
        if let Some(p) = points.iter().find(|p| p.len() != m) {
            return Err(Error::dimension(m, p.len()));
        }
        Ok(Front { points })
    }

    /// Objective vectors of evaluated solutions.
    pub fn from_solutions<V>(solutions: &[Solution<V>]) -> Result<Self> {
        if solutions.iter().any(|s| !s.is_evaluated()) {
            return Err(Error::State("front built from an unevaluated solution".into()));
        }
        Front::new(solutions.iter().map(|s| s.objectives.clone()).collect())
    }

    pub fn points(&self) -> &[Vec<f64>] {
        &self.points
    }

    pub fn into_points(self) -> Vec<Vec<f64>> {
        self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Number of objectives.
    pub fn dim(&self) -> usize {
        self.points[0].len()
    }

    pub fn ideal(&self) -> Vec<f64> {
        (0..self.dim())
            .map(|k| self.points.iter().map(|p| p[k]).fold(f64::INFINITY, f64::min))
            .collect()
    }

    pub fn nadir(&self) -> Vec<f64> {
        (0..self.dim())
            .map(|k| {
                self.points
                    .iter()
                    .map(|p| p[k])
                    .fold(f64::NEG_INFINITY, f64::max)
            })
            .collect()
    }

    pub(crate) fn check_same_dim(&self, other: &Front) -> Result<()> {
        if self.dim() != other.dim() {
            return Err(Error::dimension(other.dim(), self.dim()));
        }
        Ok(())
    }
}

/// Rescales `front` so that the ideal and nadir points of `reference` map to 0 and 1.
/// Objectives with a zero range in the reference are only shifted.
pub fn normalize(front: &Front, reference: &Front) -> Result<Front> {
    front.check_same_dim(reference)?;
    let lo = reference.ideal();
    let hi = reference.nadir();
    let points = front
        .points
        .iter()
        .map(|p| {
            p.iter()
                .enumerate()
                .map(|(k, &v)| {
                    let range = hi[k] - lo[k];
                    if range > 0.0 {
                        (v - lo[k]) / range
                    } else {
                        v - lo[k]
                    }
                })
                .collect()
        })
        .collect();
    Ok(Front { points })
}
