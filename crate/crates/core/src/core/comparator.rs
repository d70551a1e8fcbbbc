use serde::{Deserialize, Serialize};

use super::solution::Solution;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ComparisonResult {
    FirstWins,
    SecondWins,
    Indifferent,
}

impl ComparisonResult {
    pub fn reverse(self) -> Self {
        match self {
            ComparisonResult::FirstWins => ComparisonResult::SecondWins,
            ComparisonResult::SecondWins => ComparisonResult::FirstWins,
            ComparisonResult::Indifferent => ComparisonResult::Indifferent,
        }
    }
}

/// Pareto dominance between two objective vectors (minimization).
pub fn compare_dominance(a: &[f64], b: &[f64]) -> Result<ComparisonResult> {
    if a.len() != b.len() {
        return Err(Error::dimension(a.len(), b.len()));
    }
    let mut a_better = false;
    let mut b_better = false;
    for (x, y) in a.iter().zip(b) {
        if x < y {
            a_better = true;
        } else if y < x {
            b_better = true;
        }
        if a_better && b_better {
            return Ok(ComparisonResult::Indifferent);
        }
    }
    Ok(match (a_better, b_better) {
        (true, false) => ComparisonResult::FirstWins,
        (false, true) => ComparisonResult::SecondWins,
        _ => ComparisonResult::Indifferent,
    })
}

/// `true` when `a` Pareto-dominates `b`. Panics on length mismatch; use
/// [`compare_dominance`] for checked comparisons.
pub fn dominates(a: &[f64], b: &[f64]) -> bool {
    assert_eq!(a.len(), b.len(), "objective vectors differ in length");
    let mut strict = false;
    for (x, y) in a.iter().zip(b) {
        if x > y {
            return false;
        }
        if x < y {
            strict = true;
        }
    }
    strict
}

/// Feasibility-first comparison: the solution with the smaller overall constraint violation
/// wins; ties (including two feasible solutions) fall back to Pareto dominance.
pub fn compare_constrained<V>(a: &Solution<V>, b: &Solution<V>) -> Result<ComparisonResult> {
    a.ensure_evaluated()?;
    b.ensure_evaluated()?;
    let va = a.overall_constraint_violation();
    let vb = b.overall_constraint_violation();
    if va > vb {
        Ok(ComparisonResult::FirstWins)
    } else if vb > va {
        Ok(ComparisonResult::SecondWins)
    } else {
        compare_dominance(&a.objectives, &b.objectives)
    }
}

/// A point in objective space delimiting a region of interest.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ReferencePoint(pub Vec<f64>);

impl ReferencePoint {
    pub fn new(coordinates: Vec<f64>) -> Self {
        ReferencePoint(coordinates)
    }

    pub fn coordinates(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// 1 when `y` lies entirely below or entirely above the reference point, 0 otherwise.
    pub fn flag(&self, y: &[f64]) -> Result<u8> {
        if y.len() != self.0.len() {
            return Err(Error::dimension(self.0.len(), y.len()));
        }
        let below = y.iter().zip(&self.0).all(|(v, g)| v <= g);
        let above = y.iter().zip(&self.0).all(|(v, g)| v >= g);
        Ok(u8::from(below || above))
    }
}

/// g-dominance: a solution flagged inside/outside the reference box beats a mixed one;
/// equal flags defer to Pareto dominance.
pub fn compare_g_dominance(
    a: &[f64],
    b: &[f64],
    reference: &ReferencePoint,
) -> Result<ComparisonResult> {
    let fa = reference.flag(a)?;
    let fb = reference.flag(b)?;
    match fa.cmp(&fb) {
        std::cmp::Ordering::Greater => Ok(ComparisonResult::FirstWins),
        std::cmp::Ordering::Less => Ok(ComparisonResult::SecondWins),
        std::cmp::Ordering::Equal => compare_dominance(a, b),
    }
}

/// The dominance relation an algorithm ranks its population with.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind", content = "reference_point")]
pub enum DominanceComparator {
    #[default]
    Pareto,
    Constrained,
    GDominance(ReferencePoint),
}

impl DominanceComparator {
    pub fn compare<V>(&self, a: &Solution<V>, b: &Solution<V>) -> Result<ComparisonResult> {
        match self {
            DominanceComparator::Pareto => compare_dominance(&a.objectives, &b.objectives),
            DominanceComparator::Constrained => compare_constrained(a, b),
            DominanceComparator::GDominance(g) => {
                compare_g_dominance(&a.objectives, &b.objectives, g)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::core::solution::FloatSolution;
    use proptest::prelude::*;
    use ComparisonResult::*;

    fn evaluated(obj: &[f64], cons: &[f64]) -> FloatSolution {
        let mut s = FloatSolution::with_objectives(vec![], obj.to_vec());
        s.constraints = cons.to_vec();
        s
    }

    #[test]
    fn dominance_examples() {
        assert_eq!(compare_dominance(&[1.0, 2.0], &[2.0, 3.0]).unwrap(), FirstWins);
        assert_eq!(compare_dominance(&[1.0, 2.0], &[1.0, 2.0]).unwrap(), Indifferent);
        assert_eq!(compare_dominance(&[1.0, 2.0], &[2.0, 1.0]).unwrap(), Indifferent);
        assert_eq!(compare_dominance(&[2.0, 3.0], &[1.0, 2.0]).unwrap(), SecondWins);
        assert!(matches!(
            compare_dominance(&[1.0], &[1.0, 2.0]),
            Err(Error::Dimension { .. })
        ));
    }

    #[test]
    fn constrained_examples() {
        let feasible = evaluated(&[5.0, 5.0], &[0.5]);
        let infeasible = evaluated(&[1.0, 1.0], &[-0.2]);
        assert_eq!(compare_constrained(&feasible, &infeasible).unwrap(), FirstWins);

        let a = evaluated(&[1.0, 2.0], &[]);
        let b = evaluated(&[2.0, 3.0], &[]);
        assert_eq!(
            compare_constrained(&a, &b).unwrap(),
            compare_dominance(&a.objectives, &b.objectives).unwrap()
        );

        let mild = evaluated(&[9.0, 9.0], &[-0.1]);
        let severe = evaluated(&[0.0, 0.0], &[-0.3]);
        assert_eq!(compare_constrained(&mild, &severe).unwrap(), FirstWins);
    }

    #[test]
    fn constrained_requires_evaluation() {
        let a = FloatSolution::new(vec![0.1]);
        let b = evaluated(&[1.0], &[]);
        assert!(matches!(compare_constrained(&a, &b), Err(Error::State(_))));
    }

    #[test]
    fn g_dominance_examples() {
        let g = ReferencePoint::new(vec![0.5, 0.5]);
        assert_eq!(compare_g_dominance(&[0.3, 0.4], &[0.6, 0.3], &g).unwrap(), FirstWins);
        assert_eq!(compare_g_dominance(&[0.6, 0.7], &[0.6, 0.3], &g).unwrap(), FirstWins);
        assert_eq!(compare_g_dominance(&[0.1, 0.1], &[0.2, 0.2], &g).unwrap(), FirstWins);
        assert!(compare_g_dominance(&[0.1], &[0.2, 0.2], &g).is_err());
    }

    fn small_vec(m: usize) -> impl Strategy<Value = Vec<f64>> {
        proptest::collection::vec((0i32..5).prop_map(f64::from), m)
    }

    proptest! {
        #[test]
        fn dominance_is_a_strict_partial_order(a in small_vec(3), b in small_vec(3), c in small_vec(3)) {
            prop_assert_eq!(compare_dominance(&a, &a).unwrap(), Indifferent);
            let ab = compare_dominance(&a, &b).unwrap();
            prop_assert_eq!(compare_dominance(&b, &a).unwrap(), ab.reverse());
            if ab == FirstWins && compare_dominance(&b, &c).unwrap() == FirstWins {
                prop_assert_eq!(compare_dominance(&a, &c).unwrap(), FirstWins);
            }
            prop_assert_eq!(dominates(&a, &b), ab == FirstWins);
        }

        #[test]
        fn g_dominance_is_antisymmetric(a in small_vec(2), b in small_vec(2), g in small_vec(2)) {
            let g = ReferencePoint::new(g);
            let ab = compare_g_dominance(&a, &b, &g).unwrap();
            prop_assert_eq!(compare_g_dominance(&b, &a, &g).unwrap(), ab.reverse());
        }

        #[test]
        fn g_dominance_with_dominated_reference_is_pareto(a in small_vec(2), b in small_vec(2)) {
            // every point with coordinates in [0,4] lies below (10,10): all flags are 1
            let g = ReferencePoint::new(vec![10.0, 10.0]);
            prop_assert_eq!(
                compare_g_dominance(&a, &b, &g).unwrap(),
                compare_dominance(&a, &b).unwrap()
            );
        }
    }
}
