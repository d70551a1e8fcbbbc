//! Foundational types shared by every algorithm: solutions, problems, comparators,
//! ranking and density estimation, termination criteria and observers.

pub mod comparator;
pub mod observer;
pub mod problem;
pub mod ranking;
pub mod solution;
pub mod termination;

pub use comparator::{
    compare_constrained, compare_dominance, compare_g_dominance, dominates, ComparisonResult,
    DominanceComparator, ReferencePoint,
};
pub use observer::{Event, Observable, Observer, ObserverError, ObserverId, TimeCounter};
pub use problem::{evaluated, DynamicProblem, Problem};
pub use ranking::{
    assign_rank_and_crowding, crowding_distance, crowding_distances, fast_nondominated_sort,
    nondominated, ranking_and_crowding_selection,
};
pub use solution::{Bounds, FloatSolution, Solution};
pub use termination::{
    StoppingByEvaluations, StoppingByQuality, StoppingByTime, TerminationCriterion,
};
