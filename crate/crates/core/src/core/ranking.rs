use super::comparator::{ComparisonResult, DominanceComparator};
use super::solution::{Solution, CROWDING_DISTANCE, RANK};
use crate::error::{Error, Result};

/// Fast non-dominated sorting.
///
/// Returns the fronts as lists of indices into `population` (each front in ascending index
/// order) and writes the front index of every solution under the `rank` attribute.
pub fn fast_nondominated_sort<V>(
    population: &mut [Solution<V>],
    comparator: &DominanceComparator,
) -> Result<Vec<Vec<usize>>> {
    let n = population.len();
    if n == 0 {
        return Ok(Vec::new());
    }
    let m = population[0].objectives.len();
    for s in population.iter() {
        s.ensure_evaluated()?;
        if s.objectives.len() != m {
            return Err(Error::dimension(m, s.objectives.len()));
        }
    }

    let mut dominated_by_count = vec![0usize; n];
    let mut dominates: Vec<Vec<usize>> = vec![Vec::new(); n];
    for p in 0..n {
        for q in (p + 1)..n {
            match comparator.compare(&population[p], &population[q])? {
                ComparisonResult::FirstWins => {
                    dominates[p].push(q);
                    dominated_by_count[q] += 1;
                }
                ComparisonResult::SecondWins => {
                    dominates[q].push(p);
                    dominated_by_count[p] += 1;
                }
                ComparisonResult::Indifferent => {}
            }
        }
    }

    let mut fronts = Vec::new();
    let mut current: Vec<usize> = (0..n).filter(|&i| dominated_by_count[i] == 0).collect();
    while !current.is_empty() {
        let mut next = Vec::new();
        for &p in &current {
            for &q in &dominates[p] {
                dominated_by_count[q] -= 1;
                if dominated_by_count[q] == 0 {
                    next.push(q);
                }
            }
        }
        next.sort_unstable();
        fronts.push(current);
        current = next;
    }

    for (rank, front) in fronts.iter().enumerate() {
        for &i in front {
            population[i].set_attribute(RANK, rank as f64);
        }
    }
    Ok(fronts)
}

/// Crowding distances of a set of objective vectors, in input order.
///
/// Boundary points of every objective get `+inf`; interior points accumulate the
/// normalized gap between their neighbours. An objective with zero range contributes 0.
/// Sets of at most two points are all `+inf`.
pub fn crowding_distances(points: &[&[f64]]) -> Vec<f64> {
    let n = points.len();
    if n <= 2 {
        return vec![f64::INFINITY; n];
    }
    let m = points[0].len();
    let mut distance = vec![0.0; n];
    let mut order: Vec<usize> = (0..n).collect();
    for k in 0..m {
        order.sort_by(|&a, &b| points[a][k].total_cmp(&points[b][k]));
        let min = points[order[0]][k];
        let max = points[order[n - 1]][k];
        distance[order[0]] = f64::INFINITY;
        distance[order[n - 1]] = f64::INFINITY;
        let range = max - min;
        if range == 0.0 {
            continue;
        }
        for w in 1..n - 1 {
            let i = order[w];
            distance[i] += (points[order[w + 1]][k] - points[order[w - 1]][k]) / range;
        }
    }
    distance
}

/// Writes the `crowding_distance` attribute for the solutions at `front` indices.
pub fn crowding_distance<V>(population: &mut [Solution<V>], front: &[usize]) {
    let points: Vec<&[f64]> = front
        .iter()
        .map(|&i| population[i].objectives.as_slice())
        .collect();
    let distances = crowding_distances(&points);
    for (&i, d) in front.iter().zip(distances) {
        population[i].set_attribute(CROWDING_DISTANCE, d);
    }
}

/// Ranks `population` and assigns crowding distances front by front.
pub fn assign_rank_and_crowding<V>(
    population: &mut [Solution<V>],
    comparator: &DominanceComparator,
) -> Result<Vec<Vec<usize>>> {
    let fronts = fast_nondominated_sort(population, comparator)?;
    for front in &fronts {
        crowding_distance(population, front);
    }
    Ok(fronts)
}

/// Environmental selection of NSGA-II: keeps `size` solutions filling whole fronts in rank
/// order and truncating the splitting front by descending crowding distance.
///
/// The retained solutions carry up-to-date `rank` and `crowding_distance` attributes.
pub fn ranking_and_crowding_selection<V>(
    mut population: Vec<Solution<V>>,
    size: usize,
    comparator: &DominanceComparator,
) -> Result<Vec<Solution<V>>> {
    if population.len() < size {
        return Err(Error::Argument(format!(
            "cannot select {size} solutions out of {}",
            population.len()
        )));
    }
    let fronts = assign_rank_and_crowding(&mut population, comparator)?;
    let mut keep = Vec::with_capacity(size);
    for front in fronts {
        if keep.len() + front.len() <= size {
            keep.extend(front);
        } else {
            let mut front = front;
            front.sort_by(|&a, &b| {
                let da = population[a].crowding_distance().unwrap_or(0.0);
                let db = population[b].crowding_distance().unwrap_or(0.0);
                db.total_cmp(&da)
            });
            let remaining = size - keep.len();
            keep.extend(front.into_iter().take(remaining));
        }
        if keep.len() == size {
            break;
        }
    }
    keep.sort_unstable();
    let mut slots: Vec<Option<Solution<V>>> = population.into_iter().map(Some).collect();
    Ok(keep
        .into_iter()
        .map(|i| slots[i].take().expect("index kept once"))
        .collect())
}

/// The non-dominated members of `solutions`, in input order.
pub fn nondominated<V: Clone>(
    solutions: &[Solution<V>],
    comparator: &DominanceComparator,
) -> Result<Vec<Solution<V>>> {
    let mut out = Vec::new();
    'outer: for (i, s) in solutions.iter().enumerate() {
        for (j, t) in solutions.iter().enumerate() {
            if i != j && comparator.compare(t, s)? == ComparisonResult::FirstWins {
                continue 'outer;
            }
        }
        out.push(s.clone());
    }
    Ok(out)
}
