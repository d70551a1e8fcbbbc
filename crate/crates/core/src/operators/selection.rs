use rand::Rng;

use crate::core::{ComparisonResult, Solution};
use crate::error::{Error, Result};

/// Binary tournament: draws two distinct members uniformly (the only member when the
/// population has one) and returns the comparator winner. Ties are broken by a fair coin.
pub fn binary_tournament<'a, V, R, F>(
    population: &'a [Solution<V>],
    mut compare: F,
    rng: &mut R,
) -> Result<&'a Solution<V>>
where
    R: Rng + ?Sized,
    F: FnMut(&Solution<V>, &Solution<V>) -> Result<ComparisonResult>,
{
    match population.len() {
        0 => Err(Error::Argument("tournament over an empty population".into())),
        1 => Ok(&population[0]),
        n => {
            let i = rng.gen_range(0..n);
            let mut j = rng.gen_range(0..n - 1);
            if j >= i {
                j += 1;
            }
            let (a, b) = (&population[i], &population[j]);
            Ok(match compare(a, b)? {
                ComparisonResult::FirstWins => a,
                ComparisonResult::SecondWins => b,
                ComparisonResult::Indifferent => {
                    if rng.gen::<bool>() {
                        a
                    } else {
                        b
                    }
                }
            })
        }
    }
}

/// Crowded comparison: lower `rank` wins, then larger `crowding_distance`.
pub fn rank_and_crowding<V>(a: &Solution<V>, b: &Solution<V>) -> Result<ComparisonResult> {
    let ra = a
        .rank()
        .ok_or_else(|| Error::State("solution has no rank attribute".into()))?;
    let rb = b
        .rank()
        .ok_or_else(|| Error::State("solution has no rank attribute".into()))?;
    if ra != rb {
        return Ok(if ra < rb {
            ComparisonResult::FirstWins
        } else {
            ComparisonResult::SecondWins
        });
    }
    crowding(a, b)
}

/// Larger `crowding_distance` wins.
pub fn crowding<V>(a: &Solution<V>, b: &Solution<V>) -> Result<ComparisonResult> {
    let da = a.crowding_distance().unwrap_or(0.0);
    let db = b.crowding_distance().unwrap_or(0.0);
    Ok(if da > db {
        ComparisonResult::FirstWins
    } else if db > da {
        ComparisonResult::SecondWins
    } else {
        ComparisonResult::Indifferent
    })
}
