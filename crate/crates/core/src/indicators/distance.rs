use super::Front;
use crate::error::{Error, Result};

/// Additive epsilon: the smallest shift that makes `front` weakly dominate every point of
/// `reference`.
pub fn additive_epsilon(front: &Front, reference: &Front) -> Result<f64> {
    front.check_same_dim(reference)?;
    let eps = reference
        .points()
        .iter()
        .map(|r| {
            front
                .points()
                .iter()
                .map(|a| {
                    a.iter()
                        .zip(r)
                        .map(|(ai, ri)| ai - ri)
                        .fold(f64::NEG_INFINITY, f64::max)
                })
                .fold(f64::INFINITY, f64::min)
        })
        .fold(f64::NEG_INFINITY, f64::max);
    Ok(eps)
}

fn euclidean(a: &[f64], r: &[f64]) -> f64 {
    a.iter().zip(r).map(|(x, y)| (x - y) * (x - y)).sum::<f64>().sqrt()
}

fn dominance_distance(a: &[f64], r: &[f64]) -> f64 {
    a.iter()
        .zip(r)
        .map(|(x, y)| (x - y).max(0.0).powi(2))
        .sum::<f64>()
        .sqrt()
}

fn mean_nearest(front: &Front, reference: &Front, d: fn(&[f64], &[f64]) -> f64) -> Result<f64> {
    front.check_same_dim(reference)?;
    let total: f64 = reference
        .points()
        .iter()
        .map(|r| {
            front
                .points()
                .iter()
                .map(|a| d(a, r))
                .fold(f64::INFINITY, f64::min)
        })
        .sum();
    Ok(total / reference.len() as f64)
}

/// Inverted generational distance: mean distance from each reference point to its nearest
/// front point.
pub fn igd(front: &Front, reference: &Front) -> Result<f64> {
    mean_nearest(front, reference, euclidean)
}

/// IGD+ with the distance `|max(a - r, 0)|`.
pub fn igd_plus(front: &Front, reference: &Front) -> Result<f64> {
    mean_nearest(front, reference, dominance_distance)
}

/// Deb's spread for two objectives. A zero denominator yields 0.
pub fn spread(front: &Front, reference: &Front) -> Result<f64> {
    if front.dim() != 2 || reference.dim() != 2 {
        return Err(Error::UnsupportedDimension(format!(
            "spread is defined for 2 objectives, got {}",
            front.dim()
        )));
    }
    if front.len() < 2 {
        return Err(Error::Argument(format!(
            "spread needs at least 2 points, got {}",
            front.len()
        )));
    }
    let mut pts: Vec<&[f64]> = front.points().iter().map(|p| p.as_slice()).collect();
    pts.sort_by(|a, b| a[0].total_cmp(&b[0]).then(a[1].total_cmp(&b[1])));
    let mut refs: Vec<&[f64]> = reference.points().iter().map(|p| p.as_slice()).collect();
    refs.sort_by(|a, b| a[0].total_cmp(&b[0]).then(a[1].total_cmp(&b[1])));

    let d_f = euclidean(pts[0], refs[0]);
    let d_l = euclidean(pts[pts.len() - 1], refs[refs.len() - 1]);
    let gaps: Vec<f64> = pts.windows(2).map(|w| euclidean(w[0], w[1])).collect();
    let mean = gaps.iter().sum::<f64>() / gaps.len() as f64;
    let dev: f64 = gaps.iter().map(|g| (g - mean).abs()).sum();
    let denominator = d_f + d_l + gaps.len() as f64 * mean;
    if denominator == 0.0 {
        return Ok(0.0);
    }
    Ok((d_f + d_l + dev) / denominator)
}
