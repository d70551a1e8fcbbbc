//! Rank-based null-hypothesis tests.

use super::ranks::{average_ranks, tie_groups};
use super::special::{binomial_half_cdf, chi2_sf, f_sf, ln_gamma, normal_cdf};
use super::{ScoreMatrix, TestReport};
use crate::error::{Error, Result};

/// Largest pooled sample size handled by exact enumeration.
pub const EXACT_RANK_SUM_LIMIT: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Alternative {
    TwoSided,
    /// `x` tends to be smaller than `y`.
    Less,
    /// `x` tends to be larger than `y`.
    Greater,
}

/// Two-sided Wilcoxon rank-sum (Mann-Whitney) test on independent samples.
pub fn wilcoxon_rank_sum(x: &[f64], y: &[f64]) -> Result<TestReport> {
    wilcoxon_rank_sum_with(x, y, Alternative::TwoSided)
}

/// Rank-sum test with a chosen alternative. The statistic is the rank sum of `x`.
///
/// Exact when `x.len() + y.len() <= 20` (midranks included), otherwise the normal
/// approximation with tie and continuity correction.
pub fn wilcoxon_rank_sum_with(x: &[f64], y: &[f64], alternative: Alternative) -> Result<TestReport> {
    if x.is_empty() || y.is_empty() {
        return Err(Error::Argument("rank-sum test needs two non-empty samples".into()));
    }
    let pooled: Vec<f64> = x.iter().chain(y).copied().collect();
    let ranks = average_ranks(&pooled);
    let (n1, n) = (x.len(), pooled.len());
    let w: f64 = ranks[..n1].iter().sum();
    let p = if n <= EXACT_RANK_SUM_LIMIT {
        exact_rank_sum_p(&ranks, n1, w, alternative)
    } else {
        approx_rank_sum_p(&pooled, n1, w, alternative)
    };
    Ok(TestReport::new("Wilcoxon rank-sum", w, p))
}

fn exact_rank_sum_p(ranks: &[f64], n1: usize, w: f64, alternative: Alternative) -> f64 {
    // doubled midranks are integers
    let doubled: Vec<usize> = ranks.iter().map(|r| (2.0 * r).round() as usize).collect();
    let max_sum: usize = doubled.iter().sum();
    // counts[j][s]: subsets of size j with doubled sum s
    let mut counts = vec![vec![0.0f64; max_sum + 1]; n1 + 1];
    counts[0][0] = 1.0;
    for &d in &doubled {
        for j in (1..=n1).rev() {
            for s in (d..=max_sum).rev() {
                let prev = counts[j - 1][s - d];
                if prev > 0.0 {
                    counts[j][s] += prev;
                }
            }
        }
    }
    let total: f64 = counts[n1].iter().sum();
    let observed = (2.0 * w).round() as i64;
    let n = ranks.len() as i64;
    let center = n1 as i64 * (n + 1);
    let tail: f64 = counts[n1]
        .iter()
        .enumerate()
        .filter(|&(s, &c)| {
            c > 0.0 && {
                let s = s as i64;
                match alternative {
                    Alternative::TwoSided => (s - center).abs() >= (observed - center).abs(),
                    Alternative::Less => s <= observed,
                    Alternative::Greater => s >= observed,
                }
            }
        })
        .map(|(_, c)| c)
        .sum();
    (tail / total).clamp(0.0, 1.0)
}

fn approx_rank_sum_p(pooled: &[f64], n1: usize, w: f64, alternative: Alternative) -> f64 {
    let n = pooled.len() as f64;
    let (a, b) = (n1 as f64, n - n1 as f64);
    let u = w - a * (a + 1.0) / 2.0;
    let mean = a * b / 2.0;
    let ties: f64 = tie_groups(pooled)
        .iter()
        .map(|&t| {
            let t = t as f64;
            t * t * t - t
        })
        .sum();
    let var = a * b / 12.0 * ((n + 1.0) - ties / (n * (n - 1.0)));
    if var <= 0.0 {
        return 1.0;
    }
    let sd = var.sqrt();
    let p = match alternative {
        Alternative::TwoSided => {
            let z = ((u - mean).abs() - 0.5).max(0.0) / sd;
            2.0 * (1.0 - normal_cdf(z))
        }
        Alternative::Less => normal_cdf((u - mean + 0.5) / sd),
        Alternative::Greater => 1.0 - normal_cdf((u - mean - 0.5) / sd),
    };
    p.clamp(0.0, 1.0)
}

/// Two-sided sign test on paired differences; zeros are dropped.
pub fn sign_test(differences: &[f64]) -> Result<TestReport> {
    if differences.is_empty() {
        return Err(Error::Argument("sign test needs at least one difference".into()));
    }
    let pos = differences.iter().filter(|&&d| d > 0.0).count() as u64;
    let neg = differences.iter().filter(|&&d| d < 0.0).count() as u64;
    let n = pos + neg;
    let p = if n == 0 {
        1.0
    } else {
        (2.0 * binomial_half_cdf(pos.min(neg), n)).min(1.0)
    };
    Ok(TestReport::new("Sign", pos as f64, p))
}

/// Friedman test; the report carries the average ranks (1 = best).
pub fn friedman(scores: &ScoreMatrix) -> Result<TestReport> {
    scores.require_rows(2)?;
    let (n, k) = (scores.n_problems() as f64, scores.n_algorithms() as f64);
    let avg = scores.average_ranks();
    let centre = (k + 1.0) / 2.0;
    let stat = 12.0 * n / (k * (k + 1.0)) * avg.iter().map(|r| (r - centre).powi(2)).sum::<f64>();
    let p = chi2_sf(stat, k - 1.0);
    Ok(TestReport::new("Friedman", stat, p).with_ranks(avg))
}

/// Residuals (value minus problem mean, oriented so lower is better) ranked jointly.
pub fn aligned_ranks(scores: &ScoreMatrix) -> Vec<Vec<f64>> {
    let k = scores.n_algorithms();
    let residuals: Vec<f64> = scores
        .oriented_rows()
        .flat_map(|row| {
            let mean = row.iter().sum::<f64>() / row.len() as f64;
            row.into_iter().map(move |v| v - mean)
        })
        .collect();
    average_ranks(&residuals).chunks(k).map(|c| c.to_vec()).collect()
}

/// Friedman aligned-ranks test (Hodges-Lehmann alignment), chi-square with `k - 1` df.
pub fn friedman_aligned(scores: &ScoreMatrix) -> Result<TestReport> {
    scores.require_rows(2)?;
    let (n, k) = (scores.n_problems(), scores.n_algorithms());
    let ranks = aligned_ranks(scores);
    let col_sums: Vec<f64> = (0..k).map(|j| ranks.iter().map(|r| r[j]).sum()).collect();
    let row_sums: Vec<f64> = ranks.iter().map(|r| r.iter().sum()).collect();
    let (nf, kf) = (n as f64, k as f64);
    let kn = kf * nf;
    let numerator = (kf - 1.0)
        * (col_sums.iter().map(|r| r * r).sum::<f64>() - kf * nf * nf / 4.0 * (kn + 1.0).powi(2));
    let denominator =
        kn * (kn + 1.0) * (2.0 * kn + 1.0) / 6.0 - row_sums.iter().map(|r| r * r).sum::<f64>() / kf;
    let stat = if denominator.abs() < 1e-12 { 0.0 } else { (numerator / denominator).max(0.0) };
    let p = chi2_sf(stat, kf - 1.0);
    let avg = col_sums.iter().map(|s| s / nf).collect();
    Ok(TestReport::new("Friedman aligned ranks", stat, p).with_ranks(avg))
}

/// Quade test, F form with `(k - 1, (N - 1)(k - 1))` df. The report carries the average
/// weighted ranks (lower is better).
pub fn quade(scores: &ScoreMatrix) -> Result<TestReport> {
    scores.require_rows(2)?;
    let (n, k) = (scores.n_problems(), scores.n_algorithms());
    let (nf, kf) = (n as f64, k as f64);
    let rows: Vec<Vec<f64>> = scores.oriented_rows().collect();
    let within = scores.row_ranks();
    let ranges: Vec<f64> = rows
        .iter()
        .map(|r| {
            let max = r.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
            let min = r.iter().cloned().fold(f64::INFINITY, f64::min);
            max - min
        })
        .collect();
    let q = average_ranks(&ranges);
    let centre = (kf + 1.0) / 2.0;
    let s: Vec<Vec<f64>> = (0..n)
        .map(|i| within[i].iter().map(|r| q[i] * (r - centre)).collect())
        .collect();
    let a: f64 = s.iter().flatten().map(|v| v * v).sum();
    let col: Vec<f64> = (0..k).map(|j| s.iter().map(|r| r[j]).sum()).collect();
    let b = col.iter().map(|v| v * v).sum::<f64>() / nf;
    let weight_total = nf * (nf + 1.0) / 2.0;
    let weighted: Vec<f64> = (0..k)
        .map(|j| (0..n).map(|i| q[i] * within[i][j]).sum::<f64>() / weight_total)
        .collect();
    let (stat, p) = if a <= 1e-12 {
        (0.0, 1.0)
    } else if (a - b).abs() <= 1e-12 * a {
        // perfect agreement across problems: exact permutation probability
        let ln_fact_k = ln_gamma(kf + 1.0);
        (f64::INFINITY, (-(nf - 1.0) * ln_fact_k).exp())
    } else {
        let stat = (nf - 1.0) * b / (a - b);
        (stat, f_sf(stat, kf - 1.0, (nf - 1.0) * (kf - 1.0)))
    };
    Ok(TestReport::new("Quade", stat, p.clamp(0.0, 1.0)).with_ranks(weighted))
}
