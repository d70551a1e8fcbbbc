//! Post-hoc p-value adjustment and critical distance.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use super::special::normal_cdf;
use super::ScoreMatrix;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Adjustment {
    BonferroniDunn,
    Holm,
    Holland,
    Finner,
    Hochberg,
    Li,
    /// Needs the number of algorithms in the all-vs-all family.
    Shaffer { k: usize },
}

impl Adjustment {
    pub fn name(&self) -> &'static str {
        match self {
            Adjustment::BonferroniDunn => "bonferroni_dunn",
            Adjustment::Holm => "holm",
            Adjustment::Holland => "holland",
            Adjustment::Finner => "finner",
            Adjustment::Hochberg => "hochberg",
            Adjustment::Li => "li",
            Adjustment::Shaffer { .. } => "shaffer",
        }
    }
}

impl fmt::Display for Adjustment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Adjustment {
    type Err = Error;

    /// Parses every method except `shaffer`, which needs `k`.
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s.to_ascii_lowercase().replace('-', "_").as_str() {
            "bonferroni_dunn" | "bonferroni" => Adjustment::BonferroniDunn,
            "holm" => Adjustment::Holm,
            "holland" => Adjustment::Holland,
            "finner" => Adjustment::Finner,
            "hochberg" => Adjustment::Hochberg,
            "li" => Adjustment::Li,
            _ => {
                return Err(Error::Lookup {
                    kind: "adjustment",
                    name: s.to_string(),
                })
            }
        })
    }
}

/// Adjusted p-values for an ascending list of raw p-values.
pub fn adjust_pvalues(p: &[f64], method: Adjustment) -> Result<Vec<f64>> {
    if let Some(bad) = p.iter().find(|v| !(0.0..=1.0).contains(*v)) {
        return Err(Error::Argument(format!("p-value {bad} outside [0, 1]")));
    }
    if p.windows(2).any(|w| w[1] < w[0]) {
        return Err(Error::Argument("p-values must be sorted ascending".into()));
    }
    let m = p.len();
    if m == 0 {
        return Ok(Vec::new());
    }
    let mf = m as f64;
    let step_down = |f: &dyn Fn(usize, f64) -> f64| -> Vec<f64> {
        let raw: Vec<f64> = p.iter().enumerate().map(|(i, &pi)| f(i, pi).min(1.0)).collect();
        running_max(&raw)
    };
    Ok(match method {
        Adjustment::BonferroniDunn => p.iter().map(|v| (v * mf).min(1.0)).collect(),
        Adjustment::Holm => step_down(&|i, pi| (mf - i as f64) * pi),
        Adjustment::Holland => step_down(&|i, pi| 1.0 - (1.0 - pi).powf(mf - i as f64)),
        Adjustment::Finner => step_down(&|i, pi| 1.0 - (1.0 - pi).powf(mf / (i as f64 + 1.0))),
        Adjustment::Hochberg => {
            let raw: Vec<f64> = p
                .iter()
                .enumerate()
                .map(|(i, &pi)| ((mf - i as f64) * pi).min(1.0))
                .collect();
            running_min_from_right(&raw)
        }
        Adjustment::Li => {
            let last = p[m - 1];
            p.iter()
                .map(|&pi| {
                    let d = pi + 1.0 - last;
                    if d <= 0.0 {
                        1.0
                    } else {
                        (pi / d).min(1.0)
                    }
                })
                .collect()
        }
        Adjustment::Shaffer { k } => {
            if k < 2 || k * (k - 1) / 2 != m {
                return Err(Error::Argument(format!(
                    "shaffer needs k(k-1)/2 p-values, got {m} for k = {k}"
                )));
            }
            let sets = shaffer_true_counts(k);
            step_down(&|i, pi| {
                let bound = m - i;
                let t = sets.iter().rev().find(|&&s| s <= bound).copied().unwrap_or(0);
                t as f64 * pi
            })
        }
    })
}

/// Cumulative maximum, the monotonicity step of step-down procedures.
pub fn running_max(p: &[f64]) -> Vec<f64> {
    let mut acc = f64::NEG_INFINITY;
    p.iter()
        .map(|&v| {
            acc = acc.max(v);
            acc
        })
        .collect()
}

/// Cumulative minimum from the right, the monotonicity step of step-up procedures.
pub fn running_min_from_right(p: &[f64]) -> Vec<f64> {
    let mut out = p.to_vec();
    for i in (0..out.len().saturating_sub(1)).rev() {
        out[i] = out[i].min(out[i + 1]);
    }
    out
}

/// Possible numbers of simultaneously true hypotheses among all `k(k-1)/2` pairwise ones.
pub fn shaffer_true_counts(k: usize) -> BTreeSet<usize> {
    let mut memo: Vec<BTreeSet<usize>> = vec![BTreeSet::from([0]); k.max(1) + 1];
    for n in 2..=k {
        let mut set = BTreeSet::new();
        for j in 1..=n {
            let head = j * (j - 1) / 2;
            for &rest in &memo[n - j] {
                set.insert(head + rest);
            }
        }
        memo[n] = set;
    }
    memo[k].clone()
}

/// Infinite-df Studentized range quantiles divided by `sqrt(2)`, for `k = 2..=10`.
const Q_005: [f64; 9] = [1.960, 2.343, 2.569, 2.728, 2.850, 2.949, 3.031, 3.102, 3.164];
const Q_010: [f64; 9] = [1.645, 2.052, 2.291, 2.459, 2.589, 2.693, 2.780, 2.855, 2.920];

/// Tabulated `q_alpha(k)` for `alpha` in {0.05, 0.10}.
pub fn nemenyi_q(k: usize, alpha: f64) -> Result<f64> {
    let table = if (alpha - 0.05).abs() < 1e-12 {
        &Q_005
    } else if (alpha - 0.10).abs() < 1e-12 {
        &Q_010
    } else {
        return Err(Error::Argument(format!("alpha {alpha} not tabulated (use 0.05 or 0.10)")));
    };
    if !(2..=10).contains(&k) {
        return Err(Error::UnsupportedDimension(format!(
            "critical distance tabulated for 2..=10 algorithms, got {k}"
        )));
    }
    Ok(table[k - 2])
}

/// `CD = q_alpha(k) * sqrt(k (k + 1) / (6 N))`.
pub fn critical_distance(k: usize, n: usize, alpha: f64) -> Result<f64> {
    let q = nemenyi_q(k, alpha)?;
    if n == 0 {
        return Err(Error::Argument("critical distance needs N >= 1".into()));
    }
    let (k, n) = (k as f64, n as f64);
    Ok(q * (k * (k + 1.0) / (6.0 * n)).sqrt())
}

#[derive(Debug, Clone, PartialEq)]
pub struct PairComparison {
    pub first: usize,
    pub second: usize,
    pub z: f64,
    pub p_value: f64,
    pub adjusted: f64,
}

/// Friedman-rank z tests, all pairs (`control = None`) or one-vs-control, with adjusted
/// p-values. Results are sorted by raw p-value.
pub fn friedman_posthoc(
    scores: &ScoreMatrix,
    control: Option<usize>,
    method: Adjustment,
) -> Result<Vec<PairComparison>> {
    let k = scores.n_algorithms();
    if let Some(c) = control {
        if c >= k {
            return Err(Error::Argument(format!("control index {c} out of range")));
        }
    }
    let ranks = scores.average_ranks();
    let se = (k as f64 * (k as f64 + 1.0) / (6.0 * scores.n_problems() as f64)).sqrt();
    let pairs: Vec<(usize, usize)> = match control {
        Some(c) => (0..k).filter(|&j| j != c).map(|j| (c, j)).collect(),
        None => (0..k).flat_map(|i| (i + 1..k).map(move |j| (i, j))).collect(),
    };
    let mut out: Vec<PairComparison> = pairs
        .into_iter()
        .map(|(i, j)| {
            let z = (ranks[i] - ranks[j]) / se;
            let p = (2.0 * (1.0 - normal_cdf(z.abs()))).clamp(0.0, 1.0);
            PairComparison {
                first: i,
                second: j,
                z,
                p_value: p,
                adjusted: p,
            }
        })
        .collect();
    out.sort_by(|a, b| a.p_value.total_cmp(&b.p_value));
    let raw: Vec<f64> = out.iter().map(|c| c.p_value).collect();
    let method = match (method, control) {
        (Adjustment::Shaffer { .. }, None) => Adjustment::Shaffer { k },
        (m, _) => m,
    };
    for (c, a) in out.iter_mut().zip(adjust_pvalues(&raw, method)?) {
        c.adjusted = a;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: &[f64], b: &[f64]) -> bool {
        a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x - y).abs() < 1e-12)
    }

    #[test]
    fn holm_and_bonferroni_examples() {
        let h = adjust_pvalues(&[0.01, 0.02, 0.04], Adjustment::Holm).unwrap();
        assert!(close(&h, &[0.03, 0.04, 0.04]), "{h:?}");
        let b = adjust_pvalues(&[0.01, 0.02], Adjustment::BonferroniDunn).unwrap();
        assert!(close(&b, &[0.02, 0.04]));
    }

    #[test]
    fn hochberg_steps_up() {
        let h = adjust_pvalues(&[0.01, 0.03, 0.04], Adjustment::Hochberg).unwrap();
        assert!(close(&h, &[0.03, 0.04, 0.04]), "{h:?}");
    }

    #[test]
    fn ones_stay_ones() {
        for m in [
            Adjustment::BonferroniDunn,
            Adjustment::Holm,
            Adjustment::Holland,
            Adjustment::Finner,
            Adjustment::Hochberg,
            Adjustment::Li,
            Adjustment::Shaffer { k: 3 },
        ] {
            assert_eq!(adjust_pvalues(&[1.0; 3], m).unwrap(), vec![1.0; 3], "{m}");
        }
    }

    #[test]
    fn rejects_unsorted_and_out_of_range() {
        assert!(matches!(
            adjust_pvalues(&[0.2, 0.1], Adjustment::Holm),
            Err(Error::Argument(_))
        ));
        assert!(adjust_pvalues(&[1.2], Adjustment::Holm).is_err());
        assert!(adjust_pvalues(&[0.1, 0.2], Adjustment::Shaffer { k: 3 }).is_err());
        assert!(adjust_pvalues(&[], Adjustment::Li).unwrap().is_empty());
    }

    #[test]
    fn shaffer_counts_for_small_families() {
        assert_eq!(shaffer_true_counts(3), BTreeSet::from([0, 1, 3]));
        assert_eq!(shaffer_true_counts(4), BTreeSet::from([0, 1, 2, 3, 6]));
        // with 4 algorithms, after the first rejection at most 3 hypotheses can be true
        let p = [0.01, 0.02, 0.03, 0.04, 0.05, 0.06];
        let s = adjust_pvalues(&p, Adjustment::Shaffer { k: 4 }).unwrap();
        assert!(close(&s, &[0.06, 0.06, 0.09, 0.12, 0.12, 0.12]), "{s:?}");
    }

    #[test]
    fn monotone_enforcement_is_idempotent_on_adjusted_output() {
        let p = [0.001, 0.01, 0.012, 0.2, 0.5];
        let holm = adjust_pvalues(&p, Adjustment::Holm).unwrap();
        assert!(holm.windows(2).all(|w| w[0] <= w[1]));
        assert_eq!(running_max(&holm), holm);
        let hoch = adjust_pvalues(&p, Adjustment::Hochberg).unwrap();
        assert!(hoch.windows(2).all(|w| w[0] <= w[1]));
        assert_eq!(running_min_from_right(&hoch), hoch);
    }

    #[test]
    fn critical_distance_table() {
        assert!((critical_distance(5, 5, 0.05).unwrap() - 2.728).abs() < 1e-9);
        for n in [1, 4, 25] {
            let cd = critical_distance(2, n, 0.05).unwrap();
            assert!((cd - 1.960 / (n as f64).sqrt()).abs() < 1e-12);
        }
        let a = critical_distance(6, 3, 0.10).unwrap();
        let b = critical_distance(6, 12, 0.10).unwrap();
        assert!((a / b - 2.0).abs() < 1e-12);
        assert!(matches!(critical_distance(11, 5, 0.05), Err(Error::UnsupportedDimension(_))));
        assert!(critical_distance(1, 5, 0.05).is_err());
        assert!(critical_distance(5, 5, 0.01).is_err());
    }

    #[test]
    fn posthoc_pairs_are_sorted_and_adjusted() {
        let m = ScoreMatrix::new(
            vec![
                vec![0.1, 0.2, 0.3],
                vec![1.0, 2.0, 3.0],
                vec![0.5, 0.7, 0.9],
                vec![4.0, 5.0, 6.0],
            ],
            false,
        )
        .unwrap();
        let all = friedman_posthoc(&m, None, Adjustment::Shaffer { k: 0 }).unwrap();
        assert_eq!(all.len(), 3);
        assert_eq!((all[0].first, all[0].second), (0, 2));
        assert!(all.iter().all(|c| c.adjusted >= c.p_value));
        let ctrl = friedman_posthoc(&m, Some(0), Adjustment::Holm).unwrap();
        assert_eq!(ctrl.len(), 2);
        assert!(ctrl.iter().all(|c| c.first == 0 && c.z < 0.0));
    }
}
