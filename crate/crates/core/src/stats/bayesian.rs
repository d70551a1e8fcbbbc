//! Bayesian sign and signed-rank tests with a region of practical equivalence.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Gamma};

use crate::error::{Error, Result};

pub const DEFAULT_ROPE: f64 = 0.002;
pub const DEFAULT_SAMPLES: usize = 50_000;
pub const MIN_SAMPLES: usize = 1000;

/// Where the prior pseudo-observation sits.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PriorLocation {
    Left,
    Rope,
    Right,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BayesianConfig {
    pub rope: f64,
    pub prior_strength: f64,
    pub prior: PriorLocation,
    pub samples: usize,
    pub seed: u64,
}

impl Default for BayesianConfig {
    fn default() -> Self {
        BayesianConfig {
            rope: DEFAULT_ROPE,
            prior_strength: 1.0,
            prior: PriorLocation::Rope,
            samples: DEFAULT_SAMPLES,
            seed: 0,
        }
    }
}

impl BayesianConfig {
    fn validate(&self) -> Result<()> {
        if !(self.rope >= 0.0) {
            return Err(Error::Argument(format!("rope {} must be >= 0", self.rope)));
        }
        if !(self.prior_strength >= 0.0) {
            return Err(Error::Argument(format!(
                "prior strength {} must be >= 0",
                self.prior_strength
            )));
        }
        if self.samples < MIN_SAMPLES {
            return Err(Error::Argument(format!(
                "at least {MIN_SAMPLES} posterior samples required, got {}",
                self.samples
            )));
        }
        Ok(())
    }
}

/// Region probabilities; they sum to 1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PosteriorTriple {
    pub p_left: f64,
    pub p_rope: f64,
    pub p_right: f64,
    pub rope: f64,
}

impl PosteriorTriple {
    fn from_counts(counts: [usize; 3], rope: f64) -> Self {
        let n = (counts[0] + counts[1] + counts[2]) as f64;
        let p_left = counts[0] as f64 / n;
        let p_rope = counts[1] as f64 / n;
        PosteriorTriple {
            p_left,
            p_rope,
            p_right: 1.0 - (p_left + p_rope),
            rope,
        }
    }
}

/// Posterior summary plus the raw `(theta_left, theta_rope, theta_right)` draws.
#[derive(Debug, Clone, PartialEq)]
pub struct BayesianOutcome {
    pub triple: PosteriorTriple,
    pub draws: Vec<[f64; 3]>,
    pub seed: u64,
}

/// 0 = left, 1 = rope, 2 = right. Ties go to the rope, then to the left.
fn region(theta: &[f64; 3]) -> usize {
    if theta[1] >= theta[0] && theta[1] >= theta[2] {
        1
    } else if theta[0] >= theta[2] {
        0
    } else {
        2
    }
}

/// Dirichlet draw; zero concentrations give zero components.
fn dirichlet(gammas: &[Option<Gamma<f64>>], rng: &mut ChaCha8Rng, out: &mut [f64]) {
    let mut total = 0.0;
    for (o, g) in out.iter_mut().zip(gammas) {
        *o = g.as_ref().map_or(0.0, |g| g.sample(rng));
        total += *o;
    }
    if total > 0.0 {
        for o in out.iter_mut() {
            *o /= total;
        }
    }
}

fn gammas(alphas: &[f64]) -> Result<Vec<Option<Gamma<f64>>>> {
    alphas
        .iter()
        .map(|&a| {
            if a > 0.0 {
                Gamma::new(a, 1.0)
                    .map(Some)
                    .map_err(|e| Error::Argument(format!("gamma shape {a}: {e}")))
            } else {
                Ok(None)
            }
        })
        .collect()
}

/// Bayesian sign test on paired differences `z` (negative values favour the left).
pub fn bayesian_sign_test(z: &[f64], config: &BayesianConfig) -> Result<BayesianOutcome> {
    config.validate()?;
    if z.is_empty() {
        return Err(Error::Argument("Bayesian sign test needs at least one difference".into()));
    }
    let r = config.rope;
    let mut alphas = [
        z.iter().filter(|&&v| v < -r).count() as f64,
        z.iter().filter(|&&v| v.abs() <= r).count() as f64,
        z.iter().filter(|&&v| v > r).count() as f64,
    ];
    let slot = match config.prior {
        PriorLocation::Left => 0,
        PriorLocation::Rope => 1,
        PriorLocation::Right => 2,
    };
    alphas[slot] += config.prior_strength;
    let g = gammas(&alphas)?;
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut counts = [0usize; 3];
    let mut draws = Vec::with_capacity(config.samples);
    for _ in 0..config.samples {
        let mut theta = [0.0; 3];
        dirichlet(&g, &mut rng, &mut theta);
        counts[region(&theta)] += 1;
        draws.push(theta);
    }
    Ok(BayesianOutcome {
        triple: PosteriorTriple::from_counts(counts, r),
        draws,
        seed: config.seed,
    })
}

/// Bayesian signed-rank test: Dirichlet weights over `z` plus one pseudo-observation at
/// the prior location, classifying the weighted pairwise means `(z_i + z_j) / 2`.
pub fn bayesian_signed_rank_test(z: &[f64], config: &BayesianConfig) -> Result<BayesianOutcome> {
    config.validate()?;
    if z.is_empty() {
        return Err(Error::Argument(
            "Bayesian signed-rank test needs at least one difference".into(),
        ));
    }
    let r = config.rope;
    let pseudo = match config.prior {
        PriorLocation::Left => f64::NEG_INFINITY,
        PriorLocation::Rope => 0.0,
        PriorLocation::Right => f64::INFINITY,
    };
    let mut values = vec![pseudo];
    values.extend_from_slice(z);
    let mut alphas = vec![1.0; values.len()];
    alphas[0] = config.prior_strength;
    // sort once; per observation the partners falling left / right are index prefixes / suffixes
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
    let sorted: Vec<f64> = order.iter().map(|&i| values[i]).collect();
    let sorted_alphas: Vec<f64> = order.iter().map(|&i| alphas[i]).collect();
    let below: Vec<usize> = sorted
        .iter()
        .map(|&zi| sorted.partition_point(|&zj| zi + zj < -2.0 * r))
        .collect();
    let above: Vec<usize> = sorted
        .iter()
        .map(|&zi| sorted.partition_point(|&zj| zi + zj <= 2.0 * r))
        .collect();
    let g = gammas(&sorted_alphas)?;
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut w = vec![0.0; sorted.len()];
    let mut prefix = vec![0.0; sorted.len() + 1];
    let mut counts = [0usize; 3];
    let mut draws = Vec::with_capacity(config.samples);
    for _ in 0..config.samples {
        dirichlet(&g, &mut rng, &mut w);
        for (i, wi) in w.iter().enumerate() {
            prefix[i + 1] = prefix[i] + wi;
        }
        let total = prefix[w.len()];
        let (mut left, mut right) = (0.0, 0.0);
        for (i, wi) in w.iter().enumerate() {
            left += wi * prefix[below[i]];
            right += wi * (total - prefix[above[i]]);
        }
        let theta = [left, (total * total - left - right).max(0.0), right];
        counts[region(&theta)] += 1;
        draws.push(theta);
    }
    Ok(BayesianOutcome {
        triple: PosteriorTriple::from_counts(counts, r),
        draws,
        seed: config.seed,
    })
}

/// Embeds probability triples in the plane: left `(0, 0)`, right `(1, 0)`,
/// rope `(0.5, sqrt(3)/2)`.
pub fn posterior_barycentric_points(draws: &[[f64; 3]]) -> Vec<[f64; 2]> {
    let h = 3.0f64.sqrt() / 2.0;
    draws
        .iter()
        .map(|&[_, rope, right]| [right + 0.5 * rope, h * rope])
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(seed: u64) -> BayesianConfig {
        BayesianConfig {
            seed,
            ..BayesianConfig::default()
        }
    }

    #[test]
    fn clear_left_winner() {
        let z = vec![-0.02; 25];
        let out = bayesian_sign_test(&z, &cfg(7)).unwrap();
        let t = out.triple;
        assert!(t.p_left >= 0.95, "{t:?}");
        assert_eq!(t.p_left + t.p_rope + t.p_right, 1.0);
        assert_eq!(out.draws.len(), DEFAULT_SAMPLES);
        let sr = bayesian_signed_rank_test(&z, &cfg(7)).unwrap().triple;
        assert!(sr.p_left >= 0.95, "{sr:?}");
    }

    #[test]
    fn clear_right_winner_signed_rank() {
        let z: Vec<f64> = (0..20).map(|i| 0.05 + i as f64 * 0.01).collect();
        let t = bayesian_signed_rank_test(&z, &cfg(3)).unwrap().triple;
        assert!(t.p_right >= 0.95, "{t:?}");
        assert_eq!(t.p_left + t.p_rope + t.p_right, 1.0);
    }

    #[test]
    fn mirrored_data_is_balanced() {
        let half: Vec<f64> = (1..=15).map(|i| i as f64 * 0.01).collect();
        let z: Vec<f64> = half.iter().flat_map(|&v| [v, -v]).collect();
        for out in [
            bayesian_sign_test(&z, &cfg(11)).unwrap(),
            bayesian_signed_rank_test(&z, &cfg(11)).unwrap(),
        ] {
            let t = out.triple;
            assert!((t.p_left - t.p_right).abs() <= 0.03, "{t:?}");
        }
    }

    #[test]
    fn rejects_bad_arguments() {
        let z = [0.1, -0.2];
        let mut c = cfg(0);
        c.rope = -0.1;
        assert!(matches!(bayesian_sign_test(&z, &c), Err(Error::Argument(_))));
        let mut c = cfg(0);
        c.samples = 10;
        assert!(bayesian_signed_rank_test(&z, &c).is_err());
        assert!(bayesian_sign_test(&[], &cfg(0)).is_err());
    }

    #[test]
    fn draws_are_reproducible_per_seed() {
        let z = [0.01, -0.03, 0.002, 0.05, -0.001];
        let a = bayesian_sign_test(&z, &cfg(5)).unwrap();
        let b = bayesian_sign_test(&z, &cfg(5)).unwrap();
        assert_eq!(a, b);
        for d in &a.draws {
            assert!((d.iter().sum::<f64>() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn stronger_rope_prior_never_lowers_rope_probability() {
        // three Monte Carlo standard errors of slack at 50k draws
        let slack = 3.0 * (0.25f64 / DEFAULT_SAMPLES as f64).sqrt();
        let data = [
            vec![0.01, -0.01, 0.02, 0.001, -0.0015, 0.0],
            vec![-0.02; 6],
            vec![0.0005, 0.003, -0.004, 0.01],
        ];
        for (i, z) in data.iter().enumerate() {
            for test in [bayesian_sign_test, bayesian_signed_rank_test] {
                let mut last = -1.0;
                for s in [0.0, 0.5, 1.0, 2.0, 5.0, 10.0] {
                    let c = BayesianConfig {
                        prior_strength: s,
                        seed: 100 + i as u64,
                        ..BayesianConfig::default()
                    };
                    let p = test(z, &c).unwrap().triple.p_rope;
                    assert!(p + slack >= last, "data {i}, s = {s}: {p} < {last}");
                    last = p;
                }
            }
        }
    }

    #[test]
    fn barycentric_vertices_and_centroid() {
        let pts = posterior_barycentric_points(&[
            [1.0, 0.0, 0.0],
            [0.0, 0.0, 1.0],
            [0.0, 1.0, 0.0],
            [1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0],
        ]);
        let h = 3.0f64.sqrt() / 2.0;
        assert_eq!(pts[0], [0.0, 0.0]);
        assert_eq!(pts[1], [1.0, 0.0]);
        assert_eq!(pts[2], [0.5, h]);
        assert!((pts[3][0] - 0.5).abs() < 1e-12 && (pts[3][1] - h / 3.0).abs() < 1e-12);
    }
}
