use std::f64::consts::FRAC_PI_2;

use crate::core::problem::check_dimension;
use crate::core::{Bounds, FloatSolution, Problem};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DtlzVariant {
    Dtlz1,
    Dtlz2,
}

impl DtlzVariant {
    pub fn name(self) -> &'static str {
        match self {
            DtlzVariant::Dtlz1 => "DTLZ1",
            DtlzVariant::Dtlz2 => "DTLZ2",
        }
    }

    /// Size of the distance-variable block.
    pub fn default_k(self) -> usize {
        match self {
            DtlzVariant::Dtlz1 => 5,
            DtlzVariant::Dtlz2 => 10,
        }
    }
}

#[derive(Debug, Clone)]
pub struct Dtlz {
    variant: DtlzVariant,
    m: usize,
    name: String,
    bounds: Bounds,
}

impl Dtlz {
    pub fn new(variant: DtlzVariant, m: usize) -> Result<Self> {
        Dtlz::with_k(variant, m, variant.default_k())
    }

    pub fn with_k(variant: DtlzVariant, m: usize, k: usize) -> Result<Self> {
        if m < 2 || k < 1 {
            return Err(Error::Config(format!(
                "{} needs m >= 2 and k >= 1 (got m = {m}, k = {k})",
                variant.name()
            )));
        }
        Ok(Dtlz {
            variant,
            m,
            name: variant.name().to_string(),
            bounds: Bounds::uniform(m + k - 1, 0.0, 1.0)?,
        })
    }

    pub fn variant(&self) -> DtlzVariant {
        self.variant
    }

    pub fn objectives(&self, x: &[f64]) -> Vec<f64> {
        let m = self.m;
        let (head, tail) = x.split_at(m - 1);
        match self.variant {
            DtlzVariant::Dtlz1 => {
                let k = tail.len() as f64;
                let g = 100.0
                    * (k + tail
                        .iter()
                        .map(|v| {
                            let d = v - 0.5;
                            d * d - (20.0 * std::f64::consts::PI * d).cos()
                        })
                        .sum::<f64>());
                (0..m)
                    .map(|i| {
                        let mut f = 0.5 * (1.0 + g);
                        f *= head[..m - 1 - i].iter().product::<f64>();
                        if i > 0 {
                            f *= 1.0 - head[m - 1 - i];
                        }
                        f
                    })
                    .collect()
            }
            DtlzVariant::Dtlz2 => {
                let g: f64 = tail.iter().map(|v| (v - 0.5) * (v - 0.5)).sum();
                (0..m)
                    .map(|i| {
                        let mut f = 1.0 + g;
                        f *= head[..m - 1 - i]
                            .iter()
                            .map(|v| (v * FRAC_PI_2).cos())
                            .product::<f64>();
                        if i > 0 {
                            f *= (head[m - 1 - i] * FRAC_PI_2).sin();
                        }
                        f
                    })
                    .collect()
            }
        }
    }

    /// Exactly `resolution` points of the analytical front. Two objectives are sampled on a
    /// uniform grid; more objectives use a simplex lattice thinned evenly to the requested
    /// size. DTLZ1 points lie on the plane `sum f = 0.5`, DTLZ2 points on the unit sphere.
    pub fn reference_front(&self, resolution: usize) -> Vec<Vec<f64>> {
        let weights = if self.m == 2 {
            super::zdt::grid(0.0, 1.0, resolution)
                .into_iter()
                .map(|t| vec![1.0 - t, t])
                .collect()
        } else {
            let mut h = 1;
            while lattice_size(self.m, h) < resolution {
                h += 1;
            }
            thin(simplex_lattice(self.m, h), resolution)
        };
        weights
            .into_iter()
            .map(|w| match self.variant {
                DtlzVariant::Dtlz1 => w.iter().map(|v| 0.5 * v).collect(),
                DtlzVariant::Dtlz2 => {
                    if self.m == 2 {
                        // angle parametrisation gives evenly spaced arcs
                        let a = w[1] * FRAC_PI_2;
                        vec![a.cos(), a.sin()]
                    } else {
                        let norm = w.iter().map(|v| v * v).sum::<f64>().sqrt();
                        w.iter().map(|v| v / norm).collect()
                    }
                }
            })
            .collect()
    }
}

/// Number of points in the simplex lattice with `h` divisions in `m` dimensions.
pub fn lattice_size(m: usize, h: usize) -> usize {
    // C(h + m - 1, m - 1)
    let mut c: u128 = 1;
    for i in 0..(m - 1) as u128 {
        c = c * (h as u128 + 1 + i) / (i + 1);
    }
    c.min(usize::MAX as u128) as usize
}

/// All vectors of `m` non-negative multiples of `1/h` summing to one, in lexicographic order
/// of their integer numerators (first coordinate descending).
pub fn simplex_lattice(m: usize, h: usize) -> Vec<Vec<f64>> {
    fn rec(m: usize, left: usize, h: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<f64>>) {
        if prefix.len() == m - 1 {
            prefix.push(left);
            out.push(prefix.iter().map(|&v| v as f64 / h as f64).collect());
            prefix.pop();
            return;
        }
        for v in (0..=left).rev() {
            prefix.push(v);
            rec(m, left - v, h, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::with_capacity(lattice_size(m, h));
    if h == 0 {
        return out;
    }
    rec(m, h, h, &mut Vec::with_capacity(m), &mut out);
    out
}

fn thin(points: Vec<Vec<f64>>, n: usize) -> Vec<Vec<f64>> {
    let total = points.len();
    if n >= total {
        return points;
    }
    if n == 1 {
        return vec![points[0].clone()];
    }
    (0..n)
        .map(|i| points[i * (total - 1) / (n - 1)].clone())
        .collect()
}

impl Problem for Dtlz {
    fn name(&self) -> &str {
        &self.name
    }

    fn n_objectives(&self) -> usize {
        self.m
    }

    fn bounds(&self) -> &Bounds {
        &self.bounds
    }

    fn evaluate(&self, solution: &mut FloatSolution) -> Result<()> {
        check_dimension(self, solution)?;
        solution.objectives = self.objectives(&solution.variables);
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn dtlz1_front_identity() {
        let p = Dtlz::new(DtlzVariant::Dtlz1, 3).unwrap();
        let mut x = vec![0.5; p.n_vars()];
        x[0] = 0.3;
        x[1] = 0.8;
        let f = p.objectives(&x);
        assert!((f.iter().sum::<f64>() - 0.5).abs() < 1e-12);
    }

    #[test]
    fn dtlz2_sphere_identity_and_corner() {
        let p = Dtlz::new(DtlzVariant::Dtlz2, 3).unwrap();
        let mut x = vec![0.5; p.n_vars()];
        x[0] = 0.1;
        x[1] = 0.7;
        let f = p.objectives(&x);
        assert!((f.iter().map(|v| v * v).sum::<f64>() - 1.0).abs() < 1e-12);
        let p2 = Dtlz::new(DtlzVariant::Dtlz2, 2).unwrap();
        let mut x = vec![0.5; p2.n_vars()];
        x[0] = 0.0;
        assert_eq!(p2.objectives(&x), vec![1.0, 0.0]);
        assert_eq!(p2.n_vars(), 11);
    }

    #[test]
    fn lattice_counts() {
        assert_eq!(lattice_size(3, 12), 91);
        assert_eq!(simplex_lattice(3, 12).len(), 91);
        assert_eq!(simplex_lattice(2, 4).len(), 5);
        for w in simplex_lattice(4, 5) {
            assert!((w.iter().sum::<f64>() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn reference_fronts() {
        let p = Dtlz::new(DtlzVariant::Dtlz2, 3).unwrap();
        let f = p.reference_front(10_000);
        assert_eq!(f.len(), 10_000);
        for q in &f {
            assert!((q.iter().map(|v| v * v).sum::<f64>() - 1.0).abs() < 1e-9);
        }
        let f1 = Dtlz::new(DtlzVariant::Dtlz1, 3).unwrap().reference_front(1);
        assert_eq!(f1, vec![vec![0.5, 0.0, 0.0]]);
        let two = Dtlz::new(DtlzVariant::Dtlz1, 2).unwrap().reference_front(3);
        assert_eq!(two, vec![vec![0.5, 0.0], vec![0.25, 0.25], vec![0.0, 0.5]]);
    }

    proptest! {
        #[test]
        fn optimal_tail_gives_optimal_g(head in prop::collection::vec(0.0f64..=1.0, 4)) {
            for v in [DtlzVariant::Dtlz1, DtlzVariant::Dtlz2] {
                let p = Dtlz::new(v, 5).unwrap();
                let mut x = head.clone();
                x.extend(std::iter::repeat(0.5).take(p.n_vars() - 4));
                let f = p.objectives(&x);
                match v {
                    DtlzVariant::Dtlz1 => prop_assert!((f.iter().sum::<f64>() - 0.5).abs() < 1e-9),
                    DtlzVariant::Dtlz2 => prop_assert!((f.iter().map(|a| a * a).sum::<f64>() - 1.0).abs() < 1e-9),
                }
            }
        }
    }
}
