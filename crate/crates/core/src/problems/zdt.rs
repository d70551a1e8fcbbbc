use std::f64::consts::PI;

use crate::core::problem::check_dimension;
use crate::core::{Bounds, FloatSolution, Problem};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ZdtVariant {
    Zdt1,
    Zdt2,
    Zdt3,
    Zdt4,
    Zdt6,
}

impl ZdtVariant {
    pub fn name(self) -> &'static str {
        match self {
            ZdtVariant::Zdt1 => "ZDT1",
            ZdtVariant::Zdt2 => "ZDT2",
            ZdtVariant::Zdt3 => "ZDT3",
            ZdtVariant::Zdt4 => "ZDT4",
            ZdtVariant::Zdt6 => "ZDT6",
        }
    }

    pub fn default_n_vars(self) -> usize {
        match self {
            ZdtVariant::Zdt4 | ZdtVariant::Zdt6 => 10,
            _ => 30,
        }
    }
}

/// f1 intervals that make up the disconnected ZDT3 front.
pub const ZDT3_FRONT_INTERVALS: [(f64, f64); 5] = [
    (0.0, 0.0830015349),
    (0.1822287280, 0.2577623634),
    (0.4093136748, 0.4538821041),
    (0.6183967944, 0.6525117038),
    (0.8233317983, 0.8518328654),
];

/// Smallest f1 reachable on ZDT6.
pub const ZDT6_MIN_F1: f64 = 0.2807753191;

#[derive(Debug, Clone)]
pub struct Zdt {
    variant: ZdtVariant,
    bounds: Bounds,
}

impl Zdt {
    pub fn new(variant: ZdtVariant) -> Self {
        Zdt::with_n_vars(variant, variant.default_n_vars()).expect("default size is valid")
    }

    pub fn with_n_vars(variant: ZdtVariant, n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::Config(format!("{} needs at least 2 variables", variant.name())));
        }
        let bounds = match variant {
            ZdtVariant::Zdt4 => {
                let mut lower = vec![-5.0; n];
                let mut upper = vec![5.0; n];
                lower[0] = 0.0;
                upper[0] = 1.0;
                Bounds::new(lower, upper)?
            }
            _ => Bounds::uniform(n, 0.0, 1.0)?,
        };
        Ok(Zdt { variant, bounds })
    }

    pub fn variant(&self) -> ZdtVariant {
        self.variant
    }

    /// The objective vector for `x`.
    pub fn objectives(&self, x: &[f64]) -> [f64; 2] {
        let n = x.len() as f64;
        let tail = &x[1..];
        match self.variant {
            ZdtVariant::Zdt1 | ZdtVariant::Zdt2 | ZdtVariant::Zdt3 => {
                let f1 = x[0];
                let g = 1.0 + 9.0 * tail.iter().sum::<f64>() / (n - 1.0);
                let r = f1 / g;
                let h = match self.variant {
                    ZdtVariant::Zdt1 => 1.0 - r.sqrt(),
                    ZdtVariant::Zdt2 => 1.0 - r * r,
                    _ => 1.0 - r.sqrt() - r * (10.0 * PI * f1).sin(),
                };
                [f1, g * h]
            }
            ZdtVariant::Zdt4 => {
                let f1 = x[0];
                let g = 1.0
                    + 10.0 * (n - 1.0)
                    + tail
                        .iter()
                        .map(|v| v * v - 10.0 * (4.0 * PI * v).cos())
                        .sum::<f64>();
                [f1, g * (1.0 - (f1 / g).sqrt())]
            }
            ZdtVariant::Zdt6 => {
                let f1 = 1.0 - (-4.0 * x[0]).exp() * (6.0 * PI * x[0]).sin().powi(6);
                let g = 1.0 + 9.0 * (tail.iter().sum::<f64>() / (n - 1.0)).powf(0.25);
                [f1, g * (1.0 - (f1 / g).powi(2))]
            }
        }
    }

    /// `resolution` points of the analytical Pareto front, ordered by f1.
    pub fn reference_front(&self, resolution: usize) -> Vec<Vec<f64>> {
        let h = |f1: f64| -> f64 {
            match self.variant {
                ZdtVariant::Zdt1 | ZdtVariant::Zdt4 => 1.0 - f1.sqrt(),
                ZdtVariant::Zdt2 | ZdtVariant::Zdt6 => 1.0 - f1 * f1,
                ZdtVariant::Zdt3 => 1.0 - f1.sqrt() - f1 * (10.0 * PI * f1).sin(),
            }
        };
        let f1s: Vec<f64> = match self.variant {
            ZdtVariant::Zdt3 => piecewise_grid(&ZDT3_FRONT_INTERVALS, resolution),
            ZdtVariant::Zdt6 => grid(ZDT6_MIN_F1, 1.0, resolution),
            _ => grid(0.0, 1.0, resolution),
        };
        f1s.into_iter().map(|f1| vec![f1, h(f1)]).collect()
    }
}

pub(crate) fn grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    match n {
        0 => vec![],
        1 => vec![lo],
        _ => (0..n)
            .map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64)
            .collect(),
    }
}

/// Evenly spaced samples along the concatenation of `intervals`.
fn piecewise_grid(intervals: &[(f64, f64)], n: usize) -> Vec<f64> {
    let total: f64 = intervals.iter().map(|(a, b)| b - a).sum();
    grid(0.0, total, n)
        .into_iter()
        .map(|mut t| {
            for &(a, b) in intervals {
                if t <= b - a {
                    return a + t;
                }
                t -= b - a;
            }
            intervals[intervals.len() - 1].1
        })
        .collect()
}

impl Problem for Zdt {
    fn name(&self) -> &str {
        self.variant.name()
    }

    fn n_objectives(&self) -> usize {
        2
    }

    fn bounds(&self) -> &Bounds {
        &self.bounds
    }

    fn evaluate(&self, solution: &mut FloatSolution) -> Result<()> {
        check_dimension(self, solution)?;
        solution.objectives = self.objectives(&solution.variables).to_vec();
        Ok(())
    }
}
