//! FDA dynamic benchmarks. Time advances through observer notifications carrying `COUNTER`.

use std::f64::consts::FRAC_PI_2;
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};

use crate::core::problem::check_dimension;
use crate::core::{Bounds, DynamicProblem, Event, FloatSolution, Observer, ObserverError, Problem};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FdaVariant {
    Fda1,
    Fda2,
}

impl FdaVariant {
    pub fn name(self) -> &'static str {
        match self {
            FdaVariant::Fda1 => "FDA1",
            FdaVariant::Fda2 => "FDA2",
        }
    }

    pub fn default_n_vars(self) -> usize {
        match self {
            FdaVariant::Fda1 => 20,
            FdaVariant::Fda2 => 31,
        }
    }
}

/// Time state shared between the clock thread (writer) and the algorithm (reader).
#[derive(Debug, Default)]
struct TimeState {
    time_bits: AtomicU64,
    changed: AtomicBool,
}

/// FDA1 and FDA2.
///
/// FDA1: `f1 = x1`, `g = 1 + sum (x_i - G(t))^2` over the remaining variables,
/// `f2 = g (1 - sqrt(f1 / g))`, `G(t) = sin(pi t / 2)`.
///
/// FDA2 uses the modified H form: the tail is split into two equal blocks `xII` and `xIII`, `g = 1 + sum xII^2`, `H(t) = 0.2 + 4.8 t^2` and
/// `f2 = g (1 - (f1 / g)^(H + sum (x_i - H/4)^2))` with the second sum over `xIII`.
/// The front moves from strongly convex (`t = 0`) to concave (`t = 1`).
#[derive(Debug)]
pub struct Fda {
    variant: FdaVariant,
    tau_t: u64,
    n_t: u64,
    bounds: Bounds,
    state: TimeState,
}

impl Fda {
    pub fn new(variant: FdaVariant) -> Self {
        Fda::with_params(variant, variant.default_n_vars(), 5, 10).expect("defaults are valid")
    }

    /// `tau_t`: counter ticks per time step; `n_t`: number of distinct steps per unit time.
    pub fn with_params(variant: FdaVariant, n_vars: usize, tau_t: u64, n_t: u64) -> Result<Self> {
        if tau_t == 0 || n_t == 0 {
            return Err(Error::Config("tau_T and nT must be positive".into()));
        }
        let min_vars = match variant {
            FdaVariant::Fda1 => 2,
            FdaVariant::Fda2 => 3,
        };
        if n_vars < min_vars {
            return Err(Error::Config(format!(
                "{} needs at least {min_vars} variables",
                variant.name()
            )));
        }
        let mut lower = vec![-1.0; n_vars];
        lower[0] = 0.0;
        let bounds = Bounds::new(lower, vec![1.0; n_vars])?;
        Ok(Fda {
            variant,
            tau_t,
            n_t,
            bounds,
            state: TimeState::default(),
        })
    }

    pub fn variant(&self) -> FdaVariant {
        self.variant
    }

    pub fn time(&self) -> f64 {
        f64::from_bits(self.state.time_bits.load(Ordering::Acquire))
    }

    pub fn set_time(&self, t: f64) {
        self.state.time_bits.store(t.to_bits(), Ordering::Release);
    }

    /// Sets `time = floor(counter / tau_T) / nT` and raises the changed flag.
    pub fn update_time(&self, counter: u64) {
        self.set_time((counter / self.tau_t) as f64 / self.n_t as f64);
        self.state.changed.store(true, Ordering::Release);
    }

    /// The FDA2 H function.
    pub fn fda2_h(t: f64) -> f64 {
        0.2 + 4.8 * t * t
    }

    fn fda2_split(&self) -> usize {
        // xII = x[1..split], xIII = x[split..]
        1 + (self.bounds.len() - 1) / 2
    }

    pub fn objectives(&self, x: &[f64], t: f64) -> [f64; 2] {
        let f1 = x[0];
        match self.variant {
            FdaVariant::Fda1 => {
                let gt = (FRAC_PI_2 * t).sin();
                let g = 1.0 + x[1..].iter().map(|v| (v - gt) * (v - gt)).sum::<f64>();
                [f1, g * (1.0 - (f1 / g).sqrt())]
            }
            FdaVariant::Fda2 => {
                let split = self.fda2_split();
                let h = Fda::fda2_h(t);
                let g = 1.0 + x[1..split].iter().map(|v| v * v).sum::<f64>();
                let e = h + x[split..]
                    .iter()
                    .map(|v| (v - h / 4.0) * (v - h / 4.0))
                    .sum::<f64>();
                [f1, g * (1.0 - (f1 / g).powf(e))]
            }
        }
    }

    /// Pareto front at time `t`. For FDA2 the `xIII` block cannot reach `H/4` once
    /// `H > 4`, so the best exponent keeps a residual term.
    pub fn reference_front_at(&self, t: f64, resolution: usize) -> Vec<Vec<f64>> {
        let f1s = super::zdt::grid(0.0, 1.0, resolution);
        match self.variant {
            FdaVariant::Fda1 => f1s.into_iter().map(|f| vec![f, 1.0 - f.sqrt()]).collect(),
            FdaVariant::Fda2 => {
                let h = Fda::fda2_h(t);
                let n3 = (self.bounds.len() - self.fda2_split()) as f64;
                let gap = (h / 4.0).clamp(-1.0, 1.0) - h / 4.0;
                let e = h + n3 * gap * gap;
                f1s.into_iter().map(|f| vec![f, 1.0 - f.powf(e)]).collect()
            }
        }
    }
}

impl Problem for Fda {
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
        solution.objectives = self.objectives(&solution.variables, self.time()).to_vec();
        Ok(())
    }
}

impl Observer for Fda {
    fn update(&self, event: &Event<'_>) -> std::result::Result<(), ObserverError> {
        let counter = event.require_counter()?;
        self.update_time(counter);
        Ok(())
    }
}

impl DynamicProblem for Fda {
    fn has_changed(&self) -> bool {
        self.state.changed.load(Ordering::Acquire)
    }

    fn clear_changed(&self) {
        self.state.changed.store(false, Ordering::Release);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::core::problem::evaluated;
    use proptest::prelude::*;

    #[test]
    fn time_update_formula() {
        let p = Fda::new(FdaVariant::Fda2);
        p.update_time(10);
        assert!((p.time() - 0.2).abs() < 1e-15);
        p.update_time(4);
        assert_eq!(p.time(), 0.0);
        p.update_time(25);
        assert_eq!(p.time(), 0.5);
    }

    #[test]
    fn changed_flag_query_and_clear() {
        let p = Fda::new(FdaVariant::Fda1);
        assert!(!p.has_changed());
        p.update(&Event::counter(3)).unwrap();
        assert!(p.has_changed());
        assert!(p.has_changed());
        p.clear_changed();
        assert!(!p.has_changed());
        assert!(p.update(&Event::progress(1, &[])).is_err());
    }

    #[test]
    fn fda1_examples() {
        let p = Fda::new(FdaVariant::Fda1);
        let x = FloatSolution::new(vec![0.0; 20]);
        assert_eq!(evaluated(&p, x.clone()).unwrap().objectives, vec![0.0, 1.0]);
        let mut y = vec![0.3; 20];
        y[0] = 0.4;
        let a = evaluated(&p, FloatSolution::new(y.clone())).unwrap();
        let b = evaluated(&p, FloatSolution::new(y.clone())).unwrap();
        assert_eq!(a.objectives, b.objectives);
        p.set_time(1.0);
        let c = evaluated(&p, FloatSolution::new(y)).unwrap();
        assert_ne!(a.objectives[1], c.objectives[1]);
    }

    #[test]
    fn fda2_optimum_matches_reference_front() {
        let p = Fda::new(FdaVariant::Fda2);
        for t in [0.0, 0.3, 0.7, 1.0] {
            let h = Fda::fda2_h(t);
            let front = p.reference_front_at(t, 11);
            for point in &front {
                let mut x = vec![0.0; 31];
                x[0] = point[0];
                for v in &mut x[16..] {
                    *v = (h / 4.0).clamp(-1.0, 1.0);
                }
                let f = p.objectives(&x, t);
                assert!((f[1] - point[1]).abs() < 1e-12, "t={t}");
            }
        }
    }

    proptest! {
        #[test]
        fn time_is_a_monotone_step_function(a in 0u64..1000, b in 0u64..1000) {
            let p = Fda::new(FdaVariant::Fda1);
            let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
            p.update_time(lo);
            let t_lo = p.time();
            p.update_time(hi);
            let t_hi = p.time();
            prop_assert!(t_hi >= t_lo);
            let steps = (t_hi - t_lo) * 10.0;
            prop_assert!((steps - steps.round()).abs() < 1e-9);
        }

        #[test]
        fn fda2_reference_is_lower_envelope(x in prop::collection::vec(-1.0f64..=1.0, 31), t in 0.0f64..=1.0) {
            let p = Fda::new(FdaVariant::Fda2);
            let mut x = x;
            x[0] = x[0].abs();
            let f = p.objectives(&x, t);
            let h = Fda::fda2_h(t);
            let gap = (h / 4.0).clamp(-1.0, 1.0) - h / 4.0;
            let e = h + 15.0 * gap * gap;
            prop_assert!(f[1] >= 1.0 - f[0].powf(e) - 1e-12);
        }
    }
}
