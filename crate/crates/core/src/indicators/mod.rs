//! Quality indicators over fronts of objective vectors.

mod distance;
mod front;
mod hypervolume;

pub use distance::{additive_epsilon, igd, igd_plus, spread};
pub use front::{normalize, Front};
pub use hypervolume::{hypervolume, MAX_HV_OBJECTIVES};

use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Indicators addressable by their short names in summary files and plans.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Indicator {
    #[serde(rename = "EP")]
    Epsilon,
    #[serde(rename = "SPREAD")]
    Spread,
    #[serde(rename = "HV")]
    Hypervolume,
    #[serde(rename = "IGD")]
    Igd,
    #[serde(rename = "IGD+")]
    IgdPlus,
}

impl Indicator {
    pub const ALL: [Indicator; 5] = [
        Indicator::Epsilon,
        Indicator::Spread,
        Indicator::Hypervolume,
        Indicator::Igd,
        Indicator::IgdPlus,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Indicator::Epsilon => "EP",
            Indicator::Spread => "SPREAD",
            Indicator::Hypervolume => "HV",
            Indicator::Igd => "IGD",
            Indicator::IgdPlus => "IGD+",
        }
    }

    pub fn larger_is_better(self) -> bool {
        matches!(self, Indicator::Hypervolume)
    }

    /// Computes the indicator after normalizing both fronts by the reference front's ideal
    /// and nadir points. Hypervolume uses the reference point `(1, ..., 1)`.
    pub fn compute(self, front: &Front, reference: &Front) -> Result<f64> {
        let f = normalize(front, reference)?;
        let r = normalize(reference, reference)?;
        match self {
            Indicator::Epsilon => additive_epsilon(&f, &r),
            Indicator::Spread => spread(&f, &r),
            Indicator::Hypervolume => hypervolume(&f, &vec![1.0; f.dim()]),
            Indicator::Igd => igd(&f, &r),
            Indicator::IgdPlus => igd_plus(&f, &r),
        }
    }
}

impl fmt::Display for Indicator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Indicator {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Indicator::ALL
            .into_iter()
            .find(|i| i.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::Lookup {
                kind: "indicator",
                name: s.to_string(),
            })
    }
}

/// Orientation of an indicator given by name; unknown names are treated as smaller-is-better.
pub fn larger_is_better(name: &str) -> bool {
    name.parse::<Indicator>()
        .map(Indicator::larger_is_better)
        .unwrap_or(false)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn registry_round_trip() {
        for i in Indicator::ALL {
            assert_eq!(i.name().parse::<Indicator>().unwrap(), i);
        }
        assert!("R2".parse::<Indicator>().is_err());
        assert!(larger_is_better("HV"));
        assert!(!larger_is_better("IGD+"));
    }

    #[test]
    fn normalized_hypervolume_of_reference_extremes() {
        let reference = Front::new(vec![vec![0.0, 4.0], vec![2.0, 0.0]]).unwrap();
        let front = Front::new(vec![vec![1.0, 2.0]]).unwrap();
        let hv = Indicator::Hypervolume.compute(&front, &reference).unwrap();
        assert!((hv - 0.25).abs() < 1e-12);
    }
}
