//! Benchmark problems and the name registry used by the CLI and experiment plans.
//!
//! Names: `ZDT1`, `ZDT2`, `ZDT3`, `ZDT4`, `ZDT6`, `DTLZ1`, `DTLZ2` (three objectives; append
//! `:m` for another count, e.g. `DTLZ2:5`), `FDA1`, `FDA2`.

pub mod dtlz;
pub mod fda;
pub mod zdt;

pub use dtlz::{Dtlz, DtlzVariant};
pub use fda::{Fda, FdaVariant};
pub use zdt::{Zdt, ZdtVariant};

use std::sync::Arc;

use crate::core::Problem;
use crate::error::{Error, Result};
use crate::indicators::Front;

/// Canonical names accepted by [`problem_by_name`].
pub const PROBLEM_NAMES: [&str; 9] = [
    "ZDT1", "ZDT2", "ZDT3", "ZDT4", "ZDT6", "DTLZ1", "DTLZ2", "FDA1", "FDA2",
];

/// Default number of reference-front points for `m` objectives.
pub fn default_resolution(m: usize) -> usize {
    if m <= 2 {
        1000
    } else {
        10_000
    }
}

enum Parsed {
    Zdt(ZdtVariant),
    Dtlz(DtlzVariant, usize),
    Fda(FdaVariant),
}

fn parse(name: &str) -> Result<Parsed> {
    let lookup = || Error::Lookup {
        kind: "problem",
        name: name.to_string(),
    };
    let upper = name.trim().to_ascii_uppercase();
    let (base, m) = match upper.split_once(':') {
        Some((b, m)) => (b, Some(m.parse::<usize>().map_err(|_| lookup())?)),
        None => (upper.as_str(), None),
    };
    let parsed = match base {
        "ZDT1" => Parsed::Zdt(ZdtVariant::Zdt1),
        "ZDT2" => Parsed::Zdt(ZdtVariant::Zdt2),
        "ZDT3" => Parsed::Zdt(ZdtVariant::Zdt3),
        "ZDT4" => Parsed::Zdt(ZdtVariant::Zdt4),
        "ZDT6" => Parsed::Zdt(ZdtVariant::Zdt6),
        "DTLZ1" => Parsed::Dtlz(DtlzVariant::Dtlz1, m.unwrap_or(3)),
        "DTLZ2" => Parsed::Dtlz(DtlzVariant::Dtlz2, m.unwrap_or(3)),
        "FDA1" => Parsed::Fda(FdaVariant::Fda1),
        "FDA2" => Parsed::Fda(FdaVariant::Fda2),
        _ => return Err(lookup()),
    };
    if m.is_some() && !matches!(parsed, Parsed::Dtlz(..)) {
        return Err(lookup());
    }
    Ok(parsed)
}

/// Builds a problem with its default parameters.
pub fn problem_by_name(name: &str) -> Result<Arc<dyn Problem>> {
    Ok(match parse(name)? {
        Parsed::Zdt(v) => Arc::new(Zdt::new(v)),
        Parsed::Dtlz(v, m) => Arc::new(Dtlz::new(v, m)?),
        Parsed::Fda(v) => Arc::new(Fda::new(v)),
    })
}

/// Samples `resolution` points of the analytical Pareto front. FDA fronts are taken at
/// time 0.
pub fn reference_front(name: &str, resolution: usize) -> Result<Front> {
    if resolution == 0 {
        return Err(Error::Argument("resolution must be positive".into()));
    }
    let points = match parse(name)? {
        Parsed::Zdt(v) => Zdt::new(v).reference_front(resolution),
        Parsed::Dtlz(v, m) => Dtlz::new(v, m)?.reference_front(resolution),
        Parsed::Fda(v) => Fda::new(v).reference_front_at(0.0, resolution),
    };
    Front::new(points)
}

/// Reference front at the default resolution for the problem's objective count.
pub fn default_reference_front(name: &str) -> Result<Front> {
    let m = problem_by_name(name)?.n_objectives();
    reference_front(name, default_resolution(m))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn registry_resolves_every_name() {
        for name in PROBLEM_NAMES {
            let p = problem_by_name(name).unwrap();
            assert_eq!(p.name(), name);
        }
        assert_eq!(problem_by_name("dtlz2:5").unwrap().n_objectives(), 5);
        assert!(matches!(
            problem_by_name("ZDT5"),
            Err(Error::Lookup { kind: "problem", .. })
        ));
        assert!(problem_by_name("ZDT1:3").is_err());
    }

    #[test]
    fn reference_fronts_by_name() {
        let f = reference_front("ZDT1", 3).unwrap();
        assert_eq!(f.points()[1], vec![0.5, 1.0 - 0.5f64.sqrt()]);
        assert_eq!(default_reference_front("ZDT2").unwrap().len(), 1000);
        assert_eq!(default_reference_front("DTLZ2").unwrap().len(), 10_000);
        assert!(reference_front("WFG1", 10).is_err());
        assert_eq!(reference_front("ZDT3", 1).unwrap().len(), 1);
    }
}
