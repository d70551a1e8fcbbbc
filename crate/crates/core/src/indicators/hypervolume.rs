use super::Front;
use crate::error::{Error, Result};

/// Largest objective count handled by [`hypervolume`].
pub const MAX_HV_OBJECTIVES: usize = 4;

/// Exact hypervolume dominated by `front` and bounded by `reference_point`.
///
/// Only points strictly better than the reference in every objective contribute. Two
/// objectives use a sweep; three and four slice along the last objective.
pub fn hypervolume(front: &Front, reference_point: &[f64]) -> Result<f64> {
    let m = front.dim();
    if reference_point.len() != m {
        return Err(Error::dimension(m, reference_point.len()));
    }
    if m > MAX_HV_OBJECTIVES {
        return Err(Error::UnsupportedDimension(format!(
            "exact hypervolume supports at most {MAX_HV_OBJECTIVES} objectives, got {m}"
        )));
    }
    let points: Vec<&[f64]> = front
        .points()
        .iter()
        .filter(|p| p.iter().zip(reference_point).all(|(a, r)| a < r))
        .map(|p| p.as_slice())
        .collect();
    Ok(volume(points, reference_point))
}

fn volume(mut points: Vec<&[f64]>, reference: &[f64]) -> f64 {
    if points.is_empty() {
        return 0.0;
    }
    let m = reference.len();
    match m {
        1 => reference[0] - points.iter().map(|p| p[0]).fold(f64::INFINITY, f64::min),
        2 => {
            points.sort_by(|a, b| a[0].total_cmp(&b[0]).then(a[1].total_cmp(&b[1])));
            let mut area = 0.0;
            let mut ceiling = reference[1];
            for p in points {
                if p[1] < ceiling {
                    area += (reference[0] - p[0]) * (ceiling - p[1]);
                    ceiling = p[1];
                }
            }
            area
        }
        _ => {
            let last = m - 1;
            points.sort_by(|a, b| a[last].total_cmp(&b[last]));
            let mut total = 0.0;
            for i in 0..points.len() {
                let top = if i + 1 < points.len() {
                    points[i + 1][last]
                } else {
                    reference[last]
                };
                let depth = top - points[i][last];
                if depth <= 0.0 {
                    continue;
                }
                let slice: Vec<&[f64]> = points[..=i].iter().map(|p| &p[..last]).collect();
                total += depth * volume(slice, &reference[..last]);
            }
            total
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn front(points: &[&[f64]]) -> Front {
        Front::new(points.iter().map(|p| p.to_vec()).collect()).unwrap()
    }

    #[test]
    fn unit_box() {
        assert_eq!(hypervolume(&front(&[&[0.0, 0.0]]), &[1.0, 1.0]).unwrap(), 1.0);
    }

    #[test]
    fn three_point_staircase() {
        let f = front(&[&[0.0, 1.0], &[0.5, 0.5], &[1.0, 0.0]]);
        assert_eq!(hypervolume(&f, &[2.0, 2.0]).unwrap(), 3.25);
    }

    #[test]
    fn non_dominating_point_contributes_nothing() {
        assert_eq!(hypervolume(&front(&[&[3.0, 3.0]]), &[2.0, 2.0]).unwrap(), 0.0);
        let f = front(&[&[0.0, 1.0], &[3.0, 3.0]]);
        assert_eq!(hypervolume(&f, &[2.0, 2.0]).unwrap(), 2.0);
    }

    #[test]
    fn unit_cubes_in_three_and_four_objectives() {
        assert_eq!(hypervolume(&front(&[&[0.0; 3]]), &[1.0; 3]).unwrap(), 1.0);
        assert_eq!(hypervolume(&front(&[&[0.5; 4]]), &[1.0; 4]).unwrap(), 0.0625);
        // two overlapping boxes: 0.5 + 0.5 - 0.25
        let f = front(&[&[0.0, 0.5, 0.0], &[0.5, 0.0, 0.0]]);
        assert!((hypervolume(&f, &[1.0; 3]).unwrap() - 0.75).abs() < 1e-15);
    }

    #[test]
    fn more_than_four_objectives_is_unsupported() {
        assert!(matches!(
            hypervolume(&front(&[&[0.0; 5]]), &[1.0; 5]),
            Err(Error::UnsupportedDimension(_))
        ));
        assert!(hypervolume(&front(&[&[0.0; 2]]), &[1.0; 3]).is_err());
    }

    /// Inclusion-exclusion over all subsets; exponential but exact for tiny fronts.
    fn inclusion_exclusion(points: &[Vec<f64>], r: &[f64]) -> f64 {
        let pts: Vec<&Vec<f64>> = points
            .iter()
            .filter(|p| p.iter().zip(r).all(|(a, b)| a < b))
            .collect();
        let n = pts.len();
        let mut total = 0.0;
        for mask in 1u32..(1 << n) {
            let mut corner = vec![f64::NEG_INFINITY; r.len()];
            for (i, p) in pts.iter().enumerate() {
                if mask & (1 << i) != 0 {
                    for k in 0..r.len() {
                        corner[k] = corner[k].max(p[k]);
                    }
                }
            }
            let vol: f64 = corner.iter().zip(r).map(|(c, b)| b - c).product();
            if mask.count_ones() % 2 == 1 {
                total += vol;
            } else {
                total -= vol;
            }
        }
        total
    }

    fn points(m: usize) -> impl Strategy<Value = Vec<Vec<f64>>> {
        prop::collection::vec(prop::collection::vec(0.0f64..1.2, m), 1..7)
    }

    proptest! {
        #[test]
        fn matches_inclusion_exclusion_3d(p in points(3)) {
            let hv = hypervolume(&Front::new(p.clone()).unwrap(), &[1.0; 3]).unwrap();
            prop_assert!((hv - inclusion_exclusion(&p, &[1.0; 3])).abs() < 1e-9);
        }

        #[test]
        fn matches_inclusion_exclusion_4d(p in points(4)) {
            let hv = hypervolume(&Front::new(p.clone()).unwrap(), &[1.0; 4]).unwrap();
            prop_assert!((hv - inclusion_exclusion(&p, &[1.0; 4])).abs() < 1e-9);
        }

        #[test]
        fn monotone_and_permutation_invariant(p in points(2), extra in prop::collection::vec(0.0f64..1.0, 2)) {
            let base = hypervolume(&Front::new(p.clone()).unwrap(), &[1.0, 1.0]).unwrap();
            let mut grown = p.clone();
            grown.push(extra);
            let more = hypervolume(&Front::new(grown.clone()).unwrap(), &[1.0, 1.0]).unwrap();
            prop_assert!(more >= base - 1e-12);
            grown.reverse();
            let rev = hypervolume(&Front::new(grown).unwrap(), &[1.0, 1.0]).unwrap();
            prop_assert!((rev - more).abs() < 1e-12);
        }

        #[test]
        fn dominated_addition_changes_nothing(p in points(2)) {
            let base = hypervolume(&Front::new(p.clone()).unwrap(), &[1.3, 1.3]).unwrap();
            let mut grown = p.clone();
            grown.push(p[0].iter().map(|v| v + 0.05).collect());
            let after = hypervolume(&Front::new(grown).unwrap(), &[1.3, 1.3]).unwrap();
            prop_assert!((after - base).abs() < 1e-12);
        }
    }
}
