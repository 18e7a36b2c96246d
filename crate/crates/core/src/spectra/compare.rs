//! Distances between spectra and multiplicity bookkeeping near isolated
//! limit eigenvalues.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::Spectrum;
use crate::error::{invalid, Error, Result};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// `sup_{x∈X} min_{y∈Y} |x - y|`.
fn directed(x: &[Complex64], y: &[Complex64]) -> f64 {
    x.iter()
        .map(|a| {
            y.iter()
                .map(|b| (a - b).norm())
                .fold(f64::INFINITY, f64::min)
        })
        .fold(0.0, f64::max)
}

/// Hausdorff distance between finite nonempty point sets.
pub fn hausdorff_distance(x: &[Complex64], y: &[Complex64]) -> Result<f64> {
    if x.is_empty() || y.is_empty() {
        return Err(invalid("Hausdorff distance needs nonempty sets"));
    }
    Ok(directed(x, y).max(directed(y, x)))
}

/// Points of a limit spectrum, with `0` added when flagged.
pub fn limit_point_set(limit: &Spectrum) -> Vec<Complex64> {
    let mut pts: Vec<Complex64> = limit.nonzero_points().map(|p| p.value).collect();
    if limit.includes_zero_spectral_point() || limit.points().iter().any(|p| p.value == ZERO) {
        pts.push(ZERO);
    }
    pts
}

/// Hausdorff distance from an observed (normalized) spectrum of an
/// `n`-vertex digraph to a limit spectrum.
///
/// Observed points are compared against the limit set including `0`. The
/// reverse direction asks for an observed point near `0` only when
/// `n` exceeds the limit's nonzero multiplicity mass, since a small digraph
/// may have no eigenvalue left over for the zero point.
pub fn hausdorff_to_limit(limit: &Spectrum, observed: &Spectrum, n: usize) -> Result<f64> {
    let full = limit_point_set(limit);
    let obs: Vec<Complex64> = observed.points().iter().map(|p| p.value).collect();
    if full.is_empty() || obs.is_empty() {
        return Err(invalid("Hausdorff distance needs nonempty spectra"));
    }
    let mut required: Vec<Complex64> = limit.nonzero_points().map(|p| p.value).collect();
    if full.contains(&ZERO) && n > limit.nonzero_mass() {
        required.push(ZERO);
    }
    Ok(directed(&obs, &full).max(directed(&required, &obs)))
}

/// Observed multiplicity mass inside `B_ε(λ)` against `m(λ)` of the limit.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MultiplicityLedger {
    pub target: Complex64,
    pub epsilon: f64,
    pub matched_mass: usize,
    pub expected: usize,
}

impl MultiplicityLedger {
    pub fn matched(&self) -> bool {
        self.matched_mass == self.expected
    }
}

/// Half the distance from `λ` to the nearest other point of the limit set
/// (zero point included when flagged); `ε` is admissible iff below this.
pub fn isolation_radius(limit: &Spectrum, lambda: Complex64) -> f64 {
    limit_point_set(limit)
        .into_iter()
        .filter(|&p| p != lambda)
        .map(|p| (p - lambda).norm() / 2.0)
        .fold(f64::INFINITY, f64::min)
}

pub fn multiplicity_match(
    limit: &Spectrum,
    observed: &Spectrum,
    lambda: Complex64,
    epsilon: f64,
) -> Result<MultiplicityLedger> {
    if !(epsilon > 0.0 && epsilon.is_finite()) {
        return Err(invalid(format!("epsilon must be positive, got {epsilon}")));
    }
    let target = limit
        .nonzero_points()
        .find(|p| p.value == lambda)
        .ok_or_else(|| {
            invalid(format!(
                "{lambda} is not a nonzero point of the limit spectrum"
            ))
        })?;
    if let Some(offending) = limit_point_set(limit)
        .into_iter()
        .find(|&p| p != lambda && (p - lambda).norm() < 2.0 * epsilon)
    {
        return Err(Error::IsolationViolated {
            target: lambda.to_string(),
            offending: offending.to_string(),
            epsilon,
        });
    }
    let matched_mass = observed
        .points()
        .iter()
        .filter(|p| (p.value - lambda).norm() < epsilon)
        .map(|p| p.mult)
        .sum();
    Ok(MultiplicityLedger {
        target: lambda,
        epsilon,
        matched_mass,
        expected: target.mult,
    })
}

#[cfg(test)]
mod tests {
    use super::super::SpectralPoint;
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn quarter_limit() -> Spectrum {
        let pts = [0.25, -0.25].map(|x| SpectralPoint {
            value: c(x, 0.0),
            mult: 1,
        });
        Spectrum::new(pts.to_vec(), true).unwrap()
    }

    #[test]
    fn hand_evaluated() {
        let x = [c(0.0, 0.0)];
        let y = [c(0.0, 0.0), c(0.25, 0.0), c(-0.25, 0.0)];
        assert_eq!(hausdorff_distance(&x, &y).unwrap(), 0.25);
        assert_eq!(hausdorff_distance(&y, &x).unwrap(), 0.25);
        assert_eq!(hausdorff_distance(&y, &y).unwrap(), 0.0);
        assert!(hausdorff_distance(&[], &y).is_err());
    }

    #[test]
    fn zero_point_policy() {
        let limit = quarter_limit();
        let obs = Spectrum::new(
            vec![
                SpectralPoint {
                    value: c(0.26, 0.0),
                    mult: 1,
                },
                SpectralPoint {
                    value: c(-0.24, 0.0),
                    mult: 1,
                },
            ],
            false,
        )
        .unwrap();
        // Two eigenvalues, both accounted for by nonzero limit points.
        assert!((hausdorff_to_limit(&limit, &obs, 2).unwrap() - 0.01).abs() < 1e-12);
        // A third vertex would have to produce an eigenvalue near 0.
        assert!((hausdorff_to_limit(&limit, &obs, 3).unwrap() - 0.24).abs() < 1e-12);
    }

    #[test]
    fn ledgers() {
        let limit = quarter_limit();
        let l = multiplicity_match(&limit, &limit, c(0.25, 0.0), 0.05).unwrap();
        assert!(l.matched());
        let far = Spectrum::new(
            vec![SpectralPoint {
                value: c(0.5, 0.0),
                mult: 1,
            }],
            false,
        )
        .unwrap();
        let l = multiplicity_match(&limit, &far, c(0.25, 0.0), 0.05).unwrap();
        assert_eq!((l.matched_mass, l.expected), (0, 1));
        assert!(matches!(
            multiplicity_match(&limit, &limit, c(0.25, 0.0), 0.2),
            Err(Error::IsolationViolated { .. })
        ));
        assert!(multiplicity_match(&limit, &limit, c(0.3, 0.0), 0.01).is_err());
        assert!((isolation_radius(&limit, c(0.25, 0.0)) - 0.125).abs() < 1e-15);
    }
}
