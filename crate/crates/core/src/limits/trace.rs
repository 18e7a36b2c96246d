//! Cycle densities of step kernels from their spectra.

use serde::{Deserialize, Serialize};

use crate::digraph::cycle_digraph;
use crate::error::{invalid, Error, Result};
use crate::spectra::step_spectrum;
use crate::stepkernel::{hom_density_step, StepKernel};

/// Largest imaginary residue accepted in a spectral power sum.
pub const IMAGINARY_TOLERANCE: f64 = 1e-8;

/// `Σ_{λ≠0} m(λ) λ^ell` over the step spectrum; real by conjugate symmetry.
///
/// `ell = 2` is accepted, but the identity with `t(C_2, W)` is only claimed
/// for `ell >= 3`.
pub fn cycle_density_via_spectrum(w: &StepKernel, ell: usize) -> Result<f64> {
    if ell < 2 {
        return Err(invalid(format!(
            "cycle length must be at least 2, got {ell}"
        )));
    }
    let sum = step_spectrum(w)?.power_sum(ell as u32);
    if sum.im.abs() > IMAGINARY_TOLERANCE {
        return Err(Error::NumericalFailure {
            message: format!("power sum for ell = {ell} has imaginary part"),
            residual: sum.im.abs(),
        });
    }
    Ok(sum.re)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TraceCheckReport {
    pub ell: usize,
    /// `t(C_ell, W)` by block-map enumeration.
    pub lhs: f64,
    /// `Σ m(λ) λ^ell` over nonzero eigenvalues.
    pub rhs: f64,
    pub abs_error: f64,
}

/// Both sides of the cycle-density identity for `ell = 3..=ell_max`.
pub fn verify_trace_formula(w: &StepKernel, ell_max: usize) -> Result<Vec<TraceCheckReport>> {
    if ell_max < 3 {
        return Err(invalid(format!(
            "ell_max must be at least 3, got {ell_max}"
        )));
    }
    (3..=ell_max)
        .map(|ell| {
            let lhs = hom_density_step(&cycle_digraph(ell)?, w)?;
            let rhs = cycle_density_via_spectrum(w, ell)?;
            Ok(TraceCheckReport {
                ell,
                lhs,
                rhs,
                abs_error: (lhs - rhs).abs(),
            })
        })
        .collect()
}
