//! Spectral convergence experiments for sampled digraphs and for sequences
//! of step kernels.

use num_complex::Complex64;
use rand::Rng as _;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::digraph::sample_w_random;
use crate::error::{invalid, Result};
use crate::matrix::Matrix;
use crate::rng::{child_seed, rng_from_seed};
use crate::spectra::{
    digraph_spectrum, hausdorff_distance, hausdorff_to_limit, limit_point_set, multiplicity_match,
    singular_moment_holds, step_spectrum, MultiplicityLedger, Spectrum,
};
use crate::stepkernel::{
    common_refinement, cut_metric, nu_convergence_gaps, StepDigraphon, StepKernel,
};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceRow {
    /// Sample size, or the 1-based position in a kernel sequence.
    pub n: usize,
    pub seed: Option<u64>,
    pub observed: Spectrum,
    pub hausdorff: f64,
    pub ledgers: Vec<MultiplicityLedger>,
    pub nu_gaps: Option<(f64, f64)>,
    pub cut_metric: Option<f64>,
    /// Whether the sampled digraph satisfies `Σ m|λ|^2 <= n^2`.
    pub singular_bound: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SizeSummary {
    pub n: usize,
    pub median_hausdorff: f64,
    /// Fraction of rows whose ledger at each target matched, in target order.
    pub matched_fraction: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceReport {
    pub limit_spectrum: Spectrum,
    pub epsilon: f64,
    pub targets: Vec<Complex64>,
    pub master_seed: Option<u64>,
    pub rows: Vec<ConvergenceRow>,
    pub summaries: Vec<SizeSummary>,
}

pub fn median(values: &mut [f64]) -> f64 {
    values.sort_by(f64::total_cmp);
    let m = values.len();
    if m == 0 {
        return f64::NAN;
    }
    if m % 2 == 1 {
        values[m / 2]
    } else {
        0.5 * (values[m / 2 - 1] + values[m / 2])
    }
}

fn targets_of(limit: &Spectrum, epsilon: f64) -> Result<Vec<Complex64>> {
    if !(epsilon > 0.0 && epsilon.is_finite()) {
        return Err(invalid(format!("epsilon must be positive, got {epsilon}")));
    }
    let targets: Vec<Complex64> = limit.nonzero_points().map(|p| p.value).collect();
    for &t in &targets {
        multiplicity_match(limit, limit, t, epsilon)?;
    }
    Ok(targets)
}

fn ledgers(
    limit: &Spectrum,
    observed: &Spectrum,
    targets: &[Complex64],
    eps: f64,
) -> Result<Vec<MultiplicityLedger>> {
    targets
        .iter()
        .map(|&t| multiplicity_match(limit, observed, t, eps))
        .collect()
}

fn summarize(rows: &[ConvergenceRow], targets: usize) -> Vec<SizeSummary> {
    let mut out: Vec<SizeSummary> = Vec::new();
    let mut start = 0;
    while start < rows.len() {
        let n = rows[start].n;
        let end = start + rows[start..].iter().take_while(|r| r.n == n).count();
        let group = &rows[start..end];
        let mut h: Vec<f64> = group.iter().map(|r| r.hausdorff).collect();
        let matched_fraction = (0..targets)
            .map(|t| {
                group.iter().filter(|r| r.ledgers[t].matched()).count() as f64 / group.len() as f64
            })
            .collect();
        out.push(SizeSummary {
            n,
            median_hausdorff: median(&mut h),
            matched_fraction,
        });
        start = end;
    }
    out
}

/// Samples `seeds_per_size` W-random digraphs at each size and compares
/// their normalized spectra with the spectrum of `W`.
///
/// Cell `c` (sizes outer, seeds inner) uses `child_seed(seed, c)`, so the
/// report does not depend on the thread count.
pub fn convergence_experiment(
    w: &StepDigraphon,
    sizes: &[usize],
    seeds_per_size: usize,
    epsilon: f64,
    seed: u64,
) -> Result<ConvergenceReport> {
    if sizes.is_empty() || sizes.windows(2).any(|p| p[0] >= p[1]) || sizes[0] == 0 {
        return Err(invalid("sizes must be positive and strictly increasing"));
    }
    if seeds_per_size == 0 {
        return Err(invalid("seeds_per_size must be positive"));
    }
    let limit = step_spectrum(w)?;
    let targets = targets_of(&limit, epsilon)?;
    let cells: Vec<(usize, u64)> = sizes
        .iter()
        .flat_map(|&n| (0..seeds_per_size).map(move |s| (n, s)))
        .enumerate()
        .map(|(c, (n, _))| (n, child_seed(seed, c as u64)))
        .collect();
    let rows = cells
        .par_iter()
        .map(|&(n, cell_seed)| {
            let g = sample_w_random(w, n, cell_seed)?;
            let raw = digraph_spectrum(&g)?;
            let observed = raw.scaled(1.0 / n as f64);
            Ok(ConvergenceRow {
                n,
                seed: Some(cell_seed),
                hausdorff: hausdorff_to_limit(&limit, &observed, n)?,
                ledgers: ledgers(&limit, &observed, &targets, epsilon)?,
                singular_bound: Some(singular_moment_holds(&raw, n)),
                observed,
                nu_gaps: None,
                cut_metric: None,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let summaries = summarize(&rows, targets.len());
    Ok(ConvergenceReport {
        limit_spectrum: limit,
        epsilon,
        targets,
        master_seed: Some(seed),
        rows,
        summaries,
    })
}

/// Deterministic comparison of `Sp(W_n)` with `Sp(W)`, plus cut distances and
/// ν-gaps on the common refinement.
pub fn step_sequence_convergence(
    ws: &[StepKernel],
    w: &StepKernel,
    epsilon: f64,
) -> Result<ConvergenceReport> {
    let limit = step_spectrum(w)?;
    let targets = targets_of(&limit, epsilon)?;
    let limit_set = limit_point_set(&limit);
    let rows = ws
        .iter()
        .enumerate()
        .map(|(i, wn)| {
            let observed = step_spectrum(wn)?;
            let (a, b) = common_refinement(wn, w)?;
            Ok(ConvergenceRow {
                n: i + 1,
                seed: None,
                hausdorff: hausdorff_distance(&limit_point_set(&observed), &limit_set)?,
                ledgers: ledgers(&limit, &observed, &targets, epsilon)?,
                nu_gaps: Some(nu_convergence_gaps(&a, &b)?),
                cut_metric: Some(cut_metric(&a, &b)?),
                singular_bound: None,
                observed,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let summaries = summarize(&rows, targets.len());
    Ok(ConvergenceReport {
        limit_spectrum: limit,
        epsilon,
        targets,
        master_seed: None,
        rows,
        summaries,
    })
}

/// `W_i = W + 2^{-i} N` for `i = 1..=steps`, with one noise matrix `N` of
/// independent entries uniform on `[-1, 1]`.
pub fn perturbation_sequence(w: &StepKernel, steps: usize, seed: u64) -> Result<Vec<StepKernel>> {
    let k = w.k();
    let mut rng = rng_from_seed(seed);
    let noise = Matrix::from_fn(k, k, |_, _| rng.random_range(-1.0..=1.0));
    (1..=steps)
        .map(|i| {
            let scale = 0.5f64.powi(i as i32);
            let values = Matrix::from_fn(k, k, |a, b| w.value(a, b) + scale * noise[(a, b)]);
            let bound = values.max_abs();
            StepKernel::from_matrix(values, w.measures().to_vec(), bound)
        })
        .collect()
}

fn opt(x: Option<f64>) -> String {
    x.map(|v| format!("{v:.16e}")).unwrap_or_default()
}

impl ConvergenceReport {
    /// One line per row: `n,seed,hausdorff,nu_gap_w,nu_gap_wn,cut_metric`
    /// followed by `matched_i,expected_i` for each target `i`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,seed,hausdorff,nu_gap_w,nu_gap_wn,cut_metric");
        for i in 0..self.targets.len() {
            out.push_str(&format!(",matched_{i},expected_{i}"));
        }
        out.push('\n');
        for r in &self.rows {
            out.push_str(&format!(
                "{},{},{:.16e},{},{},{}",
                r.n,
                r.seed.map(|s| s.to_string()).unwrap_or_default(),
                r.hausdorff,
                opt(r.nu_gaps.map(|g| g.0)),
                opt(r.nu_gaps.map(|g| g.1)),
                opt(r.cut_metric),
            ));
            for l in &r.ledgers {
                out.push_str(&format!(",{},{}", l.matched_mass, l.expected));
            }
            out.push('\n');
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn perturbations_shrink() {
        let w = StepKernel::uniform(vec![vec![0.1, 0.4], vec![0.3, 0.2]]).unwrap();
        let seq = perturbation_sequence(&w, 10, 5).unwrap();
        let gap = |x: &StepKernel| {
            (0..2)
                .flat_map(|i| (0..2).map(move |j| (i, j)))
                .map(|(i, j)| (x.value(i, j) - w.value(i, j)).abs())
                .fold(0.0, f64::max)
        };
        for pair in seq.windows(2) {
            assert!((gap(&pair[1]) - gap(&pair[0]) / 2.0).abs() < 1e-15);
        }
        assert_eq!(seq, perturbation_sequence(&w, 10, 5).unwrap());
    }

    #[test]
    fn medians() {
        assert_eq!(median(&mut [3.0, 1.0, 2.0]), 2.0);
        assert_eq!(median(&mut [4.0, 1.0, 2.0, 3.0]), 2.5);
    }

    #[test]
    fn zero_kernel_samples_are_exact() {
        let w = StepDigraphon::new(StepKernel::constant(0.0).unwrap()).unwrap();
        let r = convergence_experiment(&w, &[5, 10, 20], 2, 0.1, 7).unwrap();
        assert_eq!(r.rows.len(), 6);
        assert!(r.rows.iter().all(|row| row.hausdorff == 0.0));
        assert!(r.targets.is_empty());
    }

    #[test]
    fn deterministic_and_validated() {
        let w = StepDigraphon::new(StepKernel::constant(0.5).unwrap()).unwrap();
        let a = convergence_experiment(&w, &[10, 20], 2, 0.1, 3).unwrap();
        let b = convergence_experiment(&w, &[10, 20], 2, 0.1, 3).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.summaries.len(), 2);
        assert!(a.rows.iter().all(|r| r.singular_bound == Some(true)));
        assert!(convergence_experiment(&w, &[20, 10], 2, 0.1, 3).is_err());
        assert!(convergence_experiment(&w, &[10], 2, 0.3, 3).is_err());
    }

    #[test]
    fn constant_sequence_is_exact() {
        let w = StepKernel::uniform(vec![vec![0.1, 0.4], vec![0.3, 0.2]]).unwrap();
        let r = step_sequence_convergence(&[w.clone(), w.clone()], &w, 0.01).unwrap();
        for row in &r.rows {
            assert_eq!(row.hausdorff, 0.0);
            assert_eq!(row.nu_gaps, Some((0.0, 0.0)));
            assert_eq!(row.cut_metric, Some(0.0));
            assert!(row.ledgers.iter().all(MultiplicityLedger::matched));
        }
        assert!(r
            .to_csv()
            .starts_with("n,seed,hausdorff,nu_gap_w,nu_gap_wn,cut_metric,matched_0,expected_0,"));
    }
}
