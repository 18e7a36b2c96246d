//! Two digraph sequences with one collapsed limit but different 2-cycle
//! densities.
//!
//! `A` is an `n`-regular graph on `2n` vertices. `H1 = [[0, A], [A, 0]]`
//! carries every edge of `A` in both directions between the two copies;
//! `H2 = [[0, A], [J - A, 0]]` orients each cross pair exactly once. Both
//! converge to the kernel `W'` equal to `1/2` across the halves, so all
//! `t(C_ell)` with `ell >= 3` agree in the limit, while `t(C_2)` is `1/4`
//! for `H1` and `0` for `H2`.
//!
//! `Sp(W') = {1/4, -1/4, 0}` gives `t(C_ell, W') = 4^-ell + (-4)^-ell`, which
//! is `2^(1-2 ell)` for even `ell` and `0` for odd `ell`. Tests use the sum.
//!
//! Because `A` commutes with `J`, `Sp(H1) = {±λ : λ ∈ Sp(A)}` and
//! `Sp(H2) = {±n} ∪ {±iλ}` with `λ` over `Sp(A)` minus one copy of `n`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::digraph::{
    build_h1, build_h2, cycle_digraph, random_regular_graph, trace_power, Digraph,
};
use crate::error::{invalid, Result};
use crate::rng::child_seed;
use crate::spectra::{
    default_tolerance, eigenvalues, hausdorff_to_limit, matching_distance, singular_moment_holds,
    spectrum_from_eigenvalues, step_spectrum, Spectrum,
};
use crate::stepkernel::{collapse, hom_density_pair, hom_density_step, BidirectedStepPair};

/// Cycle lengths reported per digraph.
pub const CYCLE_LENGTHS: [usize; 3] = [2, 3, 4];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DigraphSummary {
    /// Matching distance between the computed spectrum and the predicted one.
    pub spectrum_error: f64,
    /// `t(C_ell)` for `ell` in [`CYCLE_LENGTHS`].
    pub cycle_densities: Vec<f64>,
    pub normalized_hausdorff: f64,
    pub singular_bound: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Section5Row {
    pub n: usize,
    pub seed: u64,
    pub vertices: usize,
    pub h1: DigraphSummary,
    pub h2: DigraphSummary,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Section5Report {
    pub master_seed: u64,
    /// Spectrum of the collapsed kernel `W'`.
    pub limit_spectrum: Spectrum,
    /// `t(C_ell, (W1, W2))` of the two limit pairs, per [`CYCLE_LENGTHS`].
    pub limit_densities_bidirected: Vec<f64>,
    pub limit_densities_oriented: Vec<f64>,
    /// `t(C_ell, W')`, which agrees with both pairs for `ell >= 3` only.
    pub limit_densities_collapsed: Vec<f64>,
    pub rows: Vec<Section5Row>,
}

/// `t(C_ell, G)` from the exact closed-walk count.
fn cycle_density(g: &Digraph, ell: usize) -> Result<f64> {
    Ok(trace_power(g, ell)? as f64 / (g.n() as f64).powi(ell as i32))
}

fn summarize(g: &Digraph, predicted: &[Complex64], limit: &Spectrum) -> Result<DigraphSummary> {
    let adj = g.adjacency_matrix();
    let eig = eigenvalues(&adj)?;
    let spectrum = spectrum_from_eigenvalues(&eig, default_tolerance(&adj))?;
    let n = g.n();
    Ok(DigraphSummary {
        spectrum_error: matching_distance(&eig, predicted)?,
        cycle_densities: CYCLE_LENGTHS
            .iter()
            .map(|&l| cycle_density(g, l))
            .collect::<Result<_>>()?,
        normalized_hausdorff: hausdorff_to_limit(limit, &spectrum.scaled(1.0 / n as f64), n)?,
        singular_bound: singular_moment_holds(&spectrum, n),
    })
}

pub fn section5_example(n_list: &[usize], seed: u64) -> Result<Section5Report> {
    if let Some(&n) = n_list.iter().find(|&&n| n < 2) {
        return Err(invalid(format!("each n must be at least 2, got {n}")));
    }
    let bidirected = BidirectedStepPair::bipartite_bidirected();
    let oriented = BidirectedStepPair::bipartite_oriented();
    let collapsed = collapse(&bidirected);
    let limit = step_spectrum(&collapsed)?;
    let cycles: Vec<Digraph> = CYCLE_LENGTHS
        .iter()
        .map(|&l| cycle_digraph(l))
        .collect::<Result<_>>()?;
    let pair_densities = |p: &BidirectedStepPair| -> Result<Vec<f64>> {
        cycles.iter().map(|c| hom_density_pair(c, p)).collect()
    };

    let mut rows = Vec::with_capacity(n_list.len());
    for (i, &n) in n_list.iter().enumerate() {
        let cell_seed = child_seed(seed, i as u64);
        let a = random_regular_graph(2 * n, n, cell_seed)?;
        let mut lambda: Vec<f64> = eigenvalues(&a.adjacency_matrix())?
            .iter()
            .map(|z| z.re)
            .collect();
        let pm = |l: &[f64], unit: Complex64| -> Vec<Complex64> {
            l.iter().flat_map(|&x| [unit * x, -unit * x]).collect()
        };
        let predicted_h1 = pm(&lambda, Complex64::new(1.0, 0.0));
        // Remove the copy of n belonging to the all-ones vector.
        let top = lambda
            .iter()
            .enumerate()
            .min_by(|x, y| (x.1 - n as f64).abs().total_cmp(&(y.1 - n as f64).abs()))
            .map(|(idx, _)| idx)
            .expect("nonempty spectrum");
        lambda.remove(top);
        let mut predicted_h2 = pm(&lambda, Complex64::new(0.0, 1.0));
        predicted_h2.extend(pm(&[n as f64], Complex64::new(1.0, 0.0)));

        rows.push(Section5Row {
            n,
            seed: cell_seed,
            vertices: 4 * n,
            h1: summarize(&build_h1(&a), &predicted_h1, &limit)?,
            h2: summarize(&build_h2(&a), &predicted_h2, &limit)?,
        });
    }
    Ok(Section5Report {
        master_seed: seed,
        limit_densities_bidirected: pair_densities(&bidirected)?,
        limit_densities_oriented: pair_densities(&oriented)?,
        limit_densities_collapsed: cycles
            .iter()
            .map(|c| hom_density_step(c, &collapsed))
            .collect::<Result<_>>()?,
        limit_spectrum: limit,
        rows,
    })
}

impl Section5Report {
    /// One line per `(n, digraph)`.
    pub fn to_csv(&self) -> String {
        let mut out =
            String::from("n,seed,digraph,spectrum_error,normalized_hausdorff,singular_bound");
        for l in CYCLE_LENGTHS {
            out.push_str(&format!(",t_c{l}"));
        }
        out.push('\n');
        for r in &self.rows {
            for (name, s) in [("H1", &r.h1), ("H2", &r.h2)] {
                out.push_str(&format!(
                    "{},{},{name},{:.16e},{:.16e},{}",
                    r.n, r.seed, s.spectrum_error, s.normalized_hausdorff, s.singular_bound
                ));
                for t in &s.cycle_densities {
                    out.push_str(&format!(",{t:.16e}"));
                }
                out.push('\n');
            }
        }
        out
    }
}
