//! Complex spectra with algebraic multiplicities.
//!
//! Eigenvalues come from the dense solver in [`eigenvalues`] and are turned
//! into `(value, multiplicity)` pairs by single-linkage clustering.
//!
//! The spectrum of a kernel operator always contains `0`, even when `0` is
//! not an eigenvalue. [`Spectrum`] keeps this as a separate flag: the points
//! list holds eigenvalues only, and a flagged spectrum without a zero
//! eigenvalue still counts `0` as a spectral point.
//!
//! # CSV format
//!
//! Header `re,im,mult`, one row per point with floats printed in `{:.16e}`.
//! A row `0,0,0` (multiplicity zero) marks a flagged zero spectral point
//! that is not an eigenvalue. Lines starting with `#` are comments.

mod compare;
mod eigen;
mod matching;

pub use compare::{
    hausdorff_distance, hausdorff_to_limit, isolation_radius, limit_point_set, multiplicity_match,
    MultiplicityLedger,
};
pub use eigen::{eigenvalues, SWEEPS_PER_ROW};
pub use matching::matching_distance;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::digraph::Digraph;
use crate::error::{invalid, Error, Result};
use crate::matrix::Matrix;
use crate::stepkernel::StepKernel;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpectralPoint {
    pub value: Complex64,
    pub mult: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Spectrum {
    points: Vec<SpectralPoint>,
    includes_zero_spectral_point: bool,
}

/// `max(1e-7, 1e-8 * n * ||M||_inf)`.
pub fn default_tolerance(m: &Matrix) -> f64 {
    (1e-8 * m.rows() as f64 * m.norm_inf()).max(1e-7)
}

fn order(a: &Complex64, b: &Complex64) -> std::cmp::Ordering {
    b.re.total_cmp(&a.re).then(b.im.total_cmp(&a.im))
}

impl Spectrum {
    pub fn new(mut points: Vec<SpectralPoint>, includes_zero_spectral_point: bool) -> Result<Self> {
        if let Some(p) = points.iter().find(|p| p.mult == 0) {
            return Err(invalid(format!(
                "spectral point {} has multiplicity 0",
                p.value
            )));
        }
        if points
            .iter()
            .any(|p| !(p.value.re.is_finite() && p.value.im.is_finite()))
        {
            return Err(invalid("spectral points must be finite"));
        }
        points.sort_by(|a, b| order(&a.value, &b.value));
        Ok(Spectrum {
            points,
            includes_zero_spectral_point,
        })
    }

    pub fn points(&self) -> &[SpectralPoint] {
        &self.points
    }

    pub fn includes_zero_spectral_point(&self) -> bool {
        self.includes_zero_spectral_point
    }

    pub fn total_multiplicity(&self) -> usize {
        self.points.iter().map(|p| p.mult).sum()
    }

    /// Points other than an exact zero eigenvalue.
    pub fn nonzero_points(&self) -> impl Iterator<Item = &SpectralPoint> + '_ {
        self.points
            .iter()
            .filter(|p| p.value != Complex64::new(0.0, 0.0))
    }

    pub fn nonzero_mass(&self) -> usize {
        self.nonzero_points().map(|p| p.mult).sum()
    }

    /// Eigenvalues repeated by multiplicity.
    pub fn flattened(&self) -> Vec<Complex64> {
        self.points
            .iter()
            .flat_map(|p| std::iter::repeat_n(p.value, p.mult))
            .collect()
    }

    /// `Σ mult * λ^ell`.
    pub fn power_sum(&self, ell: u32) -> Complex64 {
        self.points
            .iter()
            .map(|p| p.value.powu(ell) * p.mult as f64)
            .sum()
    }

    /// Every point multiplied by `c`.
    pub fn scaled(&self, c: f64) -> Spectrum {
        let mut points: Vec<SpectralPoint> = self
            .points
            .iter()
            .map(|p| SpectralPoint {
                value: p.value * c,
                mult: p.mult,
            })
            .collect();
        points.sort_by(|a, b| order(&a.value, &b.value));
        Spectrum {
            points,
            includes_zero_spectral_point: self.includes_zero_spectral_point,
        }
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("re,im,mult\n");
        for p in &self.points {
            out.push_str(&format!(
                "{:.16e},{:.16e},{}\n",
                p.value.re, p.value.im, p.mult
            ));
        }
        let zero_listed = self
            .points
            .iter()
            .any(|p| p.value == Complex64::new(0.0, 0.0));
        if self.includes_zero_spectral_point && !zero_listed {
            out.push_str("0,0,0\n");
        }
        out
    }

    pub fn from_csv(text: &str) -> Result<Self> {
        let schema = |m: String| Error::Schema(format!("spectrum CSV: {m}"));
        let mut lines = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'));
        if lines.next() != Some("re,im,mult") {
            return Err(schema("missing header re,im,mult".into()));
        }
        let mut points = Vec::new();
        let mut zero_flag = false;
        for line in lines {
            let fields: Vec<&str> = line.split(',').collect();
            let [re, im, mult] = fields[..] else {
                return Err(schema(format!("bad row {line:?}")));
            };
            let parse = |x: &str| {
                x.parse::<f64>()
                    .map_err(|_| schema(format!("bad number {x:?}")))
            };
            let value = Complex64::new(parse(re)?, parse(im)?);
            let mult: usize = mult
                .parse()
                .map_err(|_| schema(format!("bad multiplicity {mult:?}")))?;
            if value == Complex64::new(0.0, 0.0) {
                zero_flag = true;
            }
            if mult > 0 {
                points.push(SpectralPoint { value, mult });
            } else if value != Complex64::new(0.0, 0.0) {
                return Err(schema(format!("multiplicity 0 on nonzero point {line:?}")));
            }
        }
        Spectrum::new(points, zero_flag)
    }
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn find(&mut self, mut x: usize) -> usize {
        while self.0[x] != x {
            self.0[x] = self.0[self.0[x]];
            x = self.0[x];
        }
        x
    }

    /// Returns whether the two were in different sets.
    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.0[hi] = lo;
        true
    }
}

/// Groups points into clusters: single linkage at radius `tol`, then
/// clusters whose centroids lie within `tol` are merged until all centroids
/// are more than `tol` apart.
///
/// A cluster closed under conjugation gets a real centroid. The zero flag of
/// the result is false.
pub fn cluster_multiplicities(points: &[Complex64], tol: f64) -> Result<Spectrum> {
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(invalid(format!(
            "clustering tolerance must be positive, got {tol}"
        )));
    }
    let n = points.len();
    let mut uf = UnionFind((0..n).collect());
    for i in 0..n {
        for j in i + 1..n {
            if (points[i] - points[j]).norm() <= tol {
                uf.union(i, j);
            }
        }
    }
    loop {
        let clusters = collect_clusters(&mut uf, points);
        let mut merged = false;
        for a in 0..clusters.len() {
            for b in a + 1..clusters.len() {
                if (clusters[a].1 - clusters[b].1).norm() <= tol {
                    merged |= uf.union(clusters[a].0[0], clusters[b].0[0]);
                }
            }
        }
        if !merged {
            let pts = clusters
                .into_iter()
                .map(|(members, value)| SpectralPoint {
                    value,
                    mult: members.len(),
                })
                .collect();
            return Spectrum::new(pts, false);
        }
    }
}

/// Members and centroid of each cluster, in order of first member.
fn collect_clusters(uf: &mut UnionFind, points: &[Complex64]) -> Vec<(Vec<usize>, Complex64)> {
    let mut by_root: Vec<Vec<usize>> = vec![Vec::new(); points.len()];
    for i in 0..points.len() {
        let r = uf.find(i);
        by_root[r].push(i);
    }
    by_root
        .into_iter()
        .filter(|m| !m.is_empty())
        .map(|members| {
            let vals: Vec<Complex64> = members.iter().map(|&i| points[i]).collect();
            let mut c = vals.iter().sum::<Complex64>() / vals.len() as f64;
            if conjugate_closed(&vals) {
                c.im = 0.0;
            }
            (members, c)
        })
        .collect()
}

fn conjugate_closed(vals: &[Complex64]) -> bool {
    let key = |z: &Complex64| (z.re.to_bits(), z.im.abs().to_bits());
    let mut upper: Vec<_> = vals.iter().filter(|z| z.im > 0.0).map(key).collect();
    let mut lower: Vec<_> = vals.iter().filter(|z| z.im < 0.0).map(key).collect();
    upper.sort_unstable();
    lower.sort_unstable();
    upper == lower
}

/// Clustered eigenvalues of a matrix. The zero flag is set when a cluster
/// lies within `tol` of the origin; that cluster's value is set to exactly 0.
pub fn matrix_spectrum(m: &Matrix, tol: f64) -> Result<Spectrum> {
    spectrum_from_eigenvalues(&eigenvalues(m)?, tol)
}

/// As [`matrix_spectrum`], for eigenvalues already computed.
pub fn spectrum_from_eigenvalues(eig: &[Complex64], tol: f64) -> Result<Spectrum> {
    let mut s = cluster_multiplicities(eig, tol)?;
    for p in &mut s.points {
        if p.value.norm() <= tol {
            p.value = Complex64::new(0.0, 0.0);
            s.includes_zero_spectral_point = true;
        }
    }
    s.points.sort_by(|a, b| order(&a.value, &b.value));
    Ok(s)
}

/// Spectrum of the adjacency matrix at the default tolerance.
pub fn digraph_spectrum(g: &Digraph) -> Result<Spectrum> {
    let a = g.adjacency_matrix();
    matrix_spectrum(&a, default_tolerance(&a))
}

pub fn digraph_spectrum_with_tol(g: &Digraph, tol: f64) -> Result<Spectrum> {
    matrix_spectrum(&g.adjacency_matrix(), tol)
}

/// `Sp(G) / |G|`, clustered before scaling.
pub fn normalized_spectrum(g: &Digraph) -> Result<Spectrum> {
    Ok(digraph_spectrum(g)?.scaled(1.0 / g.n() as f64))
}

pub fn normalized_spectrum_with_tol(g: &Digraph, tol: f64) -> Result<Spectrum> {
    Ok(digraph_spectrum_with_tol(g, tol)?.scaled(1.0 / g.n() as f64))
}

/// Nonzero eigenvalues of `B = values * diag(measures)`, with the zero
/// spectral point always flagged.
pub fn step_spectrum(w: &StepKernel) -> Result<Spectrum> {
    let b = w.operator_matrix();
    step_spectrum_with_tol(w, default_tolerance(&b))
}

pub fn step_spectrum_with_tol(w: &StepKernel, tol: f64) -> Result<Spectrum> {
    let mut s = matrix_spectrum(&w.operator_matrix(), tol)?;
    s.points.retain(|p| p.value != Complex64::new(0.0, 0.0));
    s.includes_zero_spectral_point = true;
    Ok(s)
}

/// `Σ m_G(λ)|λ|^2 <= |G|^2`.
pub fn singular_moment_bound(g: &Digraph) -> Result<bool> {
    Ok(singular_moment_holds(&digraph_spectrum(g)?, g.n()))
}

/// The same inequality for an already computed (unnormalized) spectrum.
pub fn singular_moment_holds(s: &Spectrum, n: usize) -> bool {
    let lhs: f64 = s
        .points
        .iter()
        .map(|p| p.mult as f64 * p.value.norm_sqr())
        .sum();
    lhs <= (n * n) as f64
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::digraph::cycle_digraph;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn forced_merge() {
        let s =
            cluster_multiplicities(&[c(1.0, 0.0), c(1.0 + 1e-12, 0.0), c(2.0, 0.0)], 1e-8).unwrap();
        assert_eq!(s.points().len(), 2);
        assert_eq!(s.points()[0].mult, 1);
        assert_eq!(s.points()[1].mult, 2);
        assert!((s.points()[1].value.re - 1.0).abs() < 1e-11);
        let same = cluster_multiplicities(&[c(0.5, 0.5); 4], 1e-8).unwrap();
        assert_eq!(same.points().len(), 1);
        assert_eq!(same.points()[0].mult, 4);
        assert!(cluster_multiplicities(&[c(0.0, 0.0)], 0.0).is_err());
    }

    #[test]
    fn chained_centroids_merge() {
        // Single linkage gives {0, 1} and {2}; their centroids are 0.9 apart.
        let pts = [c(-0.5, 0.0), c(0.5, 0.0), c(0.0, 0.9)];
        let s = cluster_multiplicities(&pts, 1.0).unwrap();
        assert_eq!(s.points().len(), 1);
        assert_eq!(s.total_multiplicity(), 3);
    }

    #[test]
    fn conjugate_clusters_are_real() {
        let pts = [c(1.0, 1e-9), c(1.0, -1e-9)];
        let s = cluster_multiplicities(&pts, 1e-7).unwrap();
        assert_eq!(s.points()[0].value, c(1.0, 0.0));
    }

    #[test]
    fn normalized_four_cycle() {
        let s = normalized_spectrum(&cycle_digraph(4).unwrap()).unwrap();
        let want = [c(0.25, 0.0), c(0.0, 0.25), c(0.0, -0.25), c(-0.25, 0.0)];
        assert_eq!(s.points().len(), 4);
        for (p, w) in s.points().iter().zip(want) {
            assert!((p.value - w).norm() < 1e-12, "{} vs {w}", p.value);
            assert_eq!(p.mult, 1);
        }
        assert!(!s.includes_zero_spectral_point());
    }

    #[test]
    fn empty_digraph() {
        let s = digraph_spectrum(&Digraph::empty(5).unwrap()).unwrap();
        assert_eq!(
            s.points(),
            &[SpectralPoint {
                value: c(0.0, 0.0),
                mult: 5
            }]
        );
        assert!(s.includes_zero_spectral_point());
        assert!(singular_moment_bound(&Digraph::empty(5).unwrap()).unwrap());
    }

    #[test]
    fn step_spectra() {
        let w = StepKernel::uniform(vec![vec![0.0, 0.5], vec![0.5, 0.0]]).unwrap();
        let s = step_spectrum(&w).unwrap();
        assert!(s.includes_zero_spectral_point());
        assert_eq!(s.points().len(), 2);
        assert!((s.points()[0].value - c(0.25, 0.0)).norm() < 1e-15);
        assert!((s.points()[1].value - c(-0.25, 0.0)).norm() < 1e-15);

        let p = step_spectrum(&StepKernel::constant(0.3).unwrap()).unwrap();
        assert_eq!(
            p.points(),
            &[SpectralPoint {
                value: c(0.3, 0.0),
                mult: 1
            }]
        );
        let z = step_spectrum(&StepKernel::constant(0.0).unwrap()).unwrap();
        assert!(z.points().is_empty() && z.includes_zero_spectral_point());
    }

    #[test]
    fn cycles_meet_moment_bound() {
        for len in 3..10 {
            assert!(singular_moment_bound(&cycle_digraph(len).unwrap()).unwrap());
        }
    }

    #[test]
    fn csv_round_trip() {
        let w = StepKernel::uniform(vec![vec![0.0, 0.5], vec![0.5, 0.0]]).unwrap();
        let s = step_spectrum(&w).unwrap();
        let text = s.to_csv();
        assert!(text.ends_with("0,0,0\n"));
        assert_eq!(Spectrum::from_csv(&text).unwrap(), s);

        let d = digraph_spectrum(&Digraph::empty(3).unwrap()).unwrap();
        assert_eq!(Spectrum::from_csv(&d.to_csv()).unwrap(), d);
        let c4 = digraph_spectrum(&cycle_digraph(4).unwrap()).unwrap();
        assert_eq!(Spectrum::from_csv(&c4.to_csv()).unwrap(), c4);
        assert!(Spectrum::from_csv("re,im\n1,2\n").is_err());
        assert!(Spectrum::from_csv("re,im,mult\n1,0,0\n").is_err());
    }
}
