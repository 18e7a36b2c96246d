//! Step kernels, step digraphons and bidirected step pairs.
//!
//! A step kernel on `k` blocks is a `k x k` value matrix together with block
//! measures `m_1..m_k` (positive, summing to one). It stands for the function
//! on `[0,1]^2` that is constant on `J_i x J_j`, where `J_i` has measure `m_i`.

mod cut;
mod density;
mod io;
mod operator;

pub use cut::{
    common_refinement, cut_distance_perm, cut_metric, cut_norm, CutDistanceBound, CutNorm,
    CUT_DISTANCE_MAX_BLOCKS, CUT_NORM_MAX_BLOCKS, REFINEMENT_MAX_BLOCKS,
};
pub use density::{
    hom_density_pair, hom_density_step, subgraph_density_step, BLOCK_ENUMERATION_BUDGET,
    SUBGRAPH_STEP_MAX_VERTICES,
};
pub use io::KernelDocument;
pub use operator::{collapse, compose_step, nu_convergence_gaps, op_norm_2to2};

use crate::digraph::Digraph;
use crate::error::{invalid, Result};
use crate::matrix::Matrix;

/// Slack allowed on the measure sum and on equality of block structures.
pub const MEASURE_TOLERANCE: f64 = 1e-12;
/// Slack allowed on the digraphon and bidirected-pair inequalities.
const VALUE_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct StepKernel {
    values: Matrix,
    measures: Vec<f64>,
    bound: f64,
}

fn check_measures(measures: &[f64]) -> Result<()> {
    if measures.is_empty() {
        return Err(invalid("a step kernel needs at least one block"));
    }
    if let Some(m) = measures.iter().find(|m| !(m.is_finite() && **m > 0.0)) {
        return Err(invalid(format!("block measure {m} is not positive")));
    }
    let total: f64 = measures.iter().sum();
    if (total - 1.0).abs() > MEASURE_TOLERANCE {
        return Err(invalid(format!("block measures sum to {total}, not 1")));
    }
    Ok(())
}

fn check_square(values: &Matrix, k: usize, what: &str) -> Result<()> {
    if values.rows() != k || values.cols() != k {
        return Err(invalid(format!(
            "{what} is {}x{} but there are {k} blocks",
            values.rows(),
            values.cols()
        )));
    }
    if !values.is_finite() {
        return Err(invalid(format!("{what} has non-finite entries")));
    }
    Ok(())
}

impl StepKernel {
    /// Kernel with `bound` set to the largest absolute value.
    pub fn new(values: Vec<Vec<f64>>, measures: Vec<f64>) -> Result<Self> {
        let k = measures.len();
        if values.len() != k || values.iter().any(|r| r.len() != k) {
            return Err(invalid(format!("values must be {k}x{k}")));
        }
        let values = Matrix::from_rows(&values);
        let bound = values.max_abs();
        Self::from_matrix(values, measures, bound)
    }

    pub fn with_bound(values: Vec<Vec<f64>>, measures: Vec<f64>, bound: f64) -> Result<Self> {
        let k = measures.len();
        if values.len() != k || values.iter().any(|r| r.len() != k) {
            return Err(invalid(format!("values must be {k}x{k}")));
        }
        Self::from_matrix(Matrix::from_rows(&values), measures, bound)
    }

    pub fn from_matrix(values: Matrix, measures: Vec<f64>, bound: f64) -> Result<Self> {
        check_measures(&measures)?;
        check_square(&values, measures.len(), "value matrix")?;
        if !bound.is_finite() || values.max_abs() > bound {
            return Err(invalid(format!(
                "bound {bound} is below max |value| {}",
                values.max_abs()
            )));
        }
        Ok(StepKernel {
            values,
            measures,
            bound,
        })
    }

    /// One-block constant kernel.
    pub fn constant(c: f64) -> Result<Self> {
        Self::new(vec![vec![c]], vec![1.0])
    }

    /// `k` blocks of measure `1/k`.
    pub fn uniform(values: Vec<Vec<f64>>) -> Result<Self> {
        let k = values.len();
        Self::new(values, vec![1.0 / k as f64; k])
    }

    pub fn k(&self) -> usize {
        self.measures.len()
    }

    pub fn measures(&self) -> &[f64] {
        &self.measures
    }

    #[inline]
    pub fn value(&self, i: usize, j: usize) -> f64 {
        self.values[(i, j)]
    }

    pub fn values(&self) -> &Matrix {
        &self.values
    }

    pub fn bound(&self) -> f64 {
        self.bound
    }

    /// `B[i][j] = values[i][j] * measures[j]`; its nonzero eigenvalues are
    /// those of the integral operator.
    pub fn operator_matrix(&self) -> Matrix {
        Matrix::from_fn(self.k(), self.k(), |i, j| {
            self.value(i, j) * self.measures[j]
        })
    }

    pub fn same_structure(&self, other: &StepKernel) -> bool {
        self.k() == other.k()
            && self
                .measures
                .iter()
                .zip(&other.measures)
                .all(|(a, b)| (a - b).abs() <= MEASURE_TOLERANCE)
    }

    /// Entrywise `self - other` on a shared structure; bound is the sum of bounds.
    pub(crate) fn difference(&self, other: &StepKernel) -> StepKernel {
        let k = self.k();
        StepKernel {
            values: Matrix::from_fn(k, k, |i, j| self.value(i, j) - other.value(i, j)),
            measures: self.measures.clone(),
            bound: self.bound + other.bound,
        }
    }

    pub(crate) fn permuted(&self, perm: &[usize]) -> StepKernel {
        let k = self.k();
        StepKernel {
            values: Matrix::from_fn(k, k, |i, j| self.value(perm[i], perm[j])),
            measures: perm.iter().map(|&p| self.measures[p]).collect(),
            bound: self.bound,
        }
    }

    /// Evaluates the kernel at a point of `[0,1]^2`.
    pub fn eval(&self, x: f64, y: f64) -> f64 {
        self.value(self.block_of(x), self.block_of(y))
    }

    fn block_of(&self, x: f64) -> usize {
        let mut acc = 0.0;
        for (i, m) in self.measures.iter().enumerate() {
            acc += m;
            if x < acc {
                return i;
            }
        }
        self.k() - 1
    }
}

/// A step kernel with `W >= 0` and `W(x,y) + W(y,x) <= 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct StepDigraphon(StepKernel);

impl StepDigraphon {
    pub fn new(kernel: StepKernel) -> Result<Self> {
        let k = kernel.k();
        for i in 0..k {
            for j in 0..k {
                let v = kernel.value(i, j);
                if v < 0.0 {
                    return Err(invalid(format!(
                        "digraphon value {v} at ({i},{j}) is negative"
                    )));
                }
                let pair = v + kernel.value(j, i);
                if pair > 1.0 + VALUE_TOLERANCE {
                    return Err(invalid(format!(
                        "W({i},{j}) + W({j},{i}) = {pair} exceeds 1"
                    )));
                }
            }
        }
        Ok(StepDigraphon(kernel))
    }

    pub fn kernel(&self) -> &StepKernel {
        &self.0
    }

    pub fn into_kernel(self) -> StepKernel {
        self.0
    }
}

impl std::ops::Deref for StepDigraphon {
    type Target = StepKernel;

    fn deref(&self) -> &StepKernel {
        &self.0
    }
}

/// Limit object for digraphs that may contain antiparallel pairs:
/// `W1` (symmetric) is the probability of a bidirected pair, `W2` that of a
/// single oriented edge.
#[derive(Debug, Clone, PartialEq)]
pub struct BidirectedStepPair {
    w1: Matrix,
    w2: Matrix,
    measures: Vec<f64>,
}

impl BidirectedStepPair {
    pub fn new(w1: Vec<Vec<f64>>, w2: Vec<Vec<f64>>, measures: Vec<f64>) -> Result<Self> {
        let k = measures.len();
        let shape_ok = |m: &Vec<Vec<f64>>| m.len() == k && m.iter().all(|r| r.len() == k);
        if !shape_ok(&w1) || !shape_ok(&w2) {
            return Err(invalid(format!("W1 and W2 must be {k}x{k}")));
        }
        Self::from_matrices(Matrix::from_rows(&w1), Matrix::from_rows(&w2), measures)
    }

    pub fn from_matrices(w1: Matrix, w2: Matrix, measures: Vec<f64>) -> Result<Self> {
        check_measures(&measures)?;
        let k = measures.len();
        check_square(&w1, k, "W1")?;
        check_square(&w2, k, "W2")?;
        for i in 0..k {
            for j in 0..k {
                let (a, b) = (w1[(i, j)], w2[(i, j)]);
                if !(0.0..=1.0).contains(&a) || !(0.0..=1.0).contains(&b) {
                    return Err(invalid(format!("W1/W2 entries at ({i},{j}) leave [0,1]")));
                }
                if (a - w1[(j, i)]).abs() > VALUE_TOLERANCE {
                    return Err(invalid(format!("W1 is not symmetric at ({i},{j})")));
                }
                let total = a + b + w2[(j, i)];
                if total > 1.0 + VALUE_TOLERANCE {
                    return Err(invalid(format!(
                        "W1 + W2 + W2^T = {total} exceeds 1 at ({i},{j})"
                    )));
                }
            }
        }
        Ok(BidirectedStepPair { w1, w2, measures })
    }

    pub fn k(&self) -> usize {
        self.measures.len()
    }

    pub fn measures(&self) -> &[f64] {
        &self.measures
    }

    #[inline]
    pub fn w1(&self, i: usize, j: usize) -> f64 {
        self.w1[(i, j)]
    }

    #[inline]
    pub fn w2(&self, i: usize, j: usize) -> f64 {
        self.w2[(i, j)]
    }

    pub fn w1_matrix(&self) -> &Matrix {
        &self.w1
    }

    pub fn w2_matrix(&self) -> &Matrix {
        &self.w2
    }

    /// Limit of the two-copy digraphs whose cross pairs are bidirected
    /// with density 1/2: `W1 = 1/2` between the two halves, `W2 = 0`.
    pub fn bipartite_bidirected() -> Self {
        let half = vec![vec![0.0, 0.5], vec![0.5, 0.0]];
        let zero = vec![vec![0.0; 2]; 2];
        Self::new(half, zero, vec![0.5, 0.5]).expect("valid pair")
    }

    /// Limit of the two-copy digraphs whose cross pairs carry one oriented
    /// edge: `W1 = 0`, `W2 = 1/2` between the halves in both directions.
    pub fn bipartite_oriented() -> Self {
        let half = vec![vec![0.0, 0.5], vec![0.5, 0.0]];
        let zero = vec![vec![0.0; 2]; 2];
        Self::new(zero, half, vec![0.5, 0.5]).expect("valid pair")
    }
}

/// The `|G|`-block digraphon of a digraph: equal blocks, values = adjacency.
///
/// Digraphs containing an antiparallel pair have no digraphon; use
/// [`step_pair_from_digraph`] for them.
pub fn step_from_digraph(g: &Digraph) -> Result<StepDigraphon> {
    if let Some((u, v)) = g.first_antiparallel_pair() {
        return Err(invalid(format!(
            "digraph has antiparallel pair {u}<->{v}; use step_pair_from_digraph"
        )));
    }
    let n = g.n();
    let values = Matrix::from_fn(n, n, |i, j| if g.has_edge(i, j) { 1.0 } else { 0.0 });
    let bound = values.max_abs();
    StepDigraphon::new(StepKernel::from_matrix(
        values,
        vec![1.0 / n as f64; n],
        bound,
    )?)
}

/// Splits a digraph into its bidirected part `W1` and oriented part `W2`.
pub fn step_pair_from_digraph(g: &Digraph) -> Result<BidirectedStepPair> {
    let n = g.n();
    let both = |i: usize, j: usize| g.has_edge(i, j) && g.has_edge(j, i);
    let w1 = Matrix::from_fn(n, n, |i, j| if both(i, j) { 1.0 } else { 0.0 });
    let w2 = Matrix::from_fn(n, n, |i, j| {
        if g.has_edge(i, j) && !g.has_edge(j, i) {
            1.0
        } else {
            0.0
        }
    });
    BidirectedStepPair::from_matrices(w1, w2, vec![1.0 / n as f64; n])
}
