//! Random digraph models: W-random digraphs from step digraphons and
//! bidirected pairs, random regular graphs, and the two-copy constructions
//! built on top of them.

use rand::seq::SliceRandom;
use rand::Rng as _;

use super::Digraph;
use crate::error::{invalid, Error, Result};
use crate::matrix::Matrix;
use crate::rng::{rng_from_seed, Rng};
use crate::stepkernel::{BidirectedStepPair, StepDigraphon};

/// Restart budget of the pairing model.
pub const PAIRING_RESTART_BUDGET: usize = 10_000;

/// Draws a block label for each of `n` vertices with probabilities equal to
/// the block measures.
fn block_labels(measures: &[f64], n: usize, rng: &mut Rng) -> Vec<usize> {
    let mut cumulative = Vec::with_capacity(measures.len());
    let mut acc = 0.0;
    for &m in measures {
        acc += m;
        cumulative.push(acc);
    }
    let last = measures.len() - 1;
    (0..n)
        .map(|_| {
            let u: f64 = rng.random::<f64>() * acc;
            cumulative.iter().position(|&c| u < c).unwrap_or(last)
        })
        .collect()
}

/// `n`-vertex W-random digraph.
///
/// Each unordered pair `i < j` gets `i -> j` with probability `W(x_i, x_j)`,
/// `j -> i` with probability `W(x_j, x_i)`, and no edge otherwise.
pub fn sample_w_random(w: &StepDigraphon, n: usize, seed: u64) -> Result<Digraph> {
    if n == 0 {
        return Err(invalid("sample size must be at least 1"));
    }
    let mut rng = rng_from_seed(seed);
    let labels = block_labels(w.measures(), n, &mut rng);
    let mut adj = vec![0u8; n * n];
    for i in 0..n {
        for j in i + 1..n {
            let forward = w.value(labels[i], labels[j]);
            let backward = w.value(labels[j], labels[i]);
            let u: f64 = rng.random();
            if u < forward {
                adj[i * n + j] = 1;
            } else if u < forward + backward {
                adj[j * n + i] = 1;
            }
        }
    }
    Ok(Digraph::from_raw(n, adj, false))
}

/// `n`-vertex random digraph from a bidirected pair `(W1, W2)`.
///
/// Per unordered pair: both orientations with probability `W1`, a single
/// edge either way with probabilities `W2(x_i,x_j)` and `W2(x_j,x_i)`.
pub fn sample_bidirected_random(p: &BidirectedStepPair, n: usize, seed: u64) -> Result<Digraph> {
    if n == 0 {
        return Err(invalid("sample size must be at least 1"));
    }
    let mut rng = rng_from_seed(seed);
    let labels = block_labels(p.measures(), n, &mut rng);
    let mut adj = vec![0u8; n * n];
    for i in 0..n {
        for j in i + 1..n {
            let (a, b) = (labels[i], labels[j]);
            let both = p.w1(a, b);
            let forward = both + p.w2(a, b);
            let backward = forward + p.w2(b, a);
            let u: f64 = rng.random();
            if u < both {
                adj[i * n + j] = 1;
                adj[j * n + i] = 1;
            } else if u < forward {
                adj[i * n + j] = 1;
            } else if u < backward {
                adj[j * n + i] = 1;
            }
        }
    }
    Ok(Digraph::from_raw(n, adj, true))
}

/// A simple undirected `degree`-regular graph on `n2` vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UndirectedRegularGraph {
    n2: usize,
    degree: usize,
    adj: Vec<u8>,
}

impl UndirectedRegularGraph {
    pub fn n2(&self) -> usize {
        self.n2
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u * self.n2 + v] != 0
    }

    pub fn adjacency_matrix(&self) -> Matrix {
        Matrix::from_fn(self.n2, self.n2, |i, j| {
            f64::from(self.adj[i * self.n2 + j])
        })
    }

    fn from_edges(n2: usize, degree: usize, edges: &[(usize, usize)]) -> Self {
        let mut adj = vec![0u8; n2 * n2];
        for &(u, v) in edges {
            adj[u * n2 + v] = 1;
            adj[v * n2 + u] = 1;
        }
        UndirectedRegularGraph { n2, degree, adj }
    }
}

/// Random `degree`-regular simple graph on `n2` vertices.
///
/// Small degrees use the pairing (configuration) model with a full restart
/// whenever a loop or a repeated pair appears. For larger degrees the
/// pairing model essentially never yields a simple graph (the acceptance
/// probability decays like `exp(-(d^2-1)/4)`), so the graph is produced by
/// a long run of random double-edge swaps started from a circulant graph.
/// Neither route is exactly uniform.
pub fn random_regular_graph(n2: usize, degree: usize, seed: u64) -> Result<UndirectedRegularGraph> {
    if n2 == 0 || !n2.is_multiple_of(2) {
        return Err(invalid(format!(
            "vertex count must be even and positive, got {n2}"
        )));
    }
    if degree == 0 || degree >= n2 {
        return Err(invalid(format!(
            "degree must satisfy 1 <= degree < {n2}, got {degree}"
        )));
    }
    let mut rng = rng_from_seed(seed);
    let expected_restarts = ((degree * degree) as f64 - 1.0) / 4.0;
    let edges = if expected_restarts.exp() * 10.0 <= PAIRING_RESTART_BUDGET as f64 {
        pairing_model(n2, degree, &mut rng)?
    } else {
        switch_chain(n2, degree, &mut rng)
    };
    Ok(UndirectedRegularGraph::from_edges(n2, degree, &edges))
}

fn pairing_model(n2: usize, degree: usize, rng: &mut Rng) -> Result<Vec<(usize, usize)>> {
    let mut points: Vec<usize> = (0..n2)
        .flat_map(|v| std::iter::repeat_n(v, degree))
        .collect();
    let mut seen = vec![false; n2 * n2];
    'attempt: for _ in 0..PAIRING_RESTART_BUDGET {
        points.shuffle(rng);
        seen.iter_mut().for_each(|x| *x = false);
        let mut edges = Vec::with_capacity(points.len() / 2);
        for pair in points.chunks_exact(2) {
            let (u, v) = (pair[0].min(pair[1]), pair[0].max(pair[1]));
            if u == v || seen[u * n2 + v] {
                continue 'attempt;
            }
            seen[u * n2 + v] = true;
            edges.push((u, v));
        }
        return Ok(edges);
    }
    Err(Error::GenerationFailure(format!(
        "pairing model found no simple {degree}-regular graph on {n2} vertices in {PAIRING_RESTART_BUDGET} attempts"
    )))
}

fn switch_chain(n2: usize, degree: usize, rng: &mut Rng) -> Vec<(usize, usize)> {
    let mut adj = vec![false; n2 * n2];
    let mut edges = Vec::with_capacity(n2 * degree / 2);
    let add = |u: usize, v: usize, adj: &mut Vec<bool>, edges: &mut Vec<(usize, usize)>| {
        if !adj[u * n2 + v] {
            adj[u * n2 + v] = true;
            adj[v * n2 + u] = true;
            edges.push((u, v));
        }
    };
    for u in 0..n2 {
        for s in 1..=degree / 2 {
            add(u, (u + s) % n2, &mut adj, &mut edges);
        }
        if degree % 2 == 1 {
            add(u, (u + n2 / 2) % n2, &mut adj, &mut edges);
        }
    }
    debug_assert_eq!(edges.len(), n2 * degree / 2);

    let m = edges.len();
    let swaps = 10 * n2 * degree;
    for _ in 0..swaps {
        let i = rng.random_range(0..m);
        let j = rng.random_range(0..m);
        if i == j {
            continue;
        }
        let (a, b) = edges[i];
        let (mut c, mut d) = edges[j];
        if rng.random::<bool>() {
            std::mem::swap(&mut c, &mut d);
        }
        // (a,b),(c,d) -> (a,d),(c,b)
        if a == d || c == b || adj[a * n2 + d] || adj[c * n2 + b] {
            continue;
        }
        adj[a * n2 + b] = false;
        adj[b * n2 + a] = false;
        adj[c * n2 + d] = false;
        adj[d * n2 + c] = false;
        adj[a * n2 + d] = true;
        adj[d * n2 + a] = true;
        adj[c * n2 + b] = true;
        adj[b * n2 + c] = true;
        edges[i] = (a, d);
        edges[j] = (c, b);
    }
    edges
}

/// Two copies of the vertex set with an antiparallel pair across every edge:
/// adjacency `[[0, A], [A, 0]]`.
pub fn build_h1(a: &UndirectedRegularGraph) -> Digraph {
    let m = a.n2();
    let n = 2 * m;
    let mut adj = vec![0u8; n * n];
    for i in 0..m {
        for j in 0..m {
            if a.has_edge(i, j) {
                adj[i * n + m + j] = 1;
                adj[(m + i) * n + j] = 1;
            }
        }
    }
    Digraph::from_raw(n, adj, true)
}

/// Two copies with edges first -> second along `A` and second -> first
/// along the complement including the diagonal: adjacency `[[0, A], [J-A, 0]]`.
pub fn build_h2(a: &UndirectedRegularGraph) -> Digraph {
    let m = a.n2();
    let n = 2 * m;
    let mut adj = vec![0u8; n * n];
    for i in 0..m {
        for j in 0..m {
            if a.has_edge(i, j) {
                adj[i * n + m + j] = 1;
            } else {
                adj[(m + i) * n + j] = 1;
            }
        }
    }
    Digraph::from_raw(n, adj, false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stepkernel::StepKernel;

    fn check_regular(g: &UndirectedRegularGraph) {
        let n = g.n2();
        for u in 0..n {
            assert!(!g.has_edge(u, u));
            assert_eq!((0..n).filter(|&v| g.has_edge(u, v)).count(), g.degree());
            for v in 0..n {
                assert_eq!(g.has_edge(u, v), g.has_edge(v, u));
            }
        }
    }

    #[test]
    fn perfect_matching() {
        for seed in 0..10 {
            let g = random_regular_graph(4, 1, seed).unwrap();
            check_regular(&g);
        }
    }

    #[test]
    fn half_degree_regular_graphs() {
        for (n, seed) in [(2, 0), (5, 1), (20, 2), (33, 3)] {
            let g = random_regular_graph(2 * n, n, seed).unwrap();
            check_regular(&g);
        }
        for (n2, d) in [(10, 3), (12, 5), (14, 7)] {
            check_regular(&random_regular_graph(n2, d, 9).unwrap());
        }
    }

    #[test]
    fn regular_graph_arguments() {
        assert!(random_regular_graph(5, 2, 0).is_err());
        assert!(random_regular_graph(4, 4, 0).is_err());
        assert!(random_regular_graph(4, 0, 0).is_err());
        assert_eq!(
            random_regular_graph(30, 3, 5).unwrap(),
            random_regular_graph(30, 3, 5).unwrap()
        );
    }

    #[test]
    fn two_copy_constructions() {
        let a = random_regular_graph(10, 5, 3).unwrap();
        let h1 = build_h1(&a);
        let h2 = build_h2(&a);
        assert_eq!(h1.n(), 20);
        assert_eq!(h2.n(), 20);
        for u in 0..20 {
            assert!(!h1.has_edge(u, u));
            for v in 0..20 {
                assert_eq!(h1.has_edge(u, v), h1.has_edge(v, u));
                assert!(!(h2.has_edge(u, v) && h2.has_edge(v, u)));
            }
        }
        assert_eq!(h1.antiparallel_ordered_pairs(), 2 * 10 * 5);
        assert_eq!(h2.edge_count(), 10 * 5 + (100 - 50));
    }

    #[test]
    fn zero_kernel_samples_are_empty() {
        let w = StepDigraphon::new(StepKernel::constant(0.0).unwrap()).unwrap();
        for seed in 0..5 {
            assert_eq!(sample_w_random(&w, 30, seed).unwrap().edge_count(), 0);
        }
        assert!(sample_w_random(&w, 0, 0).is_err());
    }

    #[test]
    fn forced_orientation() {
        let w = StepDigraphon::new(
            StepKernel::new(vec![vec![0.0, 1.0], vec![0.0, 0.0]], vec![0.5, 0.5]).unwrap(),
        )
        .unwrap();
        let g = sample_w_random(&w, 60, 4).unwrap();
        // Out-vertices and in-vertices are disjoint and every cross pair is joined.
        let sources: Vec<usize> = (0..60).filter(|&v| g.out_degree(v) > 0).collect();
        for (u, v) in g.edges() {
            assert_eq!(g.in_degree(u), 0);
            assert_eq!(g.out_degree(v), 0);
        }
        let sinks = (0..60).filter(|&v| g.in_degree(v) > 0).count();
        assert_eq!(g.edge_count(), sources.len() * sinks);
    }

    #[test]
    fn same_seed_same_sample() {
        let w = StepDigraphon::new(StepKernel::constant(0.5).unwrap()).unwrap();
        assert_eq!(
            sample_w_random(&w, 50, 8).unwrap(),
            sample_w_random(&w, 50, 8).unwrap()
        );
        assert_ne!(
            sample_w_random(&w, 50, 8).unwrap(),
            sample_w_random(&w, 50, 9).unwrap()
        );
    }
}
