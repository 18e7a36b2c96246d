//! Finite digraphs stored as dense 0/1 adjacency matrices.

mod density;
mod io;
mod random;

pub(crate) use density::automorphism_count;
pub use density::{
    hom_count, hom_density, hom_density_sampled, subgraph_density, trace_power, DensityEstimate,
    HOM_DENSITY_MAX_VERTICES, HOM_ENUMERATION_BUDGET, SUBGRAPH_DENSITY_MAX_VERTICES,
    SUBGRAPH_ENUMERATION_BUDGET,
};
pub use random::{
    build_h1, build_h2, random_regular_graph, sample_bidirected_random, sample_w_random,
    UndirectedRegularGraph, PAIRING_RESTART_BUDGET,
};

use crate::error::{invalid, Result};
use crate::matrix::Matrix;

/// A loopless digraph on vertices `0..n`.
///
/// Unless `allow_bidirected` is set, no pair of vertices carries edges in
/// both directions.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Digraph {
    n: usize,
    adj: Vec<u8>,
    allow_bidirected: bool,
}

impl Digraph {
    /// Edgeless digraph on `n >= 1` vertices.
    pub fn empty(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(invalid("a digraph needs at least one vertex"));
        }
        Ok(Digraph {
            n,
            adj: vec![0; n * n],
            allow_bidirected: false,
        })
    }

    pub fn from_edges(
        n: usize,
        edges: impl IntoIterator<Item = (usize, usize)>,
        allow_bidirected: bool,
    ) -> Result<Self> {
        let mut g = Self::empty(n)?;
        g.allow_bidirected = allow_bidirected;
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(invalid(format!("edge ({u},{v}) out of range for n = {n}")));
            }
            if u == v {
                return Err(invalid(format!("loop at vertex {u}")));
            }
            g.adj[u * n + v] = 1;
        }
        g.check_orientation()?;
        Ok(g)
    }

    /// Builds a digraph from a 0/1 row-major adjacency matrix.
    pub fn from_adjacency(rows: &[Vec<u8>], allow_bidirected: bool) -> Result<Self> {
        let n = rows.len();
        let mut edges = Vec::new();
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(invalid("adjacency matrix is not square"));
            }
            for (j, &x) in row.iter().enumerate() {
                match x {
                    0 => {}
                    1 => edges.push((i, j)),
                    _ => return Err(invalid(format!("adjacency entry {x} is not 0/1"))),
                }
            }
        }
        Self::from_edges(n, edges, allow_bidirected)
    }

    pub(crate) fn from_raw(n: usize, adj: Vec<u8>, allow_bidirected: bool) -> Self {
        debug_assert_eq!(adj.len(), n * n);
        Digraph {
            n,
            adj,
            allow_bidirected,
        }
    }

    fn check_orientation(&self) -> Result<()> {
        if self.allow_bidirected {
            return Ok(());
        }
        if let Some((u, v)) = self.first_antiparallel_pair() {
            return Err(invalid(format!(
                "antiparallel pair {u}<->{v} but allow_bidirected is false"
            )));
        }
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn allow_bidirected(&self) -> bool {
        self.allow_bidirected
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u * self.n + v] != 0
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let n = self.n;
        self.adj
            .iter()
            .enumerate()
            .filter(|(_, &x)| x != 0)
            .map(move |(idx, _)| (idx / n, idx % n))
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().filter(|&&x| x != 0).count()
    }

    pub fn first_antiparallel_pair(&self) -> Option<(usize, usize)> {
        (0..self.n)
            .flat_map(|u| (u + 1..self.n).map(move |v| (u, v)))
            .find(|&(u, v)| self.has_edge(u, v) && self.has_edge(v, u))
    }

    pub fn has_antiparallel_pair(&self) -> bool {
        self.first_antiparallel_pair().is_some()
    }

    /// Number of ordered pairs `(u, v)` with both `u -> v` and `v -> u`.
    pub fn antiparallel_ordered_pairs(&self) -> usize {
        self.edges().filter(|&(u, v)| self.has_edge(v, u)).count()
    }

    pub fn out_degree(&self, u: usize) -> usize {
        self.adj[u * self.n..(u + 1) * self.n]
            .iter()
            .filter(|&&x| x != 0)
            .count()
    }

    pub fn in_degree(&self, v: usize) -> usize {
        (0..self.n).filter(|&u| self.has_edge(u, v)).count()
    }

    pub fn adjacency_matrix(&self) -> Matrix {
        Matrix::from_fn(self.n, self.n, |i, j| f64::from(self.adj[i * self.n + j]))
    }

    pub(crate) fn raw(&self) -> &[u8] {
        &self.adj
    }
}

/// The cyclically oriented cycle `0 -> 1 -> ... -> len-1 -> 0`.
///
/// For `len == 2` this is the two-vertex digraph with one edge in each
/// direction, so the result has `allow_bidirected` set.
pub fn cycle_digraph(len: usize) -> Result<Digraph> {
    if len < 2 {
        return Err(invalid(format!(
            "cycle length must be at least 2, got {len}"
        )));
    }
    Digraph::from_edges(len, (0..len).map(|i| (i, (i + 1) % len)), len == 2)
}

/// Complete digraph with both orientations present between every pair.
pub fn complete_bidirected(n: usize) -> Result<Digraph> {
    let edges = (0..n).flat_map(|u| (0..n).filter(move |&v| v != u).map(move |v| (u, v)));
    Digraph::from_edges(n, edges, true)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triangle_edges() {
        let g = cycle_digraph(3).unwrap();
        let e: Vec<_> = g.edges().collect();
        assert_eq!(e, vec![(0, 1), (1, 2), (2, 0)]);
        assert!(!g.allow_bidirected());
    }

    #[test]
    fn two_cycle_is_bidirected() {
        let g = cycle_digraph(2).unwrap();
        assert!(g.allow_bidirected());
        assert!(g.has_edge(0, 1) && g.has_edge(1, 0));
        assert_eq!(g.antiparallel_ordered_pairs(), 2);
    }

    #[test]
    fn four_cycle_degrees() {
        let g = cycle_digraph(4).unwrap();
        assert_eq!(g.edge_count(), 4);
        for v in 0..4 {
            assert_eq!(g.out_degree(v), 1);
            assert_eq!(g.in_degree(v), 1);
        }
    }

    #[test]
    fn invalid_constructions() {
        assert!(cycle_digraph(1).is_err());
        assert!(cycle_digraph(0).is_err());
        assert!(Digraph::empty(0).is_err());
        assert!(Digraph::from_edges(3, [(0, 0)], false).is_err());
        assert!(Digraph::from_edges(3, [(0, 3)], false).is_err());
        assert!(Digraph::from_edges(3, [(0, 1), (1, 0)], false).is_err());
        assert!(Digraph::from_edges(3, [(0, 1), (1, 0)], true).is_ok());
        assert!(Digraph::from_adjacency(&[vec![0, 2], vec![0, 0]], false).is_err());
    }
}
