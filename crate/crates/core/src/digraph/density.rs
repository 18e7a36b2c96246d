//! Exact and sampled densities of small digraphs in finite digraphs.

use rand::Rng as _;

use super::Digraph;
use crate::combinatorics::{binomial, for_each_permutation};
use crate::error::{invalid, Error, Result};
use crate::rng::rng_from_seed;

/// Largest pattern accepted by [`hom_density`].
pub const HOM_DENSITY_MAX_VERTICES: usize = 6;
/// Worst-case word operations allowed for homomorphism counting.
pub const HOM_ENUMERATION_BUDGET: u128 = 100_000_000;
/// Largest pattern accepted by [`subgraph_density`].
pub const SUBGRAPH_DENSITY_MAX_VERTICES: usize = 5;
/// Largest number of vertex subsets [`subgraph_density`] will scan.
pub const SUBGRAPH_ENUMERATION_BUDGET: u128 = 100_000_000;

/// `Tr(A^len)`, the number of closed walks of length `len`, in exact
/// integer arithmetic.
pub fn trace_power(g: &Digraph, len: usize) -> Result<u64> {
    if len == 0 {
        return Err(invalid("trace_power needs len >= 1"));
    }
    let n = g.n();
    let out: Vec<Vec<usize>> = (0..n)
        .map(|u| (0..n).filter(|&v| g.has_edge(u, v)).collect())
        .collect();
    // walks[i*n + j] = number of walks of the current length from i to j
    let mut walks: Vec<u64> = g.raw().iter().map(|&x| u64::from(x)).collect();
    let overflow = || Error::Overflow(format!("Tr(A^{len}) on {n} vertices"));
    for _ in 1..len.saturating_sub(1) {
        let mut next = vec![0u64; n * n];
        for i in 0..n {
            let row = &walks[i * n..(i + 1) * n];
            let next_row = &mut next[i * n..(i + 1) * n];
            for (k, &c) in row.iter().enumerate() {
                if c == 0 {
                    continue;
                }
                for &j in &out[k] {
                    next_row[j] = next_row[j].checked_add(c).ok_or_else(overflow)?;
                }
            }
        }
        walks = next;
    }
    if len == 1 {
        return Ok((0..n).map(|i| walks[i * n + i]).sum());
    }
    // Close the walk: Tr(P A) = sum_{i,j} P[i][j] A[j][i].
    let mut total = 0u64;
    for i in 0..n {
        for j in 0..n {
            if g.has_edge(j, i) {
                total = total.checked_add(walks[i * n + j]).ok_or_else(overflow)?;
            }
        }
    }
    Ok(total)
}

/// Exact number of homomorphisms `H -> G`.
///
/// Vertices of `H` are placed one at a time; candidate sets are bitset
/// intersections of neighbourhoods of already-placed vertices, and the last
/// vertex is counted by popcount instead of enumerated.
pub fn hom_count(h: &Digraph, g: &Digraph) -> Result<u64> {
    let k = h.n();
    if k > HOM_DENSITY_MAX_VERTICES {
        return Err(Error::Budget(format!(
            "pattern has {k} vertices (limit {HOM_DENSITY_MAX_VERTICES}); use hom_density_sampled"
        )));
    }
    let n = g.n();
    let words = n.div_ceil(64);
    let cost = (n as u128).pow(k as u32 - 1) * words as u128;
    if cost > HOM_ENUMERATION_BUDGET {
        return Err(Error::Budget(format!(
            "homomorphism enumeration needs ~{cost} steps (budget {HOM_ENUMERATION_BUDGET}); use hom_density_sampled"
        )));
    }

    let order = placement_order(h);
    // constraints[t] = (earlier position, true if edge goes earlier -> t)
    let constraints: Vec<Vec<(usize, bool)>> = (0..k)
        .map(|t| {
            let mut c = Vec::new();
            for s in 0..t {
                if h.has_edge(order[s], order[t]) {
                    c.push((s, true));
                }
                if h.has_edge(order[t], order[s]) {
                    c.push((s, false));
                }
            }
            c
        })
        .collect();

    let mut out_bits = vec![0u64; n * words];
    let mut in_bits = vec![0u64; n * words];
    for (u, v) in g.edges() {
        out_bits[u * words + v / 64] |= 1 << (v % 64);
        in_bits[v * words + u / 64] |= 1 << (u % 64);
    }
    let mut full = vec![u64::MAX; words];
    if !n.is_multiple_of(64) {
        full[words - 1] = (1u64 << (n % 64)) - 1;
    }

    struct Search<'a> {
        words: usize,
        out_bits: &'a [u64],
        in_bits: &'a [u64],
        full: &'a [u64],
        constraints: &'a [Vec<(usize, bool)>],
        image: Vec<usize>,
        scratch: Vec<Vec<u64>>,
    }

    impl Search<'_> {
        fn count(&mut self, t: usize) -> u64 {
            let w = self.words;
            let mut cand = std::mem::take(&mut self.scratch[t]);
            cand.copy_from_slice(self.full);
            for &(s, forward) in &self.constraints[t] {
                let base = self.image[s] * w;
                let src = if forward { self.out_bits } else { self.in_bits };
                for (c, &b) in cand.iter_mut().zip(&src[base..base + w]) {
                    *c &= b;
                }
            }
            let total = if t + 1 == self.constraints.len() {
                cand.iter().map(|x| u64::from(x.count_ones())).sum()
            } else {
                let mut acc = 0u64;
                for (wi, &word) in cand.iter().enumerate() {
                    let mut bits = word;
                    while bits != 0 {
                        let b = bits.trailing_zeros() as usize;
                        bits &= bits - 1;
                        self.image[t] = wi * 64 + b;
                        acc += self.count(t + 1);
                    }
                }
                acc
            };
            self.scratch[t] = cand;
            total
        }
    }

    let mut search = Search {
        words,
        out_bits: &out_bits,
        in_bits: &in_bits,
        full: &full,
        constraints: &constraints,
        image: vec![0; k],
        scratch: vec![vec![0; words]; k],
    };
    Ok(search.count(0))
}

/// Places high-degree vertices first and then always the vertex with the
/// most edges into the placed set, so candidate sets shrink early.
fn placement_order(h: &Digraph) -> Vec<usize> {
    let k = h.n();
    let touches = |u: usize, v: usize| h.has_edge(u, v) || h.has_edge(v, u);
    let mut placed = vec![false; k];
    let mut order = Vec::with_capacity(k);
    while order.len() < k {
        let next = (0..k)
            .filter(|&v| !placed[v])
            .max_by_key(|&v| {
                let into_placed = order.iter().filter(|&&u| touches(u, v)).count();
                let degree = (0..k).filter(|&u| touches(u, v)).count();
                (into_placed, degree, std::cmp::Reverse(v))
            })
            .expect("unplaced vertex");
        placed[next] = true;
        order.push(next);
    }
    order
}

/// Probability that a uniform random map `V(H) -> V(G)` is a homomorphism.
pub fn hom_density(h: &Digraph, g: &Digraph) -> Result<f64> {
    let count = hom_count(h, g)?;
    Ok(count as f64 / (g.n() as f64).powi(h.n() as i32))
}

/// Monte-Carlo estimate with its standard error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DensityEstimate {
    pub mean: f64,
    pub std_error: f64,
    pub samples: u64,
}

/// Fraction of `samples` independent uniform maps that are homomorphisms.
pub fn hom_density_sampled(
    h: &Digraph,
    g: &Digraph,
    samples: u64,
    seed: u64,
) -> Result<DensityEstimate> {
    if samples == 0 {
        return Err(invalid("samples must be at least 1"));
    }
    let edges: Vec<(usize, usize)> = h.edges().collect();
    let n = g.n();
    let mut rng = rng_from_seed(seed);
    let mut image = vec![0usize; h.n()];
    let mut hits = 0u64;
    for _ in 0..samples {
        for x in image.iter_mut() {
            *x = rng.random_range(0..n);
        }
        if edges.iter().all(|&(u, v)| g.has_edge(image[u], image[v])) {
            hits += 1;
        }
    }
    let mean = hits as f64 / samples as f64;
    Ok(DensityEstimate {
        mean,
        std_error: (mean * (1.0 - mean) / samples as f64).sqrt(),
        samples,
    })
}

/// Bit code of the ordered-pair adjacency of a digraph on `k <= 5` vertices.
pub(crate) fn pair_code(k: usize, edge: impl Fn(usize, usize) -> bool) -> u32 {
    let mut code = 0u32;
    for a in 0..k {
        for b in 0..k {
            if a != b && edge(a, b) {
                let idx = a * (k - 1) + if b < a { b } else { b - 1 };
                code |= 1 << idx;
            }
        }
    }
    code
}

/// `|Aut(H)|` by brute force over all vertex permutations.
pub(crate) fn automorphism_count(h: &Digraph) -> usize {
    let k = h.n();
    let mut count = 0;
    for_each_permutation(k, |p| {
        if h.edges().all(|(u, v)| h.has_edge(p[u], p[v])) {
            count += 1;
        }
    });
    count
}

/// Probability that `|H|` uniformly chosen distinct vertices of `G` induce
/// a copy of `H`; zero when `|H| > |G|`.
pub fn subgraph_density(h: &Digraph, g: &Digraph) -> Result<f64> {
    let k = h.n();
    if k > SUBGRAPH_DENSITY_MAX_VERTICES {
        return Err(Error::Budget(format!(
            "pattern has {k} vertices (limit {SUBGRAPH_DENSITY_MAX_VERTICES})"
        )));
    }
    let n = g.n();
    if k > n {
        return Ok(0.0);
    }
    let subsets = binomial(n as u64, k as u64);
    if subsets > SUBGRAPH_ENUMERATION_BUDGET {
        return Err(Error::Budget(format!(
            "{subsets} vertex subsets exceed budget {SUBGRAPH_ENUMERATION_BUDGET}"
        )));
    }

    let mut copy_of_h = vec![false; 1 << (k * k.saturating_sub(1))];
    for_each_permutation(k, |p| {
        // Relabel u -> p[u]; look up the preimage of each ordered pair.
        let mut inv = [0usize; SUBGRAPH_DENSITY_MAX_VERTICES];
        for (u, &pu) in p.iter().enumerate() {
            inv[pu] = u;
        }
        copy_of_h[pair_code(k, |a, b| h.has_edge(inv[a], inv[b])) as usize] = true;
    });

    let mut hits = 0u64;
    let mut s: Vec<usize> = (0..k).collect();
    loop {
        if copy_of_h[pair_code(k, |a, b| g.has_edge(s[a], s[b])) as usize] {
            hits += 1;
        }
        // Next k-subset in lexicographic order.
        let mut i = k;
        loop {
            if i == 0 {
                return Ok(hits as f64 / subsets as f64);
            }
            i -= 1;
            if s[i] < n - k + i {
                break;
            }
        }
        s[i] += 1;
        for j in i + 1..k {
            s[j] = s[j - 1] + 1;
        }
    }
}
