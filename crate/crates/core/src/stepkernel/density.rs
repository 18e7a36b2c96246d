//! Homomorphism and induced-subgraph densities of step kernels as exact
//! weighted sums over block maps `V(H) -> [k]`.

use super::{BidirectedStepPair, StepDigraphon, StepKernel};
use crate::digraph::{automorphism_count, Digraph};
use crate::error::{Error, Result};
use crate::matrix::Matrix;

/// Largest admissible `k^|H|`.
pub const BLOCK_ENUMERATION_BUDGET: u128 = 100_000_000;
pub const SUBGRAPH_STEP_MAX_VERTICES: usize = 5;

/// `table[(phi(earlier), phi(t))]` multiplies the weight when vertex `t` is placed.
struct PairFactor {
    earlier: usize,
    table: Matrix,
}

fn check_budget(k: usize, h: usize) -> Result<()> {
    let maps = (k as u128).checked_pow(h as u32).unwrap_or(u128::MAX);
    if maps > BLOCK_ENUMERATION_BUDGET {
        return Err(Error::Budget(format!(
            "{k}^{h} block maps exceed budget {BLOCK_ENUMERATION_BUDGET}"
        )));
    }
    Ok(())
}

/// Σ over block maps of Π measures · Π factors, pruning zero partial weights.
fn block_sum(measures: &[f64], factors: &[Vec<PairFactor>]) -> f64 {
    fn go(
        t: usize,
        w: f64,
        phi: &mut [usize],
        measures: &[f64],
        factors: &[Vec<PairFactor>],
    ) -> f64 {
        if t == factors.len() {
            return w;
        }
        let mut acc = 0.0;
        for (b, &m) in measures.iter().enumerate() {
            let mut wb = w * m;
            for f in &factors[t] {
                wb *= f.table[(phi[f.earlier], b)];
                if wb == 0.0 {
                    break;
                }
            }
            if wb != 0.0 {
                phi[t] = b;
                acc += go(t + 1, wb, phi, measures, factors);
            }
        }
        acc
    }
    let mut phi = vec![0; factors.len()];
    go(0, 1.0, &mut phi, measures, factors)
}

/// Builds the per-vertex factor lists from a rule giving, for each pair
/// `s < t`, the table indexed by `(phi(s), phi(t))` (or `None` for no factor).
fn pair_factors(
    h: usize,
    mut rule: impl FnMut(usize, usize) -> Option<Matrix>,
) -> Vec<Vec<PairFactor>> {
    (0..h)
        .map(|t| {
            (0..t)
                .filter_map(|s| rule(s, t).map(|table| PairFactor { earlier: s, table }))
                .collect()
        })
        .collect()
}

fn hadamard(a: &Matrix, b: &Matrix) -> Matrix {
    Matrix::from_fn(a.rows(), a.cols(), |i, j| a[(i, j)] * b[(i, j)])
}

/// `t(H, W)` for a step kernel.
pub fn hom_density_step(h: &Digraph, w: &StepKernel) -> Result<f64> {
    check_budget(w.k(), h.n())?;
    let forward = w.values();
    let backward = forward.transpose();
    let factors = pair_factors(h.n(), |s, t| match (h.has_edge(s, t), h.has_edge(t, s)) {
        (true, true) => Some(hadamard(forward, &backward)),
        (true, false) => Some(forward.clone()),
        (false, true) => Some(backward.clone()),
        (false, false) => None,
    });
    Ok(block_sum(w.measures(), &factors))
}

/// Induced density `d(H, W)`: probability that the `W`-random digraph on
/// `|H|` vertices is isomorphic to `H`. Zero for `H` with an antiparallel
/// pair, which a digraphon never produces.
pub fn subgraph_density_step(h: &Digraph, w: &StepDigraphon) -> Result<f64> {
    let n = h.n();
    if n > SUBGRAPH_STEP_MAX_VERTICES {
        return Err(Error::Budget(format!(
            "pattern has {n} vertices (limit {SUBGRAPH_STEP_MAX_VERTICES})"
        )));
    }
    check_budget(w.k(), n)?;
    if h.has_antiparallel_pair() {
        return Ok(0.0);
    }
    let forward = w.values();
    let backward = forward.transpose();
    let k = w.k();
    let absent = Matrix::from_fn(k, k, |a, b| {
        (1.0 - forward[(a, b)] - forward[(b, a)]).max(0.0)
    });
    let factors = pair_factors(n, |s, t| match (h.has_edge(s, t), h.has_edge(t, s)) {
        (true, _) => Some(forward.clone()),
        (false, true) => Some(backward.clone()),
        (false, false) => Some(absent.clone()),
    });
    let labelings = (1..=n).product::<usize>() / automorphism_count(h);
    Ok(labelings as f64 * block_sum(w.measures(), &factors))
}

/// `t(H, (W1, W2))`: each unordered pair of `H` joined both ways contributes
/// `W1`, each single edge `u -> v` contributes `(W1 + W2)(x_u, x_v)`.
pub fn hom_density_pair(h: &Digraph, p: &BidirectedStepPair) -> Result<f64> {
    check_budget(p.k(), h.n())?;
    let k = p.k();
    let w1 = p.w1_matrix().clone();
    let single = Matrix::from_fn(k, k, |a, b| p.w1(a, b) + p.w2(a, b));
    let single_back = single.transpose();
    let factors = pair_factors(h.n(), |s, t| match (h.has_edge(s, t), h.has_edge(t, s)) {
        (true, true) => Some(w1.clone()),
        (true, false) => Some(single.clone()),
        (false, true) => Some(single_back.clone()),
        (false, false) => None,
    });
    Ok(block_sum(p.measures(), &factors))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::digraph::cycle_digraph;
    use crate::stepkernel::collapse;

    fn c(len: usize) -> Digraph {
        cycle_digraph(len).unwrap()
    }

    fn directed_triangle_kernel() -> StepDigraphon {
        let v = (0..3)
            .map(|i| {
                (0..3)
                    .map(|j| if j == (i + 1) % 3 { 1.0 } else { 0.0 })
                    .collect()
            })
            .collect();
        StepDigraphon::new(StepKernel::uniform(v).unwrap()).unwrap()
    }

    fn w_prime() -> StepKernel {
        StepKernel::uniform(vec![vec![0.0, 0.5], vec![0.5, 0.0]]).unwrap()
    }

    #[test]
    fn constant_cycles() {
        let w = StepKernel::constant(0.5).unwrap();
        for len in 2..=7 {
            let t = hom_density_step(&c(len), &w).unwrap();
            assert!((t - 0.5f64.powi(len as i32)).abs() < 1e-15);
        }
    }

    #[test]
    fn directed_triangle() {
        let t = hom_density_step(&c(3), &directed_triangle_kernel()).unwrap();
        assert!((t - 1.0 / 9.0).abs() < 1e-15);
    }

    #[test]
    fn w_prime_cycles() {
        for len in 2..=8 {
            let t = hom_density_step(&c(len), &w_prime()).unwrap();
            let expected = 4f64.powi(-(len as i32)) + (-4f64).powi(-(len as i32));
            assert!((t - expected).abs() < 1e-15, "len {len}: {t}");
        }
    }

    #[test]
    fn budget() {
        let w = StepKernel::uniform(vec![vec![0.0; 100]; 100]).unwrap();
        assert!(matches!(hom_density_step(&c(5), &w), Err(Error::Budget(_))));
        assert!(hom_density_step(&c(4), &w).is_ok());
    }

    #[test]
    fn subgraph_examples() {
        let half = StepDigraphon::new(StepKernel::constant(0.5).unwrap()).unwrap();
        let two = Digraph::empty(2).unwrap();
        assert_eq!(subgraph_density_step(&two, &half).unwrap(), 0.0);

        let p = 0.3;
        let w = StepDigraphon::new(StepKernel::constant(p).unwrap()).unwrap();
        let edge = Digraph::from_edges(2, [(0, 1)], false).unwrap();
        assert!((subgraph_density_step(&edge, &w).unwrap() - 2.0 * p).abs() < 1e-15);
        assert_eq!(subgraph_density_step(&c(2), &w).unwrap(), 0.0);
    }

    #[test]
    fn pair_examples() {
        let c2 = c(2);
        let bi = BidirectedStepPair::bipartite_bidirected();
        let or = BidirectedStepPair::bipartite_oriented();
        assert!((hom_density_pair(&c2, &bi).unwrap() - 0.25).abs() < 1e-15);
        assert_eq!(hom_density_pair(&c2, &or).unwrap(), 0.0);
        for len in 3..=6 {
            let h = c(len);
            for p in [&bi, &or] {
                let a = hom_density_pair(&h, p).unwrap();
                let b = hom_density_step(&h, &collapse(p)).unwrap();
                assert!((a - b).abs() < 1e-15);
            }
        }
    }
}
