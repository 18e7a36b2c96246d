//! Random instances shared by the integration tests.
#![allow(dead_code, clippy::needless_range_loop)]

use digraphon::digraph::{sample_w_random, Digraph};
use digraphon::matrix::Matrix;
use digraphon::rng::Rng;
use digraphon::stepkernel::{StepDigraphon, StepKernel};
use num_complex::Complex64;
use rand::Rng as _;

/// Positive measures summing to one.
pub fn random_measures(rng: &mut Rng, k: usize) -> Vec<f64> {
    let raw: Vec<f64> = (0..k).map(|_| rng.random_range(0.05..1.0)).collect();
    let total: f64 = raw.iter().sum();
    let mut m: Vec<f64> = raw.iter().map(|x| x / total).collect();
    let drift: f64 = 1.0 - m.iter().sum::<f64>();
    m[0] += drift;
    m
}

/// Digraphon values: each unordered pair splits one unit of mass three ways.
pub fn random_digraphon(rng: &mut Rng, k: usize) -> StepDigraphon {
    let mut v = vec![vec![0.0; k]; k];
    for i in 0..k {
        v[i][i] = rng.random_range(0.0..=0.5);
        for j in i + 1..k {
            let e: [f64; 3] = std::array::from_fn(|_| -rng.random_range(1e-12f64..1.0).ln());
            let s = e.iter().sum::<f64>();
            v[i][j] = e[0] / s;
            v[j][i] = e[1] / s;
        }
    }
    let m = random_measures(rng, k);
    StepDigraphon::new(StepKernel::new(v, m).unwrap()).unwrap()
}

/// Kernel with entries uniform on `[-1, 1]` and random measures.
pub fn random_signed_kernel(rng: &mut Rng, k: usize) -> StepKernel {
    let v = (0..k)
        .map(|_| (0..k).map(|_| rng.random_range(-1.0..=1.0)).collect())
        .collect();
    let m = random_measures(rng, k);
    StepKernel::with_bound(v, m, 1.0).unwrap()
}

/// Kernel on a given structure with entries uniform on `[-1, 1]`.
pub fn signed_kernel_on(rng: &mut Rng, measures: &[f64]) -> StepKernel {
    let k = measures.len();
    let v = (0..k)
        .map(|_| (0..k).map(|_| rng.random_range(-1.0..=1.0)).collect())
        .collect();
    StepKernel::with_bound(v, measures.to_vec(), 1.0).unwrap()
}

/// A W-random digraph from a random digraphon with up to four blocks.
pub fn random_digraph(rng: &mut Rng, n: usize) -> Digraph {
    let k = rng.random_range(1..=4);
    let w = random_digraphon(rng, k);
    sample_w_random(&w, n, rng.random()).unwrap()
}

pub fn random_matrix(rng: &mut Rng, n: usize) -> Matrix {
    Matrix::from_fn(n, n, |_, _| rng.random_range(-1.0..=1.0))
}

pub fn close(a: Complex64, b: Complex64, tol: f64) -> bool {
    (a - b).norm() <= tol
}
