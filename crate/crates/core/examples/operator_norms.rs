//! Operator norms of step kernels, composition, and the bound
//! ||VU|| <= 2 sqrt(||V||_cut) for kernels bounded by 1.
//!
//! Run with `cargo run --example operator_norms`.

use digraphon::rng::rng_from_seed;
use digraphon::stepkernel::{compose_step, cut_norm, op_norm_2to2, StepKernel};
use rand::Rng;

fn main() -> digraphon::Result<()> {
    let mut rng = rng_from_seed(17);
    let mut worst: f64 = 0.0;
    for _ in 0..200 {
        let k = rng.random_range(1..=6);
        let mut raw: Vec<f64> = (0..k).map(|_| rng.random_range(0.1..1.0)).collect();
        let total: f64 = raw.iter().sum();
        raw.iter_mut().for_each(|m| *m /= total);
        let mut entries = |_: ()| -> Vec<Vec<f64>> {
            (0..k)
                .map(|_| (0..k).map(|_| rng.random_range(-1.0..=1.0)).collect())
                .collect()
        };
        let v = StepKernel::new(entries(()), raw.clone())?;
        let u = StepKernel::new(entries(()), raw.clone())?;
        let lhs = op_norm_2to2(&compose_step(&v, &u)?)?;
        let rhs = 2.0 * cut_norm(&v)?.value.sqrt();
        worst = worst.max(lhs / rhs);
    }
    println!("largest ||VU|| / (2 sqrt ||V||_cut) over 200 random pairs: {worst:.4}");
    Ok(())
}
