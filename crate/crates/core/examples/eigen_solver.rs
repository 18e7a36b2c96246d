//! The dense eigenvalue solver and multiplicity clustering.
//!
//! Run with `cargo run --example eigen_solver`.

use digraphon::matrix::Matrix;
use digraphon::spectra::{cluster_multiplicities, default_tolerance, eigenvalues};

fn main() -> digraphon::Result<()> {
    // Companion matrix of (x - 1)^2 (x + 2)(x^2 + 1) = x^5 - 2x^3 + 2x^2 - 3x + 2.
    let coeffs = [0.0, -2.0, 2.0, -3.0, 2.0];
    let n = coeffs.len();
    let m = Matrix::from_fn(n, n, |i, j| {
        if i == 0 {
            -coeffs[j]
        } else if i == j + 1 {
            1.0
        } else {
            0.0
        }
    });
    let eig = eigenvalues(&m)?;
    for z in &eig {
        println!("{:+.12} {:+.12}i", z.re, z.im);
    }
    // The double root at 1 splits by about sqrt(machine epsilon).
    let s = cluster_multiplicities(&eig, 1e-6)?;
    println!(
        "clustered at 1e-6 (default would be {:.1e}):",
        default_tolerance(&m)
    );
    for p in s.points() {
        println!("  {:+.8} {:+.8}i  x{}", p.value.re, p.value.im, p.mult);
    }
    Ok(())
}
