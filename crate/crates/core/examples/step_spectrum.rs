//! Spectra of step kernels and the cycle-density trace formula.
//!
//! Run with `cargo run --example step_spectrum`.

use digraphon::limits::verify_trace_formula;
use digraphon::spectra::step_spectrum;
use digraphon::stepkernel::{op_norm_2to2, StepKernel};

fn main() -> digraphon::Result<()> {
    let kernels = [
        (
            "off-diagonal 1/2",
            StepKernel::uniform(vec![vec![0.0, 0.5], vec![0.5, 0.0]])?,
        ),
        (
            "directed triangle",
            StepKernel::uniform(vec![
                vec![0.0, 1.0, 0.0],
                vec![0.0, 0.0, 1.0],
                vec![1.0, 0.0, 0.0],
            ])?,
        ),
        (
            "uneven blocks",
            StepKernel::new(
                vec![
                    vec![0.2, 0.7, 0.1],
                    vec![0.0, 0.3, 0.6],
                    vec![0.4, 0.1, 0.5],
                ],
                vec![0.2, 0.3, 0.5],
            )?,
        ),
    ];
    for (name, w) in &kernels {
        let s = step_spectrum(w)?;
        println!("{name}: ||T_W|| = {:.6}", op_norm_2to2(w)?);
        for p in s.points() {
            println!(
                "  lambda = {:+.6} {:+.6}i  (mult {})",
                p.value.re, p.value.im, p.mult
            );
        }
        println!(
            "  zero spectral point: {}",
            s.includes_zero_spectral_point()
        );
        for row in verify_trace_formula(w, 6)? {
            println!(
                "  ell = {}: t(C_ell, W) = {:+.10e}, spectral sum = {:+.10e}, error {:.1e}",
                row.ell, row.lhs, row.rhs, row.abs_error
            );
        }
    }
    Ok(())
}
