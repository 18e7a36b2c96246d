//! Spectra, cut distance and nu-gaps along W + 2^-i N.
//!
//! Run with `cargo run --example kernel_sequence`.

use digraphon::limits::{perturbation_sequence, step_sequence_convergence};
use digraphon::stepkernel::StepKernel;

fn main() -> digraphon::Result<()> {
    let w = StepKernel::uniform(vec![
        vec![0.1, 0.4, 0.2, 0.0],
        vec![0.3, 0.0, 0.1, 0.5],
        vec![0.2, 0.2, 0.4, 0.1],
        vec![0.5, 0.1, 0.0, 0.3],
    ])?;
    let ws = perturbation_sequence(&w, 12, 9)?;
    let report = step_sequence_convergence(&ws, &w, 0.01)?;
    println!(
        "{:>3} {:>12} {:>12} {:>12} {:>12}",
        "i", "Hausdorff", "nu gap W", "nu gap W_i", "2 sqrt(d)"
    );
    for r in &report.rows {
        let (g1, g2) = r.nu_gaps.expect("kernel rows carry gaps");
        let bound = 2.0 * r.cut_metric.expect("kernel rows carry cut metric").sqrt();
        println!(
            "{:>3} {:>12.3e} {:>12.3e} {:>12.3e} {:>12.3e}",
            r.n, r.hausdorff, g1, g2, bound
        );
    }
    Ok(())
}
