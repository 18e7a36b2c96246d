//! Normalized spectra of W-random digraphs approach the spectrum of W.
//!
//! Run with `cargo run --release --example w_random_convergence`.

use digraphon::limits::convergence_experiment;
use digraphon::stepkernel::{StepDigraphon, StepKernel};

fn main() -> digraphon::Result<()> {
    let w = StepDigraphon::new(StepKernel::uniform(vec![vec![0.0, 0.25], vec![0.25, 0.0]])?)?;
    let report = convergence_experiment(&w, &[50, 100, 200, 400], 8, 0.05, 1)?;
    println!("limit spectrum: {:?}", report.targets);
    println!(
        "{:>5} {:>16} {:>18}",
        "n", "median Hausdorff", "ledgers matched"
    );
    for s in &report.summaries {
        println!(
            "{:>5} {:>16.5} {:>18?}",
            s.n, s.median_hausdorff, s.matched_fraction
        );
    }
    Ok(())
}
