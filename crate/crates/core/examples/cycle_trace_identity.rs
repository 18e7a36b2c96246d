//! Closed walks, homomorphism counts and eigenvalue power sums of a random
//! digraph all count the same thing.
//!
//! Run with `cargo run --example cycle_trace_identity`.

use digraphon::digraph::{cycle_digraph, hom_count, hom_density, sample_w_random, trace_power};
use digraphon::spectra::digraph_spectrum;
use digraphon::stepkernel::{StepDigraphon, StepKernel};

fn main() -> digraphon::Result<()> {
    let w = StepDigraphon::new(StepKernel::uniform(vec![
        vec![0.1, 0.6, 0.2],
        vec![0.3, 0.4, 0.5],
        vec![0.7, 0.2, 0.0],
    ])?)?;
    let g = sample_w_random(&w, 40, 2024)?;
    let spectrum = digraph_spectrum(&g)?;
    let n = g.n() as f64;

    println!(
        "W-random digraph on {} vertices with {} edges",
        g.n(),
        g.edge_count()
    );
    println!(
        "{:>3} {:>12} {:>12} {:>22} {:>14}",
        "ell", "Tr(A^ell)", "hom(C,G)", "sum m*lambda^ell", "t(C,G)"
    );
    for ell in 3..=5 {
        let c = cycle_digraph(ell)?;
        let walks = trace_power(&g, ell)?;
        let homs = hom_count(&c, &g)?;
        let spectral = spectrum.power_sum(ell as u32);
        let t = hom_density(&c, &g)?;
        println!(
            "{ell:>3} {walks:>12} {homs:>12} {:>22.6} {t:>14.6e}",
            spectral.re
        );
        assert_eq!(walks, homs);
        assert!((spectral.re - walks as f64).abs() < 1e-6 * n.powi(ell as i32));
    }
    Ok(())
}
