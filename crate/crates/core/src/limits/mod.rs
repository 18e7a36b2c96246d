//! Executable forms of the limit theorems: the cycle-density trace
//! identity, spectral convergence of sampled digraphs and kernel sequences,
//! and the bidirected two-copy example.

mod convergence;
mod section5;
mod trace;

pub use convergence::{
    convergence_experiment, median, perturbation_sequence, step_sequence_convergence,
    ConvergenceReport, ConvergenceRow, SizeSummary,
};
pub use section5::{section5_example, DigraphSummary, Section5Report, Section5Row, CYCLE_LENGTHS};
pub use trace::{
    cycle_density_via_spectrum, verify_trace_formula, TraceCheckReport, IMAGINARY_TOLERANCE,
};
