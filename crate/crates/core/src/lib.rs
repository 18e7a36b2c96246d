//! Step digraphons, W-random digraphs and the spectra of digraph limits.
//!
//! The crate is organised around four layers:
//!
//! * [`digraph`]: finite digraphs, exact walk and homomorphism counts,
//!   W-random sampling and random regular graphs.
//! * [`stepkernel`]: step kernels and digraphons, their densities, cut norm,
//!   cut metric and operator-norm algebra.
//! * [`spectra`]: a dense eigenvalue solver, multiplicity clustering,
//!   Hausdorff distances and multiplicity ledgers.
//! * [`limits`]: the cycle-density trace identity, spectral convergence
//!   experiments and the bidirected two-copy example.
//!
//! [`cli`] wires these into the `digraphon` binary.
//!
//! Runnable examples live in `examples/`:
//!
//! | example | shows |
//! |---|---|
//! | `cycle_trace_identity` | closed walks, homomorphism counts and eigenvalue power sums agree |
//! | `step_spectrum` | spectra of step kernels and the trace formula |
//! | `cut_norm_and_distance` | cut norm, refinement, cut metric and permutation bound |
//! | `w_random_convergence` | normalized spectra of samples approaching the kernel spectrum |
//! | `kernel_sequence` | deterministic spectral and ν-convergence of perturbed kernels |
//! | `bidirected_limits` | two digraph sequences with the same collapsed limit |
//! | `eigen_solver` | the eigenvalue solver and multiplicity clustering |
//! | `operator_norms` | operator norms and kernel composition |
//!
//! # Example
//!
//! ```
//! use digraphon::digraph::{cycle_digraph, trace_power};
//! use digraphon::spectra::digraph_spectrum;
//!
//! let g = cycle_digraph(5).unwrap();
//! assert_eq!(trace_power(&g, 5).unwrap(), 5);
//! let s = digraph_spectrum(&g).unwrap();
//! assert!((s.power_sum(5).re - 5.0).abs() < 1e-9);
//! ```

pub mod cli;
pub mod combinatorics;
pub mod digraph;
pub mod error;
pub mod limits;
pub mod matrix;
pub mod rng;
pub mod spectra;
pub mod stepkernel;

pub use error::{Error, Result};
