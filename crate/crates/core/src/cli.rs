//! Command-line front end.
//!
//! Every subcommand writes one artifact, to stdout or to
//! `<out>/<command>-seed<seed>.<json|csv>`. JSON artifacts wrap the result as
//! `{"config": .., "seed": .., "result": ..}`; CSV artifacts start with
//! `# config: <json>` and `# seed: <seed>` comment lines. Files are written to
//! a temporary name and renamed into place.
//!
//! Errors go to stderr as one JSON object `{"error", "message", "exit_code"}`
//! and set the exit code: 2 for invalid input, 3 for exhausted budgets,
//! 4 for numerical or generation failures, 1 for I/O.

use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::digraph::{sample_bidirected_random, sample_w_random, Digraph};
use crate::error::{invalid, Error, Result};
use crate::limits::{
    convergence_experiment, perturbation_sequence, section5_example, step_sequence_convergence,
    verify_trace_formula,
};
use crate::spectra::{
    digraph_spectrum, digraph_spectrum_with_tol, step_spectrum, step_spectrum_with_tol, Spectrum,
};
use crate::stepkernel::{
    common_refinement, cut_distance_perm, cut_metric, cut_norm, KernelDocument, StepDigraphon,
    StepKernel,
};

/// Environment variable capping the worker threads (`0` = automatic).
pub const THREADS_ENV: &str = "DIGRAPHON_THREADS";

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Parser, Serialize)]
#[command(
    name = "digraphon",
    version,
    about = "Step digraphons, W-random digraphs and their spectra"
)]
pub struct RunConfig {
    /// Directory for output files; stdout when omitted.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    #[arg(long, global = true, value_enum, default_value = "json")]
    pub format: Format,

    /// Master seed for every random choice.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Subcommand, Serialize)]
#[serde(rename_all = "kebab-case", tag = "name")]
pub enum Command {
    /// Clustered spectrum of a kernel file or a digraph file.
    Spectrum {
        #[arg(long, conflicts_with = "digraph", required_unless_present = "digraph")]
        kernel: Option<PathBuf>,
        /// Digraph as JSON (`.json`) or edge list (anything else).
        #[arg(long)]
        digraph: Option<PathBuf>,
        /// Divide digraph eigenvalues by the vertex count.
        #[arg(long)]
        normalized: bool,
        /// Clustering tolerance; defaults to max(1e-7, 1e-8 n ||M||_inf).
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Cut norm of a kernel, or cut metric between two kernels.
    Cutnorm {
        #[arg(long)]
        kernel: PathBuf,
        #[arg(long)]
        other: Option<PathBuf>,
        /// Also bound the cut distance by block permutations (digraphons only).
        #[arg(long, requires = "other")]
        perm: bool,
    },
    /// Cycle densities against spectral power sums for ell = 3..=ell_max.
    TraceCheck {
        #[arg(long)]
        kernel: PathBuf,
        #[arg(long, default_value_t = 6)]
        ell_max: usize,
    },
    /// One W-random digraph (a bidirected pair file gives a bidirected sample).
    Sample {
        #[arg(long)]
        kernel: PathBuf,
        #[arg(long)]
        n: usize,
    },
    /// Normalized spectra of W-random samples against the kernel spectrum.
    Converge {
        #[arg(long)]
        kernel: PathBuf,
        #[arg(long, value_delimiter = ',', default_value = "50,100,200,400,800")]
        sizes: Vec<usize>,
        #[arg(long, default_value_t = 20)]
        seeds: usize,
        #[arg(long, default_value_t = 0.05)]
        epsilon: f64,
    },
    /// Spectra, cut distances and nu-gaps along a kernel sequence.
    StepConverge {
        #[arg(long)]
        kernel: PathBuf,
        /// JSON array of kernels.
        #[arg(long, conflicts_with = "perturb", required_unless_present = "perturb")]
        sequence: Option<PathBuf>,
        /// Generate W + 2^-i N for i = 1..=PERTURB with seeded noise N.
        #[arg(long)]
        perturb: Option<usize>,
        #[arg(long, default_value_t = 0.01)]
        epsilon: f64,
    },
    /// The two-copy bidirected/oriented example on random regular graphs.
    Section5 {
        #[arg(long, value_delimiter = ',', default_value = "20,50,100")]
        n_list: Vec<usize>,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Spectrum { .. } => "spectrum",
            Command::Cutnorm { .. } => "cutnorm",
            Command::TraceCheck { .. } => "trace-check",
            Command::Sample { .. } => "sample",
            Command::Converge { .. } => "converge",
            Command::StepConverge { .. } => "step-converge",
            Command::Section5 { .. } => "section5",
        }
    }
}

/// A result ready to be rendered in either format.
struct Artifact {
    json: serde_json::Value,
    csv: String,
}

impl Artifact {
    fn new(value: &impl Serialize, csv: String) -> Result<Self> {
        Ok(Artifact {
            json: serde_json::to_value(value)?,
            csv,
        })
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| invalid(format!("cannot read {}: {e}", path.display())))
}

fn read_kernel(path: &Path) -> Result<KernelDocument> {
    KernelDocument::parse(&read(path)?)
}

fn read_digraph(path: &Path) -> Result<Digraph> {
    let text = read(path)?;
    if path.extension().is_some_and(|e| e == "json") {
        Digraph::from_json(&text)
    } else {
        Digraph::from_edge_list(&text)
    }
}

fn as_digraphon(doc: KernelDocument) -> Result<StepDigraphon> {
    match doc {
        KernelDocument::Digraphon(w) => Ok(w),
        KernelDocument::Kernel(k) => StepDigraphon::new(k),
        KernelDocument::Pair(_) => Err(invalid("expected a digraphon, got a bidirected pair")),
    }
}

fn f(x: f64) -> String {
    format!("{x:.16e}")
}

#[derive(Serialize)]
struct CutReport {
    cut_norm: crate::stepkernel::CutNorm,
    cut_metric: Option<f64>,
    cut_distance_upper_bound: Option<crate::stepkernel::CutDistanceBound>,
}

fn spectrum_artifact(s: &Spectrum) -> Result<Artifact> {
    Artifact::new(s, s.to_csv())
}

fn execute(config: &RunConfig) -> Result<Artifact> {
    match &config.command {
        Command::Spectrum {
            kernel,
            digraph,
            normalized,
            tol,
        } => {
            let s = match (kernel, digraph) {
                (Some(path), _) => {
                    let k = read_kernel(path)?.kernel();
                    match tol {
                        Some(t) => step_spectrum_with_tol(&k, *t)?,
                        None => step_spectrum(&k)?,
                    }
                }
                (None, Some(path)) => {
                    let g = read_digraph(path)?;
                    let s = match tol {
                        Some(t) => digraph_spectrum_with_tol(&g, *t)?,
                        None => digraph_spectrum(&g)?,
                    };
                    if *normalized {
                        s.scaled(1.0 / g.n() as f64)
                    } else {
                        s
                    }
                }
                (None, None) => return Err(invalid("spectrum needs --kernel or --digraph")),
            };
            spectrum_artifact(&s)
        }
        Command::Cutnorm {
            kernel,
            other,
            perm,
        } => {
            let a = read_kernel(kernel)?;
            let norm = cut_norm(&a.kernel())?;
            let mut report = CutReport {
                cut_norm: norm,
                cut_metric: None,
                cut_distance_upper_bound: None,
            };
            if let Some(path) = other {
                let b = read_kernel(path)?;
                let (ra, rb) = common_refinement(&a.kernel(), &b.kernel())?;
                report.cut_metric = Some(cut_metric(&ra, &rb)?);
                if *perm {
                    report.cut_distance_upper_bound =
                        Some(cut_distance_perm(&as_digraphon(a)?, &as_digraphon(b)?)?);
                }
            }
            let mut csv = format!("quantity,value\ncut_norm,{}\n", f(report.cut_norm.value));
            if let Some(m) = report.cut_metric {
                csv.push_str(&format!("cut_metric,{}\n", f(m)));
            }
            if let Some(d) = &report.cut_distance_upper_bound {
                csv.push_str(&format!("cut_distance_upper_bound,{}\n", f(d.value)));
            }
            Artifact::new(&report, csv)
        }
        Command::TraceCheck { kernel, ell_max } => {
            let rows = verify_trace_formula(&read_kernel(kernel)?.kernel(), *ell_max)?;
            let mut csv = String::from("ell,lhs,rhs,abs_error\n");
            for r in &rows {
                csv.push_str(&format!(
                    "{},{},{},{}\n",
                    r.ell,
                    f(r.lhs),
                    f(r.rhs),
                    f(r.abs_error)
                ));
            }
            Artifact::new(&rows, csv)
        }
        Command::Sample { kernel, n } => {
            let g = match read_kernel(kernel)? {
                KernelDocument::Pair(p) => sample_bidirected_random(&p, *n, config.seed)?,
                doc => sample_w_random(&as_digraphon(doc)?, *n, config.seed)?,
            };
            let mut csv = String::from("source,target\n");
            for (u, v) in g.edges() {
                csv.push_str(&format!("{u},{v}\n"));
            }
            Artifact::new(&g, csv)
        }
        Command::Converge {
            kernel,
            sizes,
            seeds,
            epsilon,
        } => {
            let w = as_digraphon(read_kernel(kernel)?)?;
            let r = convergence_experiment(&w, sizes, *seeds, *epsilon, config.seed)?;
            Artifact::new(&r, r.to_csv())
        }
        Command::StepConverge {
            kernel,
            sequence,
            perturb,
            epsilon,
        } => {
            let w = read_kernel(kernel)?.kernel();
            let ws: Vec<StepKernel> = match (sequence, perturb) {
                (Some(path), _) => serde_json::from_str(&read(path)?)
                    .map_err(|e| Error::Schema(format!("kernel sequence: {e}")))?,
                (None, Some(steps)) => perturbation_sequence(&w, *steps, config.seed)?,
                (None, None) => return Err(invalid("step-converge needs --sequence or --perturb")),
            };
            let r = step_sequence_convergence(&ws, &w, *epsilon)?;
            Artifact::new(&r, r.to_csv())
        }
        Command::Section5 { n_list } => {
            let r = section5_example(n_list, config.seed)?;
            Artifact::new(&r, r.to_csv())
        }
    }
}

fn render(config: &RunConfig, artifact: Artifact) -> Result<String> {
    let config_json = serde_json::to_value(config)?;
    Ok(match config.format {
        Format::Json => {
            let doc = serde_json::json!({
                "config": config_json,
                "seed": config.seed,
                "result": artifact.json,
            });
            let mut text = serde_json::to_string_pretty(&doc)?;
            text.push('\n');
            text
        }
        Format::Csv => format!(
            "# config: {}\n# seed: {}\n{}",
            serde_json::to_string(&config_json)?,
            config.seed,
            artifact.csv
        ),
    })
}

/// Writes `contents` to `path` through a sibling temporary file.
pub fn write_atomic(path: &Path, contents: &str) -> Result<()> {
    let dir = path.parent().unwrap_or(Path::new("."));
    let name = path
        .file_name()
        .ok_or_else(|| invalid(format!("not a file path: {}", path.display())))?;
    let tmp = dir.join(format!(
        ".{}.tmp{}",
        name.to_string_lossy(),
        std::process::id()
    ));
    let result = (|| {
        let mut file = fs::File::create(&tmp)?;
        file.write_all(contents.as_bytes())?;
        file.sync_all()?;
        fs::rename(&tmp, path)
    })();
    if result.is_err() {
        let _ = fs::remove_file(&tmp);
    }
    Ok(result?)
}

/// Output file name for a configuration.
pub fn output_name(config: &RunConfig) -> String {
    let ext = match config.format {
        Format::Json => "json",
        Format::Csv => "csv",
    };
    format!("{}-seed{}.{ext}", config.command.name(), config.seed)
}

/// Runs one command. Returns the path written, or `None` when the artifact
/// went to stdout.
pub fn run(config: &RunConfig) -> Result<Option<PathBuf>> {
    let text = render(config, execute(config)?)?;
    match &config.out {
        Some(dir) => {
            fs::create_dir_all(dir)?;
            let path = dir.join(output_name(config));
            write_atomic(&path, &text)?;
            Ok(Some(path))
        }
        None => {
            std::io::stdout().write_all(text.as_bytes())?;
            Ok(None)
        }
    }
}

fn configure_threads() -> Result<()> {
    let Ok(value) = std::env::var(THREADS_ENV) else {
        return Ok(());
    };
    let threads: usize = value.trim().parse().map_err(|_| {
        invalid(format!(
            "{THREADS_ENV} must be a non-negative integer, got {value:?}"
        ))
    })?;
    if threads > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
            .map_err(|e| invalid(format!("thread pool: {e}")))?;
    }
    Ok(())
}

fn report_error(e: &Error) -> i32 {
    let code = e.exit_code();
    let doc = serde_json::json!({
        "error": e.kind(),
        "message": e.to_string(),
        "exit_code": code,
    });
    eprintln!("{doc}");
    code
}

/// Parses `args`, runs, and returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let config = match RunConfig::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    if let Err(e) = configure_threads() {
        return report_error(&e);
    }
    match run(&config) {
        Ok(Some(path)) => {
            eprintln!("wrote {}", path.display());
            0
        }
        Ok(None) => 0,
        Err(e) => report_error(&e),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_embed_seed() {
        let c =
            RunConfig::try_parse_from(["digraphon", "--seed", "7", "--format", "csv", "section5"])
                .unwrap();
        assert_eq!(output_name(&c), "section5-seed7.csv");
        let c = RunConfig::try_parse_from(["digraphon", "section5", "--n-list", "2,3"]).unwrap();
        assert!(matches!(c.command, Command::Section5 { ref n_list } if n_list == &[2, 3]));
    }

    #[test]
    fn spectrum_needs_one_input() {
        assert!(RunConfig::try_parse_from(["digraphon", "spectrum"]).is_err());
        assert!(RunConfig::try_parse_from([
            "digraphon",
            "spectrum",
            "--kernel",
            "a",
            "--digraph",
            "b"
        ])
        .is_err());
    }
}
