//! Subcommand front end: load a triangulation, run one of the index,
//! solver, or invariant pipelines, and print JSON (or CSV) to stdout.
//! Errors go to stderr as a JSON object; exit code 1 flags bad input,
//! 2 flags a numerical failure such as non-convergence.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

mod run;
mod terms;

#[derive(Parser)]
#[command(name = "m3di", version, about = "meromorphic 3D-index toolkit")]
pub struct Cli {
    /// Worker thread count; overrides the M3DI_THREADS environment variable.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    #[command(subcommand)]
    pub cmd: Cmd,
}

#[derive(Subcommand)]
pub enum Cmd {
    /// Triangulation summary: sizes, matrices present, homology order.
    Info { file: PathBuf },
    /// State integral at hbar = re + i im with S sample points per circle.
    Integrate {
        file: PathBuf,
        re_hbar: f64,
        im_hbar: f64,
        samples: usize,
        /// Cap on total grid evaluations.
        #[arg(long)]
        eval_cap: Option<u64>,
    },
    /// Newton solve of the gluing equations from the stored angle structure.
    Solve { file: PathBuf },
    /// Tau invariant of the geometric solution, with the 1-loop cross-check.
    Tau { file: PathBuf },
    /// Taut structures in the component of the stored angle structure.
    Taut { file: PathBuf },
    /// Mellin-Barnes integral of one taut structure (default: all of them).
    Mb {
        file: PathBuf,
        /// Index into the taut enumeration.
        #[arg(long)]
        taut: Option<usize>,
    },
    /// Beta invariant: sum of the Mellin-Barnes integrals.
    Beta { file: PathBuf },
    /// Assemble the asymptotic terms (beta slope + geometric oscillation).
    Predict {
        file: PathBuf,
        /// Skip the beta invariant and emit only the oscillatory term.
        #[arg(long)]
        no_beta: bool,
        /// Degree of the cusp torus covering.
        #[arg(long, default_value_t = 1.0)]
        degree: f64,
        /// Also evaluate the prediction at this kappa.
        #[arg(long)]
        kappa: Option<f64>,
    },
    /// CSV table of direct index values against the predicted asymptotics.
    Compare {
        file: PathBuf,
        #[arg(long)]
        kappa_min: f64,
        #[arg(long)]
        kappa_max: f64,
        #[arg(long)]
        kappa_step: f64,
        #[arg(long)]
        samples: usize,
        /// JSON list of terms; computed from the triangulation when absent.
        #[arg(long)]
        terms: Option<PathBuf>,
        #[arg(long, default_value_t = 1.0)]
        degree: f64,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    configure_threads(cli.threads);
    match run::dispatch(&cli.cmd) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!(
                "{}",
                serde_json::json!({ "error": e.message, "kind": e.kind_name() })
            );
            ExitCode::from(e.exit_code())
        }
    }
}

fn configure_threads(flag: Option<usize>) {
    let wanted = flag.or_else(|| {
        std::env::var("M3DI_THREADS")
            .ok()
            .and_then(|v| v.parse().ok())
    });
    if let Some(n) = wanted {
        let n = n.max(1);
        #[cfg(feature = "parallel")]
        {
            // ignore failure: the global pool can only be set once
            let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
        }
        #[cfg(not(feature = "parallel"))]
        let _ = n;
    }
}
