//! Flag definitions for the `qhe` binary.
//!
//! Every value flag is optional at the parser level so a `--config` file can
//! supply it; the merge in `main` enforces which ones each command needs.
//! Units follow the natural system of the engine library: energies in δ,
//! temperatures in δ/k_B, times in ħ/δ.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use qhe_core::engines::EngineParams;

#[derive(Parser)]
#[command(
    name = "qhe",
    version,
    about = "Qutrit heat engines charging a two-level quantum battery"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Worker threads for parallel searches (overrides QHE_THREADS; default:
    /// all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
}

#[derive(Subcommand)]
pub enum Command {
    /// Run one engine at explicit parameters and emit its cycle metrics.
    Run(RunArgs),
    /// Optimize one engine over a grid of bath-temperature caps.
    Sweep(SweepArgs),
    /// Optimize several engines on a shared cap grid and check their ordering.
    Compare(CompareArgs),
    /// Run the fixed-input verification battery.
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Csv,
}

#[derive(Args)]
pub struct RunArgs {
    /// Engine kind: seq-out, seq-frag, sim-out, or sim-frag.
    #[arg(long)]
    pub engine: Option<String>,

    /// Qutrit level spacing A; the battery gap is A/2.
    #[arg(long = "A")]
    pub a: Option<f64>,

    /// Hot bath temperature.
    #[arg(long = "Th")]
    pub th: Option<f64>,

    /// Cold bath temperature.
    #[arg(long = "Tc")]
    pub tc: Option<f64>,

    /// Work-stroke phase λ (sequential engines; π/2 transfers fully).
    #[arg(long)]
    pub lambda: Option<f64>,

    /// Battery coupling strength, at most A/2 (simultaneous engines).
    #[arg(long = "omega-sb")]
    pub omega_sb: Option<f64>,

    /// Joint charging time (simultaneous engines).
    #[arg(long)]
    pub t2: Option<f64>,

    /// Bath coupling κ of the ohmic spectral density J(ω) = κω.
    #[arg(long)]
    pub kappa: Option<f64>,

    /// Cycles to run; the fragmented sequential engine reports cycle 2.
    #[arg(long)]
    pub cycles: Option<usize>,

    /// Steady-state detection threshold for relaxation strokes.
    #[arg(long = "steady-tol")]
    pub steady_tol: Option<f64>,

    /// Flat key=value file mirroring these flags; explicit flags win.
    #[arg(long)]
    pub config: Option<PathBuf>,

    /// Output format.
    #[arg(long, value_enum, default_value = "json")]
    pub format: OutputFormat,

    /// Write output here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args)]
pub struct SweepArgs {
    /// Engine kind: seq-out, seq-frag, sim-out, or sim-frag.
    #[arg(long)]
    pub engine: Option<String>,

    /// Smallest bath-temperature cap T_U.
    #[arg(long = "tu-min")]
    pub tu_min: Option<f64>,

    /// Largest bath-temperature cap T_U.
    #[arg(long = "tu-max")]
    pub tu_max: Option<f64>,

    /// Number of evenly spaced grid points, endpoints included.
    #[arg(long = "tu-steps")]
    pub tu_steps: Option<usize>,

    /// Search with the smaller budget (5 grid points per dimension).
    #[arg(long, conflicts_with = "full")]
    pub fast: bool,

    /// Search with the full budget (8 per dimension); the default here.
    #[arg(long)]
    pub full: bool,

    /// Extra η columns re-evaluated at these cold temperatures
    /// (comma-separated); entries above the row's optimal T_H yield NaN.
    #[arg(long = "eta-vs-tc", value_delimiter = ',')]
    pub eta_vs_tc: Vec<f64>,

    /// Flat key=value file mirroring these flags; explicit flags win.
    #[arg(long)]
    pub config: Option<PathBuf>,

    /// Write the CSV here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args)]
pub struct CompareArgs {
    /// Engines to include (comma-separated); default: all four.
    #[arg(long, value_delimiter = ',')]
    pub engines: Vec<String>,

    /// Smallest bath-temperature cap T_U (default 20).
    #[arg(long = "tu-min")]
    pub tu_min: Option<f64>,

    /// Largest bath-temperature cap T_U (default 50).
    #[arg(long = "tu-max")]
    pub tu_max: Option<f64>,

    /// Number of evenly spaced grid points (default 2).
    #[arg(long = "tu-steps")]
    pub tu_steps: Option<usize>,

    /// Search with the smaller budget (5 per dimension); the default here.
    #[arg(long, conflicts_with = "full")]
    pub fast: bool,

    /// Search with the full budget (8 per dimension).
    #[arg(long)]
    pub full: bool,

    /// Flat key=value file mirroring these flags; explicit flags win.
    #[arg(long)]
    pub config: Option<PathBuf>,

    /// Output format (CSV ends with a #-prefixed ordering summary).
    #[arg(long, value_enum, default_value = "csv")]
    pub format: OutputFormat,

    /// Write output here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args)]
pub struct VerifyArgs {
    /// Run only the checks whose name contains this substring.
    #[arg(long)]
    pub only: Option<String>,

    /// Negative control: flip the sign of the bath coupling κ inside the
    /// fixed-point checks. Those checks must then fail and exit nonzero.
    #[arg(long = "negate-kappa")]
    pub negate_kappa: bool,
}

/// Fully merged settings for one `qhe run` invocation: the engine kind and
/// parameters (including the κ and steady-tolerance overrides), where the
/// result goes, how it is serialized, and the parallelism degree.
pub struct RunConfig {
    pub params: EngineParams,
    pub format: OutputFormat,
    pub out: Option<PathBuf>,
    pub threads: Option<usize>,
}
