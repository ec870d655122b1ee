use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use netperf::Regime;

/// Steady-state noise amplification (squared H2 norm) of linear networks.
///
/// Exit status: 0 success, 2 stability failure, 3 input error, 4 numerical
/// failure. Set NETPERF_THREADS to fix the size of the worker pool.
#[derive(Debug, Parser)]
#[command(name = "netperf", version)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Exact measure and spectral bounds for a state matrix and output weight.
    Analyze(AnalyzeArgs),
    /// Stability, closed forms and exact values for a cyclic network.
    Cyclic(CyclicArgs),
    /// Size sweep of identical-subsystem cyclic networks at fixed beta, as CSV.
    Sweep(SweepArgs),
    /// Monte Carlo estimate of the steady-state dispersion.
    Simulate(SimulateArgs),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum MatrixFormat {
    /// First line n, then n whitespace-separated rows.
    Text,
    /// Array of rows, e.g. [[-1, 0], [0, -1]].
    Json,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum ReportFormat {
    Json,
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputSelection {
    /// Q = I: the full state.
    All,
    /// Q = e_n e_nᵀ: the last subsystem only.
    Last,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum RegimeArg {
    Sub,
    Unit,
    Super,
}

impl From<RegimeArg> for Regime {
    fn from(r: RegimeArg) -> Self {
        match r {
            RegimeArg::Sub => Regime::SubUnit,
            RegimeArg::Unit => Regime::Unit,
            RegimeArg::Super => Regime::SuperUnit,
        }
    }
}

#[derive(Debug, Args)]
pub struct SystemInput {
    /// State matrix file.
    pub matrix: PathBuf,
    /// Output weight file; the identity when omitted.
    pub weight: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = MatrixFormat::Text)]
    pub input_format: MatrixFormat,
}

#[derive(Debug, Args)]
pub struct AnalyzeArgs {
    #[command(flatten)]
    pub input: SystemInput,
    #[arg(long, value_enum, default_value_t = ReportFormat::Json)]
    pub format: ReportFormat,
}

#[derive(Debug, Args)]
pub struct SimulationFlags {
    /// Euler–Maruyama step.
    #[arg(long, default_value_t = 1e-3)]
    pub dt: f64,
    /// Simulated time per trajectory.
    #[arg(long, default_value_t = 200.0)]
    pub horizon: f64,
    /// Discarded transient; ten slowest time constants when omitted.
    #[arg(long)]
    pub burn_in: Option<f64>,
    #[arg(long, default_value_t = 64)]
    pub ensembles: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Args)]
pub struct CyclicArgs {
    /// Parameter file: {"n", "a", "c"} or {"n", "frak_a", "frak_c"}.
    pub params: PathBuf,
    #[arg(long, value_enum, default_value_t = OutputSelection::All)]
    pub output: OutputSelection,
    /// Largest n for which the Lyapunov equation is solved.
    #[arg(long, default_value_t = netperf::sweep::DEFAULT_EXACT_CAP)]
    pub exact_cap: usize,
    /// Add a Monte Carlo estimate.
    #[arg(long)]
    pub simulate: bool,
    #[command(flatten)]
    pub sim: SimulationFlags,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[arg(long, default_value_t = 0.0)]
    pub beta: f64,
    #[arg(long, value_enum, default_value_t = RegimeArg::Unit)]
    pub regime: RegimeArg,
    #[arg(long, default_value_t = 1.0)]
    pub frak_c: f64,
    /// Ascending network sizes, comma separated.
    #[arg(long, value_delimiter = ',', required = true)]
    pub n_list: Vec<usize>,
    #[arg(long, default_value_t = netperf::sweep::DEFAULT_EXACT_CAP)]
    pub exact_cap: usize,
    /// Destination file; standard output when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    #[command(flatten)]
    pub input: SystemInput,
    #[command(flatten)]
    pub sim: SimulationFlags,
}
