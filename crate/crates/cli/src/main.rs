//! `smalldev` command-line front end.
//!
//! Exit codes: 0 on success, 1 on a domain error (no small deviation property,
//! no Esscher root, failed self-test), 2 on a usage error (bad flags or config).

mod commands;
mod eps;
mod table;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use eps::EpsArgs;
use smalldev::SmallJumpMode;

#[derive(Parser, Debug)]
#[command(name = "smalldev", version, about = "Small-deviation asymptotics for real Levy processes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Structural classification of a triplet: type (I), effective drift, small deviation property.
    Classify(ClassifyArgs),
    /// Cost terms and exponent bounds over a grid of radii, as CSV.
    Bounds(BoundsArgs),
    /// Catalog rate of a named family.
    Rate(RateArgs),
    /// Monte Carlo estimate of the small-ball probability at one radius, as one CSV row.
    Simulate(SimulateArgs),
    /// Bounds over a grid joined with simulations at the largest radii.
    Sweep(SweepArgs),
    /// Runs the invariant checks over the shipped configurations.
    Selftest(SelftestArgs),
}

/// A JSON triplet file, or the name of a shipped example such as `stable_sub_drift`.
#[derive(Args, Debug)]
struct ConfigArg {
    config: String,
}

#[derive(Args, Debug)]
struct ClassifyArgs {
    #[command(flatten)]
    config: ConfigArg,
    /// Print JSON instead of key=value lines.
    #[arg(long)]
    json: bool,
}

#[derive(Args, Debug)]
struct OutputArgs {
    /// Output file; standard output when absent or `-`.
    #[arg(long, short)]
    out: Option<PathBuf>,
    /// Comma-separated subset of columns, in output order.
    #[arg(long, value_delimiter = ',')]
    columns: Vec<String>,
}

#[derive(Args, Debug)]
struct BoundsArgs {
    #[command(flatten)]
    config: ConfigArg,
    #[command(flatten)]
    eps: EpsArgs,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Family {
    StableSubordinator,
    Gamma,
    Polynomial,
    VarianceGamma,
    SubordinatedBm,
    CompoundPoisson,
    StrictlyStable,
}

#[derive(Args, Debug)]
struct RateArgs {
    #[arg(long, value_enum)]
    family: Family,
    /// Stable index (stable-subordinator, strictly-stable).
    #[arg(long)]
    alpha: Option<f64>,
    /// Effective drift (stable-subordinator, gamma).
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    mu: f64,
    /// Gamma scale `a` in `b e^{-x/a}/x`.
    #[arg(long)]
    a: Option<f64>,
    /// Gamma intensity `b` in `b e^{-x/a}/x`.
    #[arg(long)]
    b: Option<f64>,
    #[arg(long)]
    alpha1: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    alpha2: Option<f64>,
    #[arg(long = "C1", alias = "c1")]
    c1: Option<f64>,
    #[arg(long = "C2", alias = "c2")]
    c2: Option<f64>,
    /// Polynomial measure drift under the `1_{|x|<=1}` compensation (default 0).
    #[arg(long, allow_negative_numbers = true, conflicts_with = "c")]
    drift: Option<f64>,
    /// Polynomial measure effective drift.
    #[arg(long, allow_negative_numbers = true)]
    c: Option<f64>,
    #[arg(long)]
    lambda1: Option<f64>,
    #[arg(long)]
    lambda2: Option<f64>,
    /// Index of the subordinator's Laplace exponent `u^gamma`.
    #[arg(long)]
    gamma: Option<f64>,
    /// Drift of the subordinator.
    #[arg(long = "b-a", default_value_t = 0.0)]
    b_a: f64,
    #[arg(long)]
    total_mass: Option<f64>,
    /// Evaluate the rate at these radii (CSV output).
    #[arg(long, value_delimiter = ',', num_args = 1..)]
    eps: Vec<f64>,
    #[arg(long)]
    json: bool,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum ModeArg {
    GaussianSubstitute,
    DriftOnly,
}

impl From<ModeArg> for SmallJumpMode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::GaussianSubstitute => SmallJumpMode::GaussianSubstitute,
            ModeArg::DriftOnly => SmallJumpMode::DriftOnly,
        }
    }
}

#[derive(Args, Debug, Clone)]
struct SimOptions {
    #[arg(long, default_value_t = 100_000)]
    paths: usize,
    /// Monitoring points per unit time.
    #[arg(long, default_value_t = 1024)]
    grid: usize,
    #[arg(long, default_value_t = 0x5EED)]
    seed: u64,
    /// Small-jump truncation radius (default eps/10, kept below the nearest atom).
    #[arg(long)]
    delta: Option<f64>,
    #[arg(long, value_enum, default_value_t = ModeArg::GaussianSubstitute)]
    mode: ModeArg,
    /// Skip the Brownian-bridge correction between monitoring points.
    #[arg(long)]
    no_bridge: bool,
}

#[derive(Args, Debug)]
struct SimulateArgs {
    #[command(flatten)]
    config: ConfigArg,
    #[arg(long)]
    eps: f64,
    #[command(flatten)]
    sim: SimOptions,
    /// Also write the monitored sup of every path to this file, one per line.
    #[arg(long)]
    sups: Option<PathBuf>,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args, Debug)]
struct SweepArgs {
    #[command(flatten)]
    config: ConfigArg,
    #[command(flatten)]
    eps: EpsArgs,
    /// Simulate at this many of the largest radii.
    #[arg(long, default_value_t = 0)]
    simulate_top: usize,
    #[command(flatten)]
    sim: SimOptions,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args, Debug)]
struct SelftestArgs {
    /// Print passing checks too.
    #[arg(long, short)]
    verbose: bool,
}

/// Failure classes, mapped to exit codes.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Domain(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Domain(_) => 1,
            CliError::Usage(_) => 2,
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Usage(format!("I/O error: {e}"))
    }
}

fn configure_threads() -> Result<(), CliError> {
    let Ok(raw) = std::env::var("SMALLDEV_THREADS") else { return Ok(()) };
    let n: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| CliError::Usage(format!("SMALLDEV_THREADS must be a positive integer, got {raw:?}")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| CliError::Usage(format!("cannot size the thread pool: {e}")))
}

fn run(cli: Cli) -> Result<(), CliError> {
    configure_threads()?;
    match cli.command {
        Command::Classify(a) => commands::classify(&a),
        Command::Bounds(a) => commands::bounds(&a),
        Command::Rate(a) => commands::rate(&a),
        Command::Simulate(a) => commands::simulate(&a),
        Command::Sweep(a) => commands::sweep(&a),
        Command::Selftest(a) => commands::selftest(&a),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            match &e {
                CliError::Usage(m) => eprintln!("usage error: {m}"),
                CliError::Domain(m) => eprintln!("error: {m}"),
            }
            ExitCode::from(e.code())
        }
    }
}
