//! `yeelab`: coefficient queries, single simulations, figure-reproduction
//! sweeps and the verification suite for the 1D Yee-FDTD laboratory.
//!
//! Exit codes: 0 success, 1 failed checks or a diverged/unsettled run,
//! 2 validation error, 3 evanescent regime, 4 I/O failure.

mod commands;
mod config;
mod fmt;

use clap::{Args, Parser, Subcommand, ValueEnum};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "yeelab",
    about = "1D Yee-FDTD interface laboratory",
    version,
    max_term_width = 100
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print exact and discrete interface coefficients.
    Coeff(CoeffArgs),
    /// Run one time-domain simulation and compare it with the closed form.
    Simulate(SimulateArgs),
    /// Sweep a parameter axis and write the dataset as CSV.
    Sweep(SweepArgs),
    /// Regenerate a predefined figure dataset as CSV files.
    Figures(FiguresArgs),
    /// Run the verification suite.
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum KindArg {
    Dielectric,
    Magnetic,
}

#[derive(Args)]
pub struct MaterialArgs {
    /// Interface model: which parameter jumps at the boundary.
    #[arg(long, value_enum)]
    kind: Option<KindArg>,
    /// Permittivities: "eps1,eps2" for a dielectric pair, one shared value
    /// for a magnetic pair.
    #[arg(long, value_delimiter = ',', num_args = 1..=2, allow_negative_numbers = true)]
    eps: Option<Vec<f64>>,
    /// Permeabilities: one shared value for a dielectric pair, "mu1,mu2"
    /// for a magnetic pair.
    #[arg(long, value_delimiter = ',', num_args = 1..=2, allow_negative_numbers = true)]
    mu: Option<Vec<f64>>,
    /// Grid nodes per vacuum wavelength.
    #[arg(long)]
    nlambda: Option<f64>,
    /// Courant number: "standard" (1), "optimal" (min refractive index) or a
    /// number.
    #[arg(long)]
    courant: Option<String>,
    /// Flat key=value config file; command-line flags win over its values.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Write the effective configuration to this file and continue.
    #[arg(long)]
    dump_config: Option<PathBuf>,
}

#[derive(Args)]
pub struct CoeffArgs {
    #[command(flatten)]
    material: MaterialArgs,
    /// Also print the report as JSON.
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
pub struct SimulateArgs {
    #[command(flatten)]
    material: MaterialArgs,
    /// Settling periods after the source ramp.
    #[arg(long)]
    warmup_periods: Option<f64>,
    /// Length of each measurement window, in periods.
    #[arg(long)]
    measure_periods: Option<u32>,
    /// Source turn-on length, in periods.
    #[arg(long)]
    ramp_periods: Option<f64>,
    /// Dump a "q,m,E,H" field snapshot every this many steps.
    #[arg(long)]
    snapshot_every: Option<u64>,
}

#[derive(Args)]
pub struct SweepArgs {
    #[command(flatten)]
    material: MaterialArgs,
    /// Swept quantity.
    #[arg(long, value_enum)]
    axis: Option<AxisArg>,
    /// Axis values: "start:stop:step" or a comma-separated list.
    #[arg(long)]
    values: Option<String>,
    /// Also run the simulator per point.
    #[arg(long)]
    with_sim: bool,
    /// Output CSV name (under the output directory unless absolute).
    #[arg(long)]
    out: Option<String>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum AxisArg {
    Nlambda,
    Mu,
    Eps,
}

#[derive(Args)]
pub struct FiguresArgs {
    /// Figure preset: fig5, fig6, fig8, fig9, figA or figB.
    id: String,
}

#[derive(Args)]
pub struct VerifyArgs {
    /// Run a single named check instead of the whole suite.
    #[arg(long)]
    only: Option<String>,
}

/// Failure modes mapped to exit codes.
pub enum CliError {
    /// Exit 1: failed verification or a run that diverged / never settled.
    Check(String),
    /// Exit 2: invalid parameters.
    Validation(String),
    /// Exit 3: evanescent regime.
    Evanescent(String),
    /// Exit 4: filesystem trouble.
    Io(String),
}

impl CliError {
    fn exit(self) -> ExitCode {
        let (code, message) = match self {
            CliError::Check(m) => (1, m),
            CliError::Validation(m) => (2, m),
            CliError::Evanescent(m) => (3, m),
            CliError::Io(m) => (4, m),
        };
        eprintln!("error: {message}");
        ExitCode::from(code)
    }
}

impl From<yeelab_core::Error> for CliError {
    fn from(e: yeelab_core::Error) -> Self {
        use yeelab_core::Error::*;
        match e {
            EvanescentRegime { .. } => CliError::Evanescent(e.to_string()),
            DivergenceDetected { .. } | NotSettled { .. } => CliError::Check(e.to_string()),
            _ => CliError::Validation(e.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Coeff(args) => commands::coeff(args),
        Command::Simulate(args) => commands::simulate(args),
        Command::Sweep(args) => commands::sweep(args),
        Command::Figures(args) => commands::figures(args),
        Command::Verify(args) => commands::verify(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => e.exit(),
    }
}
