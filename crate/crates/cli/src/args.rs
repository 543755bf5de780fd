use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "scalecut", version, about = "Casimir energy and force under wavelet scale cutoffs")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Tabulate the cutoff function and momentum profile of a wavelet family.
    Cutoff(CutoffArgs),
    /// Force per unit area over a range of plate separations.
    Force(SweepArgs),
    /// Mode-sum, bulk and renormalized energy densities over separations.
    Energy(SweepArgs),
    /// Run the acceptance checks.
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Unit {
    /// Lengths in units of A, energies and forces in units of A^-4.
    Cutoff,
    Absolute,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
    /// Output file; standard output when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "cutoff")]
    pub unit: Unit,
}

#[derive(Debug, Args)]
pub struct CutoffArgs {
    /// hermitian:n=<int>, exponential, bump, nonanalytic or custom:<path>
    #[arg(long, default_value = "hermitian:n=1")]
    pub wavelet: String,
    #[arg(long, default_value_t = 5.0)]
    pub kmax: f64,
    /// Number of grid points, endpoints included.
    #[arg(long, default_value_t = 101)]
    pub steps: usize,
    /// Tabulate the position-space profile on r in [0, kmax] instead.
    #[arg(long)]
    pub position: bool,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[arg(long, default_value = "hermitian:n=1")]
    pub wavelet: String,
    /// Scale cutoff A.
    #[arg(long = "A", default_value_t = 1.0)]
    pub a: f64,
    #[arg(long, default_value_t = 1.0)]
    pub smin: f64,
    #[arg(long, default_value_t = 6.0)]
    pub smax: f64,
    #[arg(long, default_value_t = 101)]
    pub steps: usize,
    #[arg(long, default_value = "periodic")]
    pub bc: String,
    /// sum, series, exact or remainder
    #[arg(long, default_value = "sum")]
    pub method: String,
    /// Number of modes N, or `adaptive`.
    #[arg(long, default_value = "adaptive")]
    pub truncation: String,
    /// Highest series index M kept by `--method series`.
    #[arg(long, default_value_t = 3)]
    pub order: u32,
    /// Worker threads for the sweep; all cores when absent.
    #[arg(long)]
    pub workers: Option<usize>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Run only the named check.
    #[arg(long)]
    pub only: Option<String>,
    /// Print the check names and exit.
    #[arg(long)]
    pub list: bool,
}
