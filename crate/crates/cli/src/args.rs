use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

#[derive(Debug, Parser)]
#[command(name = "kb", version, about = "1D lattice Boltzmann solver for Burgers and linear acoustics")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run one simulation and write snapshots, entropy series and a report.
    Run(RunArgs),
    /// Run a parameter grid and write one summary row per combination.
    Sweep(SweepArgs),
    /// Run the property suites.
    Verify(VerifyArgs),
    /// Compare a unit-rate lattice run against its finite-volume form.
    Compare(CompareArgs),
}

#[derive(Debug, Clone, Args)]
pub struct SchemeArgs {
    /// centered-d1q3, upwind-d1q3, centered-d1q2 or acoustic-d1q3.
    #[arg(long)]
    pub scheme: String,

    /// Rest-population weight of the centered D1Q3 equilibrium.
    #[arg(long, default_value_t = 0.5, allow_negative_numbers = true)]
    pub alpha: f64,

    /// Sound speed of the acoustic scheme.
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub c0: f64,
}

#[derive(Debug, Clone, Args)]
pub struct GridArgs {
    /// Number of interior cells (default depends on the initial condition).
    #[arg(long)]
    pub cells: Option<usize>,

    #[arg(long, allow_negative_numbers = true)]
    pub xmin: Option<f64>,

    #[arg(long, allow_negative_numbers = true)]
    pub xmax: Option<f64>,

    /// Wrap-around boundaries instead of far-field ghosts.
    #[arg(long)]
    pub periodic: bool,
}

#[derive(Debug, Clone, Args)]
pub struct IcArgs {
    /// converging, riemann-shock, riemann-rarefaction, gaussian or custom.
    #[arg(long)]
    pub ic: Option<String>,

    /// Cell values for a custom initial condition, separated by whitespace
    /// or commas; lines starting with `#` are skipped.
    #[arg(long)]
    pub profile: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct DurationArgs {
    #[arg(long, conflicts_with = "t_final")]
    pub steps: Option<usize>,

    /// Final time, rounded to a whole number of steps.
    #[arg(long, allow_negative_numbers = true)]
    pub t_final: Option<f64>,
}

#[derive(Debug, Clone, Args)]
pub struct RunArgs {
    #[command(flatten)]
    pub scheme: SchemeArgs,

    /// Lattice speed Δx/Δt.
    #[arg(long, allow_negative_numbers = true)]
    pub lambda: f64,

    #[arg(long, default_value_t = 1.7, allow_negative_numbers = true)]
    pub s2: f64,

    #[arg(long, default_value_t = 1.7, allow_negative_numbers = true)]
    pub s3: f64,

    #[command(flatten)]
    pub ic: IcArgs,

    #[command(flatten)]
    pub duration: DurationArgs,

    #[arg(long, default_value_t = 10)]
    pub snapshot_every: usize,

    #[command(flatten)]
    pub grid: GridArgs,

    /// Output directory, created if missing.
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Clone, Args)]
pub struct SweepArgs {
    #[arg(long)]
    pub scheme: String,

    /// List `a,b,c` or inclusive range `start:stop:step`.
    #[arg(long, default_value = "0.5")]
    pub alpha: String,

    #[arg(long)]
    pub lambda: String,

    /// Relaxation rate applied to both s2 and s3.
    #[arg(long, default_value = "1.7")]
    pub s: String,

    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub c0: f64,

    #[command(flatten)]
    pub ic: IcArgs,

    #[command(flatten)]
    pub duration: DurationArgs,

    #[command(flatten)]
    pub grid: GridArgs,

    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    /// Run only the named suite; repeatable.
    #[arg(long)]
    pub suite: Vec<String>,

    /// Adds `eps·y²` to h₊* inside the suites (negative control).
    #[arg(long, hide = true, default_value_t = 0.0)]
    pub perturb_dual_plus: f64,
}

#[derive(Debug, Clone, Args)]
pub struct CompareArgs {
    #[command(flatten)]
    pub scheme: SchemeArgs,

    #[arg(long, allow_negative_numbers = true)]
    pub lambda: f64,

    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub s2: f64,

    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub s3: f64,

    #[command(flatten)]
    pub ic: IcArgs,

    #[arg(long, default_value_t = 50)]
    pub steps: usize,

    #[command(flatten)]
    pub grid: GridArgs,

    #[arg(long)]
    pub out: PathBuf,
}
