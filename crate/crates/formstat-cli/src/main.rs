mod artifacts;
mod commands;

use artifacts::Artifacts;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use std::path::PathBuf;
use std::process::ExitCode;

pub const EXIT_USAGE: u8 = 2;
pub const EXIT_PARSE: u8 = 3;
pub const EXIT_VALIDATION: u8 = 4;
pub const EXIT_COMPUTE: u8 = 5;

#[derive(Debug, Parser)]
#[command(name = "formstat", version, about = "Statistics for catalogs of prime-level weight-2 newforms")]
pub struct Cli {
    #[command(flatten)]
    pub config: RunConfig,
    #[command(subcommand)]
    pub command: Command,
}

/// Everything besides the inputs that determines a run's artifacts.
#[derive(Debug, Clone, Args, Serialize)]
pub struct RunConfig {
    /// Canonical forms CSV; `subfields.csv` and `coeffs/` next to it are
    /// picked up automatically.
    #[arg(long, global = true)]
    pub catalog: Option<PathBuf>,
    /// Base URL of a remote catalog endpoint.
    #[arg(long, global = true)]
    pub remote: Option<String>,
    /// Never touch the network; only the cache is consulted.
    #[arg(long, global = true)]
    pub offline: bool,
    /// Cache directory for remote downloads (defaults to $FORMSTAT_CACHE_DIR).
    #[arg(long, global = true)]
    pub cache_dir: Option<PathBuf>,
    /// Directory receiving artifacts and the manifest.
    #[arg(long, global = true, default_value = "formstat-out")]
    pub out: PathBuf,
    /// Source of eigenspace dimensions.
    #[arg(long, global = true, value_enum, default_value_t = DimMode::Exact)]
    pub dim_mode: DimMode,
    /// Seed for every randomized step.
    #[arg(long, global = true, default_value_t = 1)]
    pub seed: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum DimMode {
    Exact,
    Approximate,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Convert an ad hoc export or a remote range into a canonical catalog.
    Ingest(commands::IngestArgs),
    /// Validate a catalog, its coefficient tables and optional curve data.
    Validate(commands::ValidateArgs),
    /// Orbit counts grouped by degree, discriminant or sign.
    Counts(commands::CountsArgs),
    /// Fit li(X^b) or Poisson models to the catalog.
    Fit(commands::FitArgs),
    /// Same-level collision tables for one discriminant.
    Collisions(commands::CollisionsArgs),
    /// Atkin–Lehner sign likelihood analysis.
    Alsigns(commands::AlsignsArgs),
    /// Genus-2 families and Igusa–Clebsch invariants.
    #[command(subcommand)]
    Genus2(commands::Genus2Command),
    /// Lattice-point counts on Hilbert modular surfaces.
    Hilbert(commands::HilbertArgs),
    /// Counts of integer polynomials with bounded roots.
    Heckepoly(commands::HeckepolyArgs),
    /// Coefficient statistics at primes.
    #[command(subcommand)]
    Lt(commands::LtCommand),
    /// Run every dataset analysis and write a combined summary.
    Report(commands::ReportArgs),
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Lib(formstat::Error),
}

impl From<formstat::Error> for CliError {
    fn from(e: formstat::Error) -> Self {
        CliError::Lib(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Lib(formstat::Error::Io(e))
    }
}

impl CliError {
    fn exit_code(&self) -> u8 {
        use formstat::Error as E;
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Lib(e) => match e {
                E::InvalidArgument(_) | E::Config(_) => EXIT_USAGE,
                E::Parse { .. } | E::Io(_) => EXIT_PARSE,
                E::Validation(_) => EXIT_VALIDATION,
                _ => EXIT_COMPUTE,
            },
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::Lib(e) => write!(f, "{e}"),
        }
    }
}

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    let run = || -> Result<(), CliError> {
        let mut art = Artifacts::new(&cli.config.out)?;
        commands::dispatch(&cli.command, &cli.config, &mut art)?;
        art.finish(&argv[1..], &cli.config)?;
        Ok(())
    };
    match run() {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("formstat: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
