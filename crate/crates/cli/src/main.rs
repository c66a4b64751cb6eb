//! Command-line surface for qubit correlation-set characterization.
//!
//! Data goes to stdout, diagnostics to stderr. Exit codes: 0 success,
//! 1 oracle violation, 2 file or parse error, 3 invalid state,
//! 4 dimension or parameter error.

mod commands;
mod document;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

#[derive(Debug)]
pub enum CliError {
    Io(String),
    Parse(String),
    InvalidState(String),
    Parameter(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Io(_) | CliError::Parse(_) => 2,
            CliError::InvalidState(_) => 3,
            CliError::Parameter(_) => 4,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Io(msg) => write!(f, "io error: {msg}"),
            CliError::Parse(msg) => write!(f, "parse error: {msg}"),
            CliError::InvalidState(msg) => write!(f, "invalid state: {msg}"),
            CliError::Parameter(msg) => write!(f, "parameter error: {msg}"),
        }
    }
}

#[derive(Parser)]
#[command(
    name = "qcorr",
    version,
    about = "Correlation sets of qubit state families under binary tests"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Emit the Gram matrix, eigenstructure, and rank diagnostics of a family
    Characterize {
        /// JSON family file
        states: PathBuf,
        /// Relative rank cutoff for the factorization
        #[arg(long, default_value_t = 1e-9)]
        rank_tol: f64,
    },
    /// Emit the extremal test and boundary correlation for a probing direction
    Witness {
        states: PathBuf,
        /// Comma-separated entries, one per state; scale is irrelevant
        #[arg(long)]
        direction: String,
        #[arg(long, default_value_t = 1e-9)]
        rank_tol: f64,
    },
    /// Decide membership of observed correlation vectors, with certificates
    Test {
        states: PathBuf,
        /// JSON file with a "correlations" list of m-vectors
        correlations: PathBuf,
        /// Membership tolerance
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        #[arg(long, default_value_t = 1e-9)]
        rank_tol: f64,
    },
    /// Sample boundary correlations; for pairs also emit a dense ellipse trace
    Boundary {
        states: PathBuf,
        #[arg(long, default_value_t = 1024)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Output format: json or csv
        #[arg(long, default_value = "json")]
        format: String,
        #[arg(long, default_value_t = 1e-9)]
        rank_tol: f64,
    },
    /// Validate the characterization against random physical measurements
    Oracle {
        states: PathBuf,
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Membership tolerance (the boundary band)
        #[arg(long, default_value_t = 1e-7)]
        tol: f64,
        #[arg(long, default_value_t = 1e-9)]
        rank_tol: f64,
    },
    /// Closed-form worked families cross-checked against the general machinery
    Apps {
        #[command(subcommand)]
        which: AppsCommand,
    },
}

#[derive(Subcommand)]
enum AppsCommand {
    /// Any pair of pure states with Bloch angle alpha
    PurePair {
        /// Angle in radians, within [0, pi]
        #[arg(long)]
        alpha: f64,
    },
    /// m pure states uniformly spaced on the Bloch equatorial plane
    Polygon {
        #[arg(long)]
        m: usize,
    },
}

fn run(cli: Cli) -> Result<u8, CliError> {
    match cli.command {
        Command::Characterize { states, rank_tol } => commands::characterize(&states, rank_tol),
        Command::Witness {
            states,
            direction,
            rank_tol,
        } => commands::witness(&states, &direction, rank_tol),
        Command::Test {
            states,
            correlations,
            tol,
            rank_tol,
        } => commands::test(&states, &correlations, tol, rank_tol),
        Command::Boundary {
            states,
            samples,
            seed,
            format,
            rank_tol,
        } => commands::boundary(&states, samples, seed, &format, rank_tol),
        Command::Oracle {
            states,
            samples,
            seed,
            tol,
            rank_tol,
        } => commands::oracle(&states, samples, seed, tol, rank_tol),
        Command::Apps { which } => match which {
            AppsCommand::PurePair { alpha } => commands::apps_pure_pair(alpha),
            AppsCommand::Polygon { m } => commands::apps_polygon(m),
        },
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code())
        }
    }
}
