//! `eigenid`: generate Hermitian test matrices, check eigenvector magnitudes
//! obtained from eigenvalues alone, and recover constraint vectors.
//!
//! Exit codes: 0 pass, 1 numeric mismatch, 2 degenerate input, 3 infeasible
//! targets, 4 I/O, parse or usage error.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod commands;
mod error;
mod io;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use eigenid::DeflationMode;

use commands::{ExperimentChoice, Instance, VerifyOptions};
use error::{CliError, Status};
use io::Format;

#[derive(Parser)]
#[command(name = "eigenid", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a seeded random Hermitian matrix.
    Generate {
        /// Matrix dimension.
        n: usize,
        #[arg(long)]
        seed: u64,
        /// Complex Hermitian instead of real symmetric.
        #[arg(long)]
        complex: bool,
        #[arg(short, long)]
        out: PathBuf,
        /// Defaults to Matrix Market for `.mtx`/`.mm`, JSON otherwise.
        #[arg(long, value_enum)]
        format: Option<Format>,
    },
    /// Run the magnitude experiments against a direct eigendecomposition.
    Verify {
        /// Matrix file; omit when using --random.
        #[arg(required_unless_present = "random", conflicts_with = "random")]
        matrix: Option<PathBuf>,
        /// Generate the instance instead: dimension and seed.
        #[arg(long, num_args = 2, value_names = ["N", "SEED"])]
        random: Option<Vec<u64>>,
        /// Real symmetric random instance (default is complex).
        #[arg(long, requires = "random")]
        real: bool,
        #[arg(long, value_enum, default_value = "all")]
        experiment: ExperimentChoice,
        #[arg(long, default_value_t = 1e-10)]
        eps: f64,
        #[arg(long, value_enum, default_value = "restriction")]
        mode: Mode,
        /// Seed of the random basis; defaults to the instance seed + 1000.
        #[arg(long)]
        basis_seed: Option<u64>,
        /// Write the report as JSON (`-` for stdout).
        #[arg(long)]
        json: Option<PathBuf>,
        #[arg(long, value_enum)]
        format: Option<Format>,
        /// Replace the input by (A + A*)/2 instead of rejecting it.
        #[arg(long)]
        symmetrize: bool,
    },
    /// Find a unit vector c whose constrained stationary values are the targets.
    Recover {
        matrix: PathBuf,
        /// n-1 ascending values, comma separated, or @file.
        #[arg(long, allow_hyphen_values = true)]
        targets: String,
        /// One '+' or '-' per eigenvector (default all '+').
        #[arg(long, default_value = "", allow_hyphen_values = true)]
        signs: String,
        #[arg(long)]
        json: Option<PathBuf>,
        #[arg(long, value_enum)]
        format: Option<Format>,
        #[arg(long)]
        symmetrize: bool,
    },
}

#[derive(Debug, Clone, Copy, clap::ValueEnum)]
enum Mode {
    Restriction,
    PaperDropSmallest,
}

impl From<Mode> for DeflationMode {
    fn from(m: Mode) -> Self {
        match m {
            Mode::Restriction => DeflationMode::Restriction,
            Mode::PaperDropSmallest => DeflationMode::PaperDropSmallest,
        }
    }
}

fn configure_threads() -> Result<(), CliError> {
    let Ok(raw) = std::env::var("EIGENID_THREADS") else {
        return Ok(());
    };
    let threads: usize = raw
        .trim()
        .parse()
        .map_err(|_| CliError::Usage(format!("EIGENID_THREADS must be a non-negative integer, got {raw:?}")))?;
    if threads > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
            .map_err(|e| CliError::Usage(e.to_string()))?;
    }
    Ok(())
}

fn run(cli: Cli) -> Result<Status, CliError> {
    configure_threads()?;
    match cli.command {
        Command::Generate {
            n,
            seed,
            complex,
            out,
            format,
        } => commands::generate(n, seed, complex, &out, format),
        Command::Verify {
            matrix,
            random,
            real,
            experiment,
            eps,
            mode,
            basis_seed,
            json,
            format,
            symmetrize,
        } => {
            let instance = match (matrix, random) {
                (_, Some(r)) => Instance::Random {
                    n: usize::try_from(r[0]).map_err(|_| CliError::Usage("N too large".into()))?,
                    seed: r[1],
                    complex: !real,
                },
                (Some(path), None) => Instance::File {
                    path,
                    format,
                    symmetrize,
                },
                (None, None) => unreachable!("clap requires one of them"),
            };
            let opts = VerifyOptions {
                experiment,
                eps,
                mode: mode.into(),
                basis_seed,
                json,
            };
            commands::verify(instance, &opts)
        }
        Command::Recover {
            matrix,
            targets,
            signs,
            json,
            format,
            symmetrize,
        } => commands::recover(&matrix, format, symmetrize, &targets, &signs, json.as_deref()),
    }
}

fn main() -> ExitCode {
    // clap's own exit code for bad arguments (2) would read as "degenerate"
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { Status::Input } else { Status::Pass }.into();
        }
    };
    match run(cli) {
        Ok(status) => status.into(),
        Err(e) => {
            eprintln!("error: {e}");
            e.status().into()
        }
    }
}
