//! Command-line front end: argument parsing, dispatch and exit codes.

pub mod commands;
pub mod input;
pub mod output;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use crate::commands::Report;
use crate::input::{CliError, NSpec};
use crate::output::Format;

pub const EXIT_OK: u8 = 0;
pub const EXIT_INPUT: u8 = 1;
pub const EXIT_VERIFICATION: u8 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "hyptest",
    version,
    about = "Optimal error probabilities and error exponents for quantum hypothesis testing"
)]
pub struct Cli {
    /// Write the table here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value = "csv")]
    pub format: Format,
    /// Tolerance for optimality and oracle agreement checks.
    #[arg(long, global = true, default_value_t = 1e-9, value_parser = positive)]
    pub tol: f64,
    /// Seed for randomized realizations.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Worker threads for series evaluation.
    #[arg(long, global = true, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..))]
    pub jobs: u32,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Optimal binary error Tr A₁ + Tr A₂ − ‖A₁ − A₂‖₁ over two.
    Helstrom {
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: PathBuf,
    },
    /// Optimal success probability for commuting (diagonal) generalized states.
    Classical {
        #[arg(long, value_delimiter = ',', required = true)]
        states: Vec<PathBuf>,
    },
    /// Chernoff divergence between two PSD operators.
    Chernoff {
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: PathBuf,
        /// Also evaluate the objective on a uniform grid with this many intervals.
        #[arg(long)]
        grid: Option<usize>,
    },
    /// Family parameters from P, Q, |ψ><ψ| matrix files or a parameter file.
    Params {
        #[arg(long, value_delimiter = ',', conflicts_with = "params")]
        states: Vec<PathBuf>,
        #[arg(long)]
        params: Option<PathBuf>,
    },
    /// Spectrum of the reduced matrix for each n.
    Reduce {
        #[arg(long)]
        params: PathBuf,
        #[arg(long, default_value = "1")]
        n: NSpec,
    },
    /// Exact log error and finite-difference exponent estimates.
    Exponent {
        #[arg(long)]
        params: PathBuf,
        #[arg(long, default_value = "1:200")]
        n: NSpec,
    },
    /// Sandwich bounds, remainder decay and optional dense cross-checks.
    Verify {
        #[arg(long)]
        params: PathBuf,
        #[arg(long, default_value = "10,20,40,80")]
        n: NSpec,
        /// Compare against the dense oracle where the budget allows.
        #[arg(long)]
        oracle: bool,
    },
    /// Dense n-copy error compared with the reduced computation.
    Oracle {
        #[arg(long)]
        params: PathBuf,
        #[arg(long, default_value = "1:3")]
        n: NSpec,
        /// Use a random unitary realization with this many extra dimensions.
        #[arg(long)]
        rotate: Option<usize>,
    },
}

fn positive(text: &str) -> Result<f64, String> {
    match text.parse::<f64>() {
        Ok(x) if x > 0.0 && x.is_finite() => Ok(x),
        Ok(_) => Err("must be positive and finite".into()),
        Err(e) => Err(e.to_string()),
    }
}

fn execute(cli: &Cli) -> Result<Report, CliError> {
    match &cli.command {
        Command::Helstrom { a, b } => commands::helstrom(a, b),
        Command::Classical { states } => commands::classical(states, cli.tol),
        Command::Chernoff { a, b, grid } => commands::chernoff(a, b, *grid),
        Command::Params { states, params } => commands::params(states, params.as_deref()),
        Command::Reduce { params, n } => commands::reduce(params, n),
        Command::Exponent { params, n } => commands::exponent(params, n, cli.jobs as usize),
        Command::Verify { params, n, oracle } => commands::verify(params, n, *oracle),
        Command::Oracle { params, n, rotate } => {
            commands::oracle(params, n, *rotate, cli.seed, cli.tol)
        }
    }
}

/// Runs the tool on `args` (including the program name).
pub fn run<I, T>(args: I) -> ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_INPUT } else { EXIT_OK });
        }
    };
    let report = match execute(&cli) {
        Ok(report) => report,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_INPUT);
        }
    };
    let text = report.output.render(cli.format);
    let written = match &cli.out {
        Some(path) => std::fs::write(path, &text).map_err(|source| CliError::Io {
            path: path.clone(),
            source,
        }),
        None => std::io::stdout()
            .write_all(text.as_bytes())
            .map_err(|source| CliError::Io {
                path: "<stdout>".into(),
                source,
            }),
    };
    if let Err(e) = written {
        eprintln!("error: {e}");
        return ExitCode::from(EXIT_INPUT);
    }
    for line in &report.summary {
        eprintln!("{line}");
    }
    if report.passed {
        ExitCode::from(EXIT_OK)
    } else {
        eprintln!("verification failed");
        ExitCode::from(EXIT_VERIFICATION)
    }
}
