//! Command-line front end: argument grammar, dispatch and exit codes.

mod commands;
mod verify;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

pub use verify::{run_suite, Check, Suite};

/// Process exit codes.
pub mod exit {
    pub const SUCCESS: u8 = 0;
    pub const VERIFICATION_FAILED: u8 = 1;
    pub const USAGE: u8 = 2;
    pub const BUDGET_EXHAUSTED: u8 = 3;
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Failed(String),
    #[error("node budget of {max_nodes} exhausted after {found} stable subjects")]
    Budget { max_nodes: u64, found: usize },
    #[error("writing output: {0}")]
    Io(#[from] std::io::Error),
    #[error("encoding JSON: {0}")]
    Json(#[from] serde_json::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => exit::USAGE,
            CliError::Budget { .. } => exit::BUDGET_EXHAUSTED,
            CliError::Failed(_) | CliError::Io(_) | CliError::Json(_) => exit::VERIFICATION_FAILED,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "cycpat", version, about = "Stable patterns of cyclic matrices")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Product,
    Inverse,
    All,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum AtomsArg {
    All,
    Admissible,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FamilyArg {
    P1,
    P2,
    P3,
    Q1,
    Q2,
    Q3,
    Qr,
    Prime,
    PrimeSquare,
    TwoPrimes,
    Monocolor,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List every stable pattern (and signed-pattern) of Z_q.
    Enumerate {
        #[arg(long)]
        q: usize,
        /// Include signed-patterns.
        #[arg(long)]
        signed: bool,
        #[arg(long, value_enum, default_value = "all")]
        mode: ModeArg,
        #[arg(long, value_enum, default_value = "admissible")]
        atoms: AtomsArg,
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Stop after this many search nodes (exit code 3 when reached).
        #[arg(long)]
        max_nodes: Option<u64>,
    },
    /// Stability class, dual and witness of one subject, as JSON.
    Classify {
        #[arg(long)]
        q: usize,
        #[arg(long)]
        pattern: String,
    },
    /// The Fourier dual of a stable subject, as a bracket.
    Dual {
        #[arg(long)]
        q: usize,
        #[arg(long)]
        pattern: String,
    },
    /// Build the members of a closed-form family and classify them.
    Families {
        #[arg(long, value_enum)]
        family: FamilyArg,
        #[arg(long)]
        q: Option<usize>,
        #[arg(long)]
        p: Option<u64>,
        #[arg(long)]
        p1: Option<u64>,
        #[arg(long)]
        p2: Option<u64>,
    },
    /// Degree growth of K along a random line, with the fitted recurrence.
    Complexity {
        #[arg(long)]
        q: usize,
        #[arg(long)]
        pattern: String,
        #[arg(long)]
        iters: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = cycpat::birational::MAX_PRIME_BITS)]
        prime_bits: u32,
        /// Iterate J followed by the Fourier transform (self-dual subjects only).
        #[arg(long)]
        half_step: bool,
    },
    /// Run a verification suite against the shipped reference data.
    Verify {
        #[arg(long, value_enum, default_value = "all")]
        suite: Suite,
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
    },
    /// Constructed, closed-form and enumerated pattern counts for a prime q.
    Census {
        #[arg(long)]
        q: u64,
    },
}

/// Parses `args` (program name first), runs the command and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { exit::USAGE } else { exit::SUCCESS };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return code;
        }
    };
    match commands::dispatch(cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}
