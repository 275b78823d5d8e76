//! Command-line front end.
//!
//! Exit codes: 0 success, 1 usage, 2 malformed input, 3 validation or
//! resource error, 4 verification failure.

mod commands;
mod report;
mod state_file;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use crate::entanglement::Bipartitions;
pub use report::{fmt_num, round_sig, Envelope, Report, Table, SIGNIFICANT_DIGITS};
pub use state_file::{parse_state_file, ParsedState, StateFile, StateFileError, Term, NORM_WARNING};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_INVALID: i32 = 3;
pub const EXIT_VERIFY: i32 = 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    #[value(alias = "structured")]
    Json,
    Csv,
}

#[derive(Debug, Parser)]
#[command(name = "qunit", version, about = "Permutation symmetry and entanglement of N identical n-level particles")]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Cuts {
    All,
    Singles,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Dimensions f and d of every symmetry sector, and their total.
    Decompose {
        #[arg(long = "N")]
        particles: usize,
        #[arg(long = "n")]
        levels: usize,
    },
    /// Conjugacy classes of the symmetric group.
    Classes {
        #[arg(long = "N")]
        particles: usize,
    },
    /// Symmetry-adapted orthonormal basis.
    Basis {
        #[arg(long = "N")]
        particles: usize,
        #[arg(long = "n")]
        levels: usize,
        /// Qubit |j, m; d> basis from sequential spin coupling.
        #[arg(long)]
        coupled: bool,
    },
    /// Basis of conjugate-pair combinations for N qubits.
    Mes {
        #[arg(long = "N")]
        particles: usize,
    },
    /// Entropies, concurrences, sector weights and product blocks of a state file.
    Measure {
        #[arg(long)]
        state: PathBuf,
        #[arg(long, value_enum, default_value_t = Cuts::Singles)]
        bipartitions: Cuts,
    },
    /// Single-particle entropy along the symmetric Dicke ladder.
    DickeProfile {
        #[arg(long = "N")]
        particles: usize,
    },
    /// Structural identities and the three-qubit claims.
    Verify {
        /// Fail (exit 4) when any claim is not reproduced.
        #[arg(long)]
        strict: bool,
    },
}

struct Failure {
    code: i32,
    message: String,
}

impl From<crate::Error> for Failure {
    fn from(e: crate::Error) -> Self {
        Failure { code: EXIT_INVALID, message: e.to_string() }
    }
}

/// Parse `args` (program name first), run, and return the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    match execute(&cli) {
        Ok(code) => code,
        Err(f) => {
            eprintln!("error: {}", f.message);
            f.code
        }
    }
}

fn execute(cli: &Cli) -> Result<i32, Failure> {
    let mut code = EXIT_OK;
    let report = match &cli.command {
        Command::Decompose { particles, levels } => commands::decompose(*particles, *levels)?,
        Command::Classes { particles } => commands::classes(*particles)?,
        Command::Basis { particles, levels, coupled } => commands::basis(*particles, *levels, *coupled)?,
        Command::Mes { particles } => commands::mes(*particles)?,
        Command::DickeProfile { particles } => commands::dicke_profile(*particles)?,
        Command::Measure { state, bipartitions } => {
            let text = std::fs::read_to_string(state).map_err(|e| Failure {
                code: EXIT_INVALID,
                message: format!("cannot read {}: {e}", state.display()),
            })?;
            let parsed = parse_state_file(&text).map_err(|e| Failure {
                code: match e {
                    StateFileError::Syntax(_) => EXIT_PARSE,
                    StateFileError::Invalid(_) => EXIT_INVALID,
                },
                message: e.to_string(),
            })?;
            if let Some(w) = &parsed.warning {
                eprintln!("warning: {w}");
            }
            let cuts = match bipartitions {
                Cuts::All => Bipartitions::All,
                Cuts::Singles => Bipartitions::Singles,
            };
            commands::measure(&state.display().to_string(), &parsed, cuts)?
        }
        Command::Verify { strict } => {
            let (report, failed) = commands::verify(*strict);
            if failed {
                code = EXIT_VERIFY;
            }
            report
        }
    };
    let rendered = match cli.format {
        Format::Text => report.text(),
        Format::Json => report.json(),
        Format::Csv => report.csv(),
    };
    let written = match &cli.output {
        Some(path) => std::fs::write(path, rendered.as_bytes()),
        None => std::io::stdout().lock().write_all(rendered.as_bytes()),
    };
    written.map_err(|e| Failure { code: EXIT_INVALID, message: format!("cannot write report: {e}") })?;
    Ok(code)
}
