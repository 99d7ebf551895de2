//! Command-line front end for the `mmse-codes` library: parse problem
//! instances, run the library operations, and emit curves, tables, and
//! verification reports as CSV or JSON.
//!
//! The parsing layer ([`parse`], [`config_file`], [`design_io`]) is exposed
//! so the fuzz targets can drive every decoder of untrusted input directly.

pub mod args;
pub mod commands;
pub mod config_file;
pub mod design_io;
pub mod output;
pub mod parse;

use std::ffi::OsString;
use std::io::Write;

/// Errors carry their process exit code: 2 usage, 3 infeasible or
/// out-of-validity, 4 verification failure, 1 anything environmental.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Infeasible(String),
    Verification(String),
    Io(std::io::Error),
}

impl CliError {
    pub fn usage(msg: impl Into<String>) -> Self {
        CliError::Usage(msg.into())
    }

    pub fn infeasible(msg: impl Into<String>) -> Self {
        CliError::Infeasible(msg.into())
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Infeasible(_) => 3,
            CliError::Verification(_) => 4,
            CliError::Io(_) => 1,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "{m}"),
            CliError::Infeasible(m) => write!(f, "{m}"),
            CliError::Verification(m) => write!(f, "{m}"),
            CliError::Io(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<mmse_codes::Error> for CliError {
    fn from(e: mmse_codes::Error) -> Self {
        match e {
            mmse_codes::Error::InvalidParameter(m) => CliError::Usage(m),
            mmse_codes::Error::Infeasible(m) => CliError::Infeasible(m),
            mmse_codes::Error::BudgetExceeded(m) => CliError::Infeasible(m),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

/// Parse `argv` and run the selected subcommand, writing its report to
/// `stdout` (or to the `--out` file when given).
pub fn run_from<I, T>(argv: I, stdout: &mut dyn Write) -> Result<(), CliError>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    use clap::Parser;
    let cli = args::Cli::try_parse_from(argv).map_err(|e| CliError::Usage(e.to_string()))?;
    commands::dispatch(cli, stdout)
}
