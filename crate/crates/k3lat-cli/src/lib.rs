//! Command-line front end for the lattice and K3 moduli toolkit: parses
//! lattice/model JSON, dispatches to the library, and emits aligned text or
//! machine JSON. Identical inputs produce byte-identical output.
//!
//! Exit codes: 0 on success, 1 on domain errors (with a structured
//! `error[domain]` line), 2 on parse or usage errors (`error[parse]`).

use std::fmt;
use std::io::Write;

pub mod commands;
pub mod report;
pub mod schema;

/// Errors surfaced to the user, split by exit code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CliError {
    /// Malformed input: bad JSON, schema violation, unreadable file.
    Parse(String),
    /// Well-formed input rejected by the mathematics.
    Domain(String),
}

impl From<k3lat::Error> for CliError {
    fn from(e: k3lat::Error) -> Self {
        CliError::Domain(e.to_string())
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Parse(m) => write!(f, "error[parse]: {m}"),
            CliError::Domain(m) => write!(f, "error[domain]: {m}"),
        }
    }
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse(_) => 2,
            CliError::Domain(_) => 1,
        }
    }
}

/// Runs the CLI on explicit arguments, writing all output to `out`.
/// Returns the process exit code.
pub fn run<I, S>(args: I, out: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    use clap::Parser;
    let cli = match commands::Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    0
                }
                _ => {
                    let _ = writeln!(out, "error[parse]: {e}");
                    2
                }
            };
        }
    };
    match commands::dispatch(cli) {
        Ok(text) => {
            let _ = write!(out, "{text}");
            0
        }
        Err(e) => {
            let _ = writeln!(out, "{e}");
            e.exit_code()
        }
    }
}
