//! Command-line front end for `cubicfields`.
//!
//! [`run`] parses an argument vector, executes one subcommand and returns the
//! process exit code: 0 on success, 1 when a requested check fails, 2 on a
//! usage error, 3 when evaluation fails.

pub mod args;
pub mod bfile;
mod commands;
pub mod oeis;
pub mod output;

use std::ffi::OsString;
use std::io::Write;

use clap::error::ErrorKind;
use clap::Parser;

pub use bfile::{BFile, BFileFormatError, SequenceId};
pub use oeis::{fetch_bfile, FetchError};
pub use output::Document;

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_EVALUATION: i32 = 3;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Eval(#[from] cubicfields::Error),
    #[error(transparent)]
    Fetch(#[from] FetchError),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Eval(cubicfields::Error::Parse(_)) => EXIT_USAGE,
            CliError::Eval(_) | CliError::Fetch(_) => EXIT_EVALUATION,
        }
    }
}

/// Runs one invocation; `argv[0]` is the program name.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match args::Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = out.write_all(rendered.as_bytes());
                    EXIT_OK
                }
                _ => {
                    let _ = err.write_all(rendered.as_bytes());
                    EXIT_USAGE
                }
            };
        }
    };
    match commands::dispatch(cli.command, cli.digits) {
        Ok(outcome) => {
            let body = if cli.json { outcome.doc.to_json() } else { outcome.text };
            if out.write_all(body.as_bytes()).is_err() {
                return EXIT_EVALUATION;
            }
            if outcome.passed {
                EXIT_OK
            } else {
                EXIT_CHECK_FAILED
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

/// Runs with string arguments and captures both streams.
pub fn run_captured(argv: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = run(argv.iter().copied(), &mut out, &mut err);
    (code, String::from_utf8_lossy(&out).into_owned(), String::from_utf8_lossy(&err).into_owned())
}
