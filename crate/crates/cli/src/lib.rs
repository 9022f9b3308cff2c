//! Command-line harness: single runs, parameter sweeps, property suites and
//! the finite-volume comparison.
//!
//! Exit codes: 0 success, 1 configuration error, 2 divergence, 3 failing
//! property suite.

use std::ffi::OsString;

use clap::error::ErrorKind;
use clap::Parser;

pub mod args;
pub mod compare;
pub mod error;
pub mod params;
pub mod run;
pub mod sweep;
pub mod verify;

use args::{Cli, Command};
use error::{CliError, EXIT_CONFIG, EXIT_OK};

/// Parses `argv` (including the program name), runs the command and
/// returns the process exit code.
pub fn main_with<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_CONFIG,
            };
        }
    };
    match dispatch(&cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_CONFIG
        }
    }
}

pub fn dispatch(command: &Command) -> Result<i32, CliError> {
    match command {
        Command::Run(a) => run::execute(a),
        Command::Sweep(a) => sweep::execute(a),
        Command::Verify(a) => verify::execute(a),
        Command::Compare(a) => compare::execute(a),
    }
}
