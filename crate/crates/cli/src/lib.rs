//! Command-line front end for the `kprabhakar` crate: argument parsing,
//! configuration and CSV formats, and deterministic JSON output.

pub mod args;
pub mod commands;
pub mod config;
pub mod error;
pub mod io;
pub mod json;

use args::{Cli, Command};
use commands::Outcome;
use error::CliError;

pub fn run(cli: &Cli) -> Result<Outcome, CliError> {
    match &cli.command {
        Command::Ml(a) => commands::ml(a),
        Command::Kernel(a) => commands::kernel(a),
        Command::Integral(a) => commands::integral(a),
        Command::Derivative(a) => commands::derivative(a),
        Command::Green(a) => commands::green(a),
        Command::Hw(a) => commands::hw(a),
        Command::Critical(a) => commands::critical(a),
        Command::ReduceCheck => commands::reduce_check(),
    }
}
