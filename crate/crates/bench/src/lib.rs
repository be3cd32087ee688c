//! Benchmark harness for the braid compiler: compile gates, sweep parameters,
//! compare search methods and re-verify braid words.

pub mod artifact;
pub mod cli;
pub mod commands;
pub mod config;
pub mod error;
pub mod reference;

use cli::{Cli, Command};
pub use error::BenchError;

pub fn run(cli: &Cli) -> Result<(), BenchError> {
    match &cli.command {
        Command::Compile(a) => commands::cmd_compile(a),
        Command::Sweep(a) => commands::cmd_sweep(a),
        Command::Compare(a) => commands::cmd_compare(a),
        Command::Verify(a) => commands::cmd_verify(a),
        Command::Cache(c) => commands::cmd_cache(c),
    }
}
