//! Command-line front end and JSON game service for `floodlab-core`.
//!
//! Every subcommand writes one JSON document to stdout and a one-line
//! summary to stderr. Exit codes: 0 success, 1 negative answer, 2 input
//! error, 3 budget exhausted.

pub mod cli;
pub mod input;
pub mod server;

pub use cli::{run, Cli, Command, Outcome};
pub use input::CliError;

pub const EXIT_OK: u8 = 0;
pub const EXIT_NEGATIVE: u8 = 1;
pub const EXIT_INPUT: u8 = 2;
pub const EXIT_BUDGET: u8 = 3;
