//! Command-line front end: JSON inputs, subcommands and verification suites.

pub mod commands;
pub mod error;
pub mod input;
pub mod random;
pub mod suites;

pub use commands::{run, Cli, Outcome};
pub use error::CliError;
