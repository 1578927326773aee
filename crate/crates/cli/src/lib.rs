//! Library surface of the `qkdsim` command-line front-end: configuration
//! parsing, command registry and deterministic output rendering. The binary
//! in `main.rs` is a thin wrapper; integration tests drive both.

pub mod commands;
pub mod config;
pub mod error;
pub mod output;

pub use commands::{CliCommand, CommandRegistry};
pub use config::{CommandParams, RunConfig, help_text, parse_config};
pub use error::{CliError, CliResult};
