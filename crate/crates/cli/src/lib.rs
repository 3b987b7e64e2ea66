//! File formats, command dispatch and report rendering for the `hmcoh` tool.

pub mod commands;
pub mod format;
pub mod report;

pub use commands::{run, Cli, CliError, Command, Options, OutputFormat, Outcome, Status};
