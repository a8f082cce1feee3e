//! Command-line driver for quaternionic Szegedy walks: instance files,
//! reports and the subcommands behind the `qwalk` binary.

pub mod app;
pub mod bundled;
pub mod commands;
pub mod error;
pub mod examples;
pub mod graph_spec;
pub mod instance;
pub mod render;
pub mod report;

pub use error::{CliError, CliResult};
pub use report::Report;
