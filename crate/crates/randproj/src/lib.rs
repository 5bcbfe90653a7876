//! Experiments, file formats and the command-line front end for
//! `randproj-core`.

pub mod cli;
pub mod commands;
pub mod config;
pub mod error;
pub mod exec;
pub mod io;

pub use config::{Command, OutputFormat, RunConfig};
pub use error::CliError;
pub use exec::RayonExecutor;

/// Version string embedded in every output file.
pub const VERSION: &str = concat!("randproj ", env!("CARGO_PKG_VERSION"));
