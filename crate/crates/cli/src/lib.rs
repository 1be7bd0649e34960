//! Library side of the `riley` command-line tool: raster scans, figure output
//! and JSON records, all pure functions over the `riley` crate.

pub mod commands;
mod error;
pub mod scan;
pub mod svg;

pub use error::{CliError, CliResult};
