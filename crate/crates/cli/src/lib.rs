//! Command-line front end and file formats for `jumpstat-core`.

pub mod app;
pub mod format;

pub use app::{run, Cli, CliError};
