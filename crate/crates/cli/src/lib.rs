//! Command-line front end for `leibniz-core`.

pub mod commands;
pub mod error;
pub mod files;
pub mod render;
pub mod suites;

pub use commands::{run, Outcome};
pub use error::CliError;
