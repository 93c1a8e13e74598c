//! File formats, reports and the property suite behind the `centroaffine`
//! command-line tool.

pub mod check;
pub mod commands;
mod error;
pub mod output;
pub mod schema;

pub use error::{CliError, CliResult, EXIT_CHECK_FAILED, EXIT_IO, EXIT_MATH, EXIT_NOT_CONVEX, EXIT_SCHEMA, EXIT_USAGE, EXIT_WARNING};
