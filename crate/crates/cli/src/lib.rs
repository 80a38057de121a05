//! Command-line front end for `deprit-core`: model files, reports and the
//! benchmark harness.

pub mod config;
pub mod error;
pub mod model_file;
pub mod report;

pub use config::{Cli, Command, Format, Frame, Output, RunArgs, RunConfig};
pub use error::{CliError, Result};
pub use report::{run, Report};
