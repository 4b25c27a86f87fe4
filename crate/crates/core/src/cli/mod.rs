//! Batch front-end: read a JSON run configuration, dispatch to structure
//! checks or verification experiments, and emit CSV/JSON reports.

mod config;
mod runner;

pub use config::{Command, FieldsSource, RunConfig};
pub use runner::{run, RunOptions, RunSummary};
