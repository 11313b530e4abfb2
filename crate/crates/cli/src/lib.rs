//! Experiment harness around `levelfit-core`: configuration, fingerprints,
//! and the `evolve`, `matrix`, `bands`, `eval` and `validate-level`
//! commands.

pub mod commands;
pub mod config;
pub mod error;
pub mod output;

pub use config::{ExperimentConfig, MatrixConfig};
pub use error::CliError;
