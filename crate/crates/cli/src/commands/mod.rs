//! One function per subcommand. Each takes the resolved configuration and
//! an output directory and returns what it wrote, so the binary and the
//! tests drive exactly the same code.

mod bands;
mod eval;
mod evolve;
mod matrix;

use std::path::{Path, PathBuf};

use levelfit_core::{Agent, AgentKind, Archive};

use crate::config::ExperimentConfig;
use crate::error::CliError;

pub use bands::{band_rows, cmd_bands, BandRow, BANDS_HEADER};
pub use eval::{cmd_eval, cmd_validate_level, EvalReport, LevelReport};
pub use evolve::{cmd_evolve, EvolveOutput, HEATMAP_AXES};
pub use matrix::{cmd_matrix, MatrixCell, MatrixOutput, MatrixRequest, BASELINE, ITERATIONS_HEADER, MATRIX_HEADER};

pub fn parse_agent(name: &str) -> Result<AgentKind, CliError> {
    name.parse().map_err(|_| CliError::UnknownAgent(name.to_string()))
}

pub fn build_agent(config: &ExperimentConfig, kind: AgentKind) -> Agent {
    Agent::with_params(kind, config.agent_params.clone())
}

/// Where `evolve` stores the archive of `agent`.
pub fn archive_path(dir: &Path, agent: &str) -> PathBuf {
    dir.join(format!("archive_{agent}.json"))
}

pub fn load_archive(path: &Path) -> Result<Archive, CliError> {
    let src = match std::fs::read_to_string(path) {
        Ok(s) => s,
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Err(CliError::MissingArchive(path.to_path_buf())),
        Err(e) => return Err(CliError::io(path, e)),
    };
    Archive::from_json(&src).map_err(|source| CliError::Archive {
        path: path.to_path_buf(),
        source,
    })
}
