use std::path::Path;

use levelfit_core::{behavior_descriptor, cell_index, evaluate_level, AgentKind, BehaviorDescriptor, CellId, Level};
use serde::Serialize;

use super::build_agent;
use crate::config::ExperimentConfig;
use crate::error::CliError;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EvalReport {
    pub agent: String,
    pub wins: u32,
    pub rollouts: u32,
    pub win_rate: f64,
    pub performance: f64,
    pub seed: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LevelReport {
    pub width: usize,
    pub height: usize,
    pub descriptor: BehaviorDescriptor,
    pub cell_id: CellId,
}

fn read_level(path: &Path) -> Result<Level, CliError> {
    let src = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    let invalid = |message: String| CliError::Level {
        path: path.to_path_buf(),
        message,
    };
    let level = Level::parse(&src).map_err(|e| invalid(e.to_string()))?;
    level.validate().map_err(|e| invalid(e.to_string()))?;
    Ok(level)
}

/// Parses a level file and reports its descriptor and archive cell.
pub fn cmd_validate_level(path: &Path) -> Result<LevelReport, CliError> {
    let level = read_level(path)?;
    let descriptor = behavior_descriptor(&level).map_err(|e| CliError::Level {
        path: path.to_path_buf(),
        message: e.to_string(),
    })?;
    Ok(LevelReport {
        width: level.width(),
        height: level.height(),
        descriptor,
        cell_id: cell_index(&descriptor),
    })
}

/// Win rate and performance of `agent` on the level in `path`.
pub fn cmd_eval(
    config: &ExperimentConfig,
    path: &Path,
    agent: AgentKind,
    rollouts: u32,
    seed: u64,
) -> Result<EvalReport, CliError> {
    if rollouts == 0 {
        return Err(CliError::Usage("rollouts must be positive".into()));
    }
    let level = read_level(path)?;
    let e = evaluate_level(&level, &build_agent(config, agent), rollouts, seed, &config.game);
    Ok(EvalReport {
        agent: agent.name().to_string(),
        wins: e.wins,
        rollouts: e.rollouts,
        win_rate: e.win_rate,
        performance: e.performance,
        seed,
    })
}
