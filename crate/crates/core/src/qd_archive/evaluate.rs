use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::performance_from_counts;
use crate::agents::Policy;
use crate::grid_game::{run_episode, GameConfig, Outcome};
use crate::level_gen::Level;
use crate::seed;

pub const DEFAULT_ROLLOUTS: u32 = 40;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct EvalOutcome {
    pub wins: u32,
    pub rollouts: u32,
    pub win_rate: f64,
    pub performance: f64,
}

impl EvalOutcome {
    pub fn from_counts(wins: u32, rollouts: u32) -> Self {
        Self {
            wins,
            rollouts,
            win_rate: f64::from(wins) / f64::from(rollouts),
            performance: performance_from_counts(wins, rollouts),
        }
    }
}

/// Win rate of `agent` on `level` over `n_rollouts` episodes. Rollout `k`
/// is seeded with the child seed `(seed, k)`; rollouts run in parallel.
pub fn evaluate_level(level: &Level, agent: &dyn Policy, n_rollouts: u32, seed: u64, game: &GameConfig) -> EvalOutcome {
    assert!(n_rollouts >= 1, "at least one rollout");
    let wins = (0..n_rollouts)
        .into_par_iter()
        .filter(|&k| run_episode(level, agent, seed::derive(seed, u64::from(k)), game).outcome == Outcome::Win)
        .count() as u32;
    EvalOutcome::from_counts(wins, n_rollouts)
}
