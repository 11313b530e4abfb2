use serde::{Deserialize, Serialize};

use super::{Action, ForwardModel, GameConfig, GameState, Outcome};
use crate::agents::Policy;
use crate::level_gen::Level;
use crate::seed;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EpisodeResult {
    /// `Win` or `Loss`; a timeout is a loss.
    pub outcome: Outcome,
    pub final_score: i64,
    pub ticks: u32,
    pub forward_calls_used: u64,
    pub max_calls_per_decision: u64,
}

/// Plays one full episode of `agent` on `level`.
///
/// The environment and the agent draw from two independent streams derived
/// from `seed`, so the result is a pure function of the inputs (in
/// call-count budget mode).
pub fn run_episode(level: &Level, agent: &dyn Policy, seed: u64, config: &GameConfig) -> EpisodeResult {
    run(level, agent, seed, config, None)
}

/// Like [`run_episode`], also returning the action taken at every tick.
pub fn run_episode_traced(
    level: &Level,
    agent: &dyn Policy,
    seed: u64,
    config: &GameConfig,
) -> (EpisodeResult, Vec<Action>) {
    let mut trace = Vec::new();
    let result = run(level, agent, seed, config, Some(&mut trace));
    (result, trace)
}

fn run(
    level: &Level,
    agent: &dyn Policy,
    seed: u64,
    config: &GameConfig,
    mut trace: Option<&mut Vec<Action>>,
) -> EpisodeResult {
    let mut env_rng = seed::rng_from(seed::derive(seed, 0));
    let mut agent_rng = seed::rng_from(seed::derive(seed, 1));
    let mut state = GameState::new(level, config.max_ticks);
    let mut total_calls = 0;
    let mut max_calls = 0;

    while !state.is_terminal() {
        let mut model = ForwardModel::new(config.budget);
        let action = agent.act(&state, &mut model, &mut agent_rng);
        total_calls += model.calls();
        max_calls = max_calls.max(model.calls());
        if let Some(t) = trace.as_deref_mut() {
            t.push(action);
        }
        state
            .advance(action, &mut env_rng)
            .expect("loop only steps ongoing states");
    }

    EpisodeResult {
        outcome: state.outcome(),
        final_score: state.score(),
        ticks: state.tick(),
        forward_calls_used: total_calls,
        max_calls_per_decision: max_calls,
    }
}
