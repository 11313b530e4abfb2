use serde::{Deserialize, Serialize};

use super::{random_action, Policy};
use crate::grid_game::{state_value, Action, ForwardModel, GameState};
use crate::seed::Rng;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RsParams {
    /// Playtraces per decision, fewer if the budget runs out first.
    pub traces: usize,
    pub depth: usize,
}

impl Default for RsParams {
    fn default() -> Self {
        Self { traces: 50, depth: 10 }
    }
}

/// Random search: sample random playtraces and follow the first step of
/// the best one.
#[derive(Clone, Debug, Default)]
pub struct RandomSearch(pub RsParams);

impl Policy for RandomSearch {
    fn name(&self) -> &str {
        "RS"
    }

    fn act(&self, state: &GameState, model: &mut ForwardModel, rng: &mut Rng) -> Action {
        let mut best_value = f64::NEG_INFINITY;
        let mut best_action = None;
        for _ in 0..self.0.traces {
            let first = random_action(rng);
            let mut sim = state.clone();
            if !model.advance(&mut sim, first, rng) {
                break;
            }
            for _ in 1..self.0.depth {
                if sim.is_terminal() || !model.advance(&mut sim, random_action(rng), rng) {
                    break;
                }
            }
            let v = state_value(&sim);
            if v > best_value {
                best_value = v;
                best_action = Some(first);
            }
        }
        best_action.unwrap_or_else(|| random_action(rng))
    }
}
