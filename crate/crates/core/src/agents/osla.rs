use rand::seq::IndexedRandom;

use super::Policy;
use crate::grid_game::{state_value, Action, ForwardModel, GameState, Outcome};
use crate::seed::Rng;

/// Extra reward for a successor in which an enemy died.
const KILL_BONUS: f64 = 10.0;
/// Per-step pull towards the next score source; small enough that it only
/// separates otherwise equal successors.
const DISTANCE_WEIGHT: f64 = 0.01;

/// One-step look-ahead: simulate each action once, play the best.
///
/// Successors are scored by score gained, a kill bonus, and the Manhattan
/// distance to the key (or the goal once the key is held). Only the six
/// successors are simulated, so walls and enemies further than one step away
/// never influence the choice; equally good actions are picked uniformly.
#[derive(Clone, Copy, Debug, Default)]
pub struct Osla;

pub(crate) fn osla_value(before: &GameState, after: &GameState) -> f64 {
    if after.outcome() != Outcome::Ongoing {
        return state_value(after);
    }
    let gained = (after.score() - before.score()) as f64;
    let killed = after.enemies().len() < before.enemies().len();
    let target = if after.has_key() {
        after.goal_pos()
    } else {
        after.key_pos()
    };
    let distance = target.map_or(0, |t| t.manhattan(after.avatar())) as f64;
    gained + if killed { KILL_BONUS } else { 0.0 } - DISTANCE_WEIGHT * distance
}

impl Policy for Osla {
    fn name(&self) -> &str {
        "OSLA"
    }

    fn act(&self, state: &GameState, model: &mut ForwardModel, rng: &mut Rng) -> Action {
        let mut best = f64::NEG_INFINITY;
        let mut ties: Vec<Action> = Vec::with_capacity(Action::ALL.len());
        for action in Action::ALL {
            let Some(next) = model.step(state, action, rng) else {
                break;
            };
            let v = osla_value(state, &next);
            if v > best {
                best = v;
                ties.clear();
                ties.push(action);
            } else if v == best {
                ties.push(action);
            }
        }
        ties.choose(rng).copied().unwrap_or(Action::Nil)
    }
}
