use super::{random_action, Policy};
use crate::grid_game::{Action, ForwardModel, GameState};
use crate::seed::Rng;

/// Stands still.
#[derive(Clone, Copy, Debug, Default)]
pub struct DoNothing;

impl Policy for DoNothing {
    fn name(&self) -> &str {
        "DoNothing"
    }

    fn act(&self, _: &GameState, _: &mut ForwardModel, _: &mut Rng) -> Action {
        Action::Nil
    }
}

/// Uniformly random action every tick, no planning.
#[derive(Clone, Copy, Debug, Default)]
pub struct RandomAgent;

impl Policy for RandomAgent {
    fn name(&self) -> &str {
        "Random"
    }

    fn act(&self, _: &GameState, _: &mut ForwardModel, rng: &mut Rng) -> Action {
        random_action(rng)
    }
}
