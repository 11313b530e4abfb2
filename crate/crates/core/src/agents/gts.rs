use std::cmp::Ordering;
use std::collections::{BinaryHeap, HashSet};

use rand::seq::IndexedRandom;

use super::Policy;
use crate::grid_game::{state_value, Action, ForwardModel, GameState, Pos};
use crate::seed::Rng;

/// Greedy tree search: best-first expansion of the game tree ordered by
/// state value. Returns the first action leading to the best state found
/// before the budget ran out.
#[derive(Clone, Copy, Debug, Default)]
pub struct Gts;

struct Node {
    value: f64,
    seq: u64,
    first: Action,
    state: GameState,
}

impl PartialEq for Node {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Node {}

impl PartialOrd for Node {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Node {
    /// Higher value first, then FIFO.
    fn cmp(&self, other: &Self) -> Ordering {
        self.value
            .total_cmp(&other.value)
            .then_with(|| other.seq.cmp(&self.seq))
    }
}

impl Policy for Gts {
    fn name(&self) -> &str {
        "GTS"
    }

    fn act(&self, state: &GameState, model: &mut ForwardModel, rng: &mut Rng) -> Action {
        // Re-expanding a position already reached with the same key/score
        // adds nothing for a greedy search.
        let mut seen: HashSet<(Pos, bool, i64)> = HashSet::new();
        seen.insert((state.avatar(), state.has_key(), state.score()));

        let mut open = BinaryHeap::new();
        let mut seq = 0u64;
        let mut best_value = f64::NEG_INFINITY;
        let mut best: Vec<Action> = Vec::new();

        let mut frontier = Some((state.clone(), None::<Action>));
        'search: while let Some((parent, first)) = frontier.take() {
            for action in Action::ALL {
                let Some(child) = model.step(&parent, action, rng) else {
                    break 'search;
                };
                let first = first.unwrap_or(action);
                let value = state_value(&child);
                if value > best_value {
                    best_value = value;
                    best.clear();
                }
                if value == best_value {
                    best.push(first);
                }
                if !child.is_terminal() && seen.insert((child.avatar(), child.has_key(), child.score())) {
                    seq += 1;
                    open.push(Node {
                        value,
                        seq,
                        first,
                        state: child,
                    });
                }
            }
            frontier = open.pop().map(|n| (n.state, Some(n.first)));
        }

        best.choose(rng).copied().unwrap_or(Action::Nil)
    }
}
