use rand::seq::IndexedRandom;
use serde::{Deserialize, Serialize};

use super::{random_action, Bounds, Policy};
use crate::grid_game::{state_value, Action, ForwardModel, GameState};
use crate::seed::Rng;

const N_ACTIONS: usize = Action::ALL.len();

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct MctsParams {
    /// UCT exploration constant.
    pub exploration: f64,
    /// Maximum depth below the root reached by tree policy plus rollout.
    pub rollout_depth: usize,
}

impl Default for MctsParams {
    fn default() -> Self {
        Self {
            exploration: std::f64::consts::SQRT_2,
            rollout_depth: 10,
        }
    }
}

#[derive(Clone, Default)]
struct Node {
    children: [Option<usize>; N_ACTIONS],
    visits: u32,
    total: f64,
}

impl Node {
    fn mean(&self) -> f64 {
        self.total / f64::from(self.visits.max(1))
    }
}

/// Open-loop UCT. Every iteration replays the action path from the root,
/// so enemy randomness is re-sampled each time. Values are min-max
/// normalized over the decision before entering the UCT formula.
#[derive(Clone, Debug, Default)]
pub struct Mcts(pub MctsParams);

impl Mcts {
    fn uct_child(&self, nodes: &[Node], node: usize, bounds: &Bounds, rng: &mut Rng) -> usize {
        let parent = &nodes[node];
        let ln_n = f64::from(parent.visits.max(1)).ln();
        let mut best = f64::NEG_INFINITY;
        let mut ties: Vec<usize> = Vec::new();
        for (a, child) in parent.children.iter().enumerate() {
            let c = &nodes[child.expect("fully expanded")];
            let score = bounds.normalize(c.mean()) + self.0.exploration * (ln_n / f64::from(c.visits.max(1))).sqrt();
            if score > best {
                best = score;
                ties.clear();
            }
            if score == best {
                ties.push(a);
            }
        }
        *ties.choose(rng).expect("six children")
    }
}

impl Policy for Mcts {
    fn name(&self) -> &str {
        "MCTS"
    }

    fn act(&self, state: &GameState, model: &mut ForwardModel, rng: &mut Rng) -> Action {
        let mut nodes = vec![Node::default()];
        let mut bounds = Bounds::new();
        let max_depth = self.0.rollout_depth.max(1);
        let mut path = Vec::with_capacity(max_depth + 1);

        while !model.exhausted() {
            let mut sim = state.clone();
            let mut node = 0;
            let mut depth = 0;
            let mut stepped = false;
            path.clear();
            path.push(0);

            // Selection and expansion.
            while !sim.is_terminal() && depth < max_depth {
                let untried: Vec<usize> = (0..N_ACTIONS).filter(|&a| nodes[node].children[a].is_none()).collect();
                let (a, expand) = match untried.choose(rng) {
                    Some(&a) => (a, true),
                    None => (self.uct_child(&nodes, node, &bounds, rng), false),
                };
                if !model.advance(&mut sim, Action::ALL[a], rng) {
                    break;
                }
                stepped = true;
                depth += 1;
                let child = match nodes[node].children[a] {
                    Some(c) => c,
                    None => {
                        nodes.push(Node::default());
                        let c = nodes.len() - 1;
                        nodes[node].children[a] = Some(c);
                        c
                    }
                };
                node = child;
                path.push(node);
                if expand {
                    break;
                }
            }
            if !stepped {
                break;
            }

            // Rollout.
            while !sim.is_terminal() && depth < max_depth {
                if !model.advance(&mut sim, random_action(rng), rng) {
                    break;
                }
                depth += 1;
            }

            let value = state_value(&sim);
            bounds.observe(value);
            for &n in &path {
                nodes[n].visits += 1;
                nodes[n].total += value;
            }
        }

        let root = &nodes[0];
        root.children
            .iter()
            .enumerate()
            .filter_map(|(a, c)| c.map(|c| (a, &nodes[c])))
            .max_by(|(_, x), (_, y)| x.visits.cmp(&y.visits).then(x.mean().total_cmp(&y.mean())))
            .map(|(a, _)| Action::ALL[a])
            .unwrap_or_else(|| random_action(rng))
    }
}
