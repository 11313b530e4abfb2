use rand::seq::IndexedRandom;
use serde::{Deserialize, Serialize};

use super::{random_action, Bounds, Policy};
use crate::grid_game::{state_value, Action, ForwardModel, GameState};
use crate::seed::Rng;

const N_ACTIONS: usize = Action::ALL.len();

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct OletsParams {
    pub exploration: f64,
    /// Weight of the best child's score in a node's score; the rest is the
    /// node's own empirical mean.
    pub max_child_weight: f64,
    /// Maximum tree depth below the root.
    pub max_depth: usize,
}

impl Default for OletsParams {
    fn default() -> Self {
        Self {
            exploration: std::f64::consts::SQRT_2,
            max_child_weight: 0.5,
            max_depth: 20,
        }
    }
}

#[derive(Clone, Default)]
struct Node {
    children: [Option<usize>; N_ACTIONS],
    visits: u32,
    total: f64,
    /// Open-loop expectimax score.
    score: f64,
}

/// Open loop expectimax tree search. A simulation walks down the tree,
/// adds one node and is scored by the value of the state where it stopped;
/// no random rollout follows. Each node's score blends its average value
/// with the best score among its children.
#[derive(Clone, Debug, Default)]
pub struct Olets(pub OletsParams);

impl Olets {
    fn rescore(&self, nodes: &mut [Node], n: usize) {
        let mean = nodes[n].total / f64::from(nodes[n].visits.max(1));
        let best_child = nodes[n]
            .children
            .iter()
            .flatten()
            .map(|&c| nodes[c].score)
            .max_by(f64::total_cmp);
        nodes[n].score = match best_child {
            Some(m) => {
                let w = self.0.max_child_weight.clamp(0.0, 1.0);
                (1.0 - w) * mean + w * m
            }
            None => mean,
        };
    }

    fn select(&self, nodes: &[Node], node: usize, bounds: &Bounds, rng: &mut Rng) -> usize {
        let ln_n = f64::from(nodes[node].visits.max(1)).ln();
        let mut best = f64::NEG_INFINITY;
        let mut ties = Vec::new();
        for (a, child) in nodes[node].children.iter().enumerate() {
            let c = &nodes[child.expect("fully expanded")];
            let v = bounds.normalize(c.score) + self.0.exploration * (ln_n / f64::from(c.visits.max(1))).sqrt();
            if v > best {
                best = v;
                ties.clear();
            }
            if v == best {
                ties.push(a);
            }
        }
        *ties.choose(rng).expect("six children")
    }
}

impl Policy for Olets {
    fn name(&self) -> &str {
        "OLETS"
    }

    fn act(&self, state: &GameState, model: &mut ForwardModel, rng: &mut Rng) -> Action {
        let mut nodes = vec![Node::default()];
        let mut bounds = Bounds::new();
        let max_depth = self.0.max_depth.max(1);
        let mut path = Vec::with_capacity(max_depth + 1);

        while !model.exhausted() {
            let mut sim = state.clone();
            let mut node = 0;
            path.clear();
            path.push(0);

            while !sim.is_terminal() && path.len() <= max_depth {
                let untried: Vec<usize> = (0..N_ACTIONS).filter(|&a| nodes[node].children[a].is_none()).collect();
                let (a, expand) = match untried.choose(rng) {
                    Some(&a) => (a, true),
                    None => (self.select(&nodes, node, &bounds, rng), false),
                };
                if !model.advance(&mut sim, Action::ALL[a], rng) {
                    break;
                }
                node = match nodes[node].children[a] {
                    Some(c) => c,
                    None => {
                        nodes.push(Node::default());
                        let c = nodes.len() - 1;
                        nodes[node].children[a] = Some(c);
                        c
                    }
                };
                path.push(node);
                if expand {
                    break;
                }
            }
            if path.len() == 1 {
                break;
            }

            let value = state_value(&sim);
            bounds.observe(value);
            for &n in &path {
                nodes[n].visits += 1;
                nodes[n].total += value;
            }
            for &n in path.iter().rev() {
                self.rescore(&mut nodes, n);
            }
        }

        nodes[0]
            .children
            .iter()
            .enumerate()
            .filter_map(|(a, c)| c.map(|c| (a, &nodes[c])))
            .max_by(|(_, x), (_, y)| x.visits.cmp(&y.visits).then(x.score.total_cmp(&y.score)))
            .map(|(a, _)| Action::ALL[a])
            .unwrap_or_else(|| random_action(rng))
    }
}
