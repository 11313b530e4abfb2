use rand::Rng as _;
use serde::{Deserialize, Serialize};

use super::archive::{Archive, Elite};
use super::cells::{cell_index, CellId};
use super::evaluate::{evaluate_level, DEFAULT_ROLLOUTS};
use crate::agents::Policy;
use crate::grid_game::GameConfig;
use crate::level_gen::{behavior_descriptor, random_solution, random_variation, BehaviorDescriptor, Level};
use crate::seed;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct MapElitesConfig {
    pub n_generations: u32,
    /// Random levels evaluated before mutation starts.
    pub n_init: u32,
    pub iters_per_gen: u32,
    /// Rollouts per candidate evaluation.
    pub rollouts: u32,
}

impl Default for MapElitesConfig {
    fn default() -> Self {
        Self {
            n_generations: 10,
            n_init: 100,
            iters_per_gen: 50,
            rollouts: DEFAULT_ROLLOUTS,
        }
    }
}

impl MapElitesConfig {
    pub fn total_candidates(&self) -> u64 {
        u64::from(self.n_init) + u64::from(self.n_generations) * u64::from(self.iters_per_gen)
    }
}

/// One evaluated candidate, in processing order.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CandidateRecord {
    pub index: u64,
    /// 0 for the random initial batch, then 1..=n_generations.
    pub generation: u32,
    /// Cell of the elite that was mutated, if any.
    pub parent: Option<CellId>,
    pub level: Level,
    pub descriptor: BehaviorDescriptor,
    pub cell: CellId,
    pub wins: u32,
    pub win_rate: f64,
    pub performance: f64,
    pub inserted: bool,
}

#[derive(Clone, Debug)]
pub struct MapElitesRun {
    pub archive: Archive,
    pub log: Vec<CandidateRecord>,
}

const GENERATOR_STREAM: u64 = 0x6765_6e65_7261_7465;
const EVAL_STREAM: u64 = 0x6576_616c_7561_7465;

/// Runs MAP-Elites for `agent`.
///
/// The first `n_init` candidates come from `random_solution`; after that each
/// candidate mutates an elite drawn uniformly from the archive. A candidate
/// replaces the elite of its cell only when the cell is empty or its
/// performance is strictly higher. Candidate `j` is evaluated with rollout
/// seeds derived from `(seed, j, k)`.
pub fn map_elites(agent: &dyn Policy, config: &MapElitesConfig, game: &GameConfig, seed: u64) -> MapElitesRun {
    let mut rng = seed::rng_from(seed::derive(seed, GENERATOR_STREAM));
    let eval_root = seed::derive(seed, EVAL_STREAM);
    let mut archive = Archive::new(agent.name());
    let mut log = Vec::with_capacity(config.total_candidates() as usize);
    let total = config.total_candidates();

    for index in 0..total {
        let (generation, parent, level) = if index < u64::from(config.n_init) || archive.is_empty() {
            (0, None, random_solution(&mut rng))
        } else {
            let after_init = index - u64::from(config.n_init);
            let generation = (after_init / u64::from(config.iters_per_gen.max(1))) as u32 + 1;
            let pick = rng.random_range(0..archive.len());
            let (cell, elite) = archive.iter().nth(pick).expect("pick < len");
            (generation, Some(*cell), random_variation(&elite.level, &mut rng))
        };

        let descriptor = behavior_descriptor(&level).expect("generated levels are solvable");
        let outcome = evaluate_level(
            &level,
            agent,
            config.rollouts.max(1),
            seed::derive(eval_root, index),
            game,
        );
        let inserted = archive.try_insert(Elite {
            level: level.clone(),
            descriptor,
            win_rate: outcome.win_rate,
            performance: outcome.performance,
            eval_count: outcome.rollouts,
        });
        log.push(CandidateRecord {
            index,
            generation,
            parent,
            level,
            descriptor,
            cell: cell_index(&descriptor),
            wins: outcome.wins,
            win_rate: outcome.win_rate,
            performance: outcome.performance,
            inserted,
        });
    }

    MapElitesRun { archive, log }
}
