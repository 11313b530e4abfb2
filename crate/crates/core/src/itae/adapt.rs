use rand::Rng as _;
use serde::{Deserialize, Serialize};

use super::gp::{select_next, GpPosterior};
use super::{GpError, Matern52Kernel};
use crate::agents::Policy;
use crate::grid_game::GameConfig;
use crate::qd_archive::{evaluate_level, Archive, CellId, DEFAULT_ROLLOUTS};
use crate::seed;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct AdaptConfig {
    pub kernel: Matern52Kernel,
    /// Weight of the posterior standard deviation in the acquisition.
    pub beta: f64,
    pub max_iters: u32,
    /// A level is accepted once its observed performance reaches this.
    pub success_threshold: f64,
    /// Rollouts per trial evaluation.
    pub rollouts: u32,
}

impl Default for AdaptConfig {
    fn default() -> Self {
        Self {
            kernel: Matern52Kernel::default(),
            beta: 0.03,
            max_iters: 20,
            success_threshold: 0.75,
            rollouts: DEFAULT_ROLLOUTS,
        }
    }
}

/// One trial of the adaptation loop.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IterationRecord {
    /// 1-based.
    pub iteration: u32,
    pub cell_id: CellId,
    pub level: String,
    pub prior_mean: f64,
    /// Posterior at selection time, before observing this trial.
    pub posterior_mean: f64,
    pub posterior_sd: f64,
    pub acquisition: f64,
    pub wins: u32,
    pub rollouts: u32,
    pub win_rate: f64,
    pub performance: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AdaptationTrace {
    pub prior_agent: String,
    pub target_agent: String,
    pub iterations: Vec<IterationRecord>,
    /// The last trial met the success threshold.
    pub success: bool,
    pub iterations_used: u32,
}

/// Searches `prior` for a level of the right difficulty for `target`.
///
/// Each iteration picks the cell maximizing `mean + β·sd`, evaluates its
/// elite on `target` with `config.rollouts` rollouts seeded from
/// `(seed, iteration)` and stops as soon as the observed performance reaches
/// the success threshold; otherwise the observation is folded into the GP.
/// Gives up after `max_iters` trials.
pub fn adapt(
    prior: &Archive,
    target: &dyn Policy,
    config: &AdaptConfig,
    game: &GameConfig,
    seed: u64,
) -> Result<AdaptationTrace, GpError> {
    if prior.is_empty() {
        return Err(GpError::EmptyArchive);
    }
    let mut gp = GpPosterior::from_archive(prior, config.kernel)?;
    let mut iterations = Vec::new();
    let mut success = false;

    for iteration in 1..=config.max_iters {
        let pick = select_next(&gp, config.beta)?;
        let elite = prior.get(&pick.cell).expect("selection comes from the prior's cells");
        let outcome = evaluate_level(
            &elite.level,
            target,
            config.rollouts.max(1),
            seed::derive(seed, u64::from(iteration)),
            game,
        );
        iterations.push(IterationRecord {
            iteration,
            cell_id: pick.cell,
            level: elite.level.to_ascii(),
            prior_mean: gp.prior()[&pick.cell],
            posterior_mean: pick.mean,
            posterior_sd: pick.variance.sqrt(),
            acquisition: pick.acquisition,
            wins: outcome.wins,
            rollouts: outcome.rollouts,
            win_rate: outcome.win_rate,
            performance: outcome.performance,
        });
        if outcome.performance >= config.success_threshold {
            success = true;
            break;
        }
        gp.observe(pick.cell, outcome.performance)?;
    }

    Ok(AdaptationTrace {
        prior_agent: prior.agent.clone(),
        target_agent: target.name().to_string(),
        iterations_used: iterations.len() as u32,
        iterations,
        success,
    })
}

/// Same cells and levels as `archive`, with every performance replaced by
/// an independent uniform draw from [0, 1).
pub fn baseline_prior(archive: &Archive, seed: u64) -> Archive {
    let mut rng = seed::rng_from(seed);
    let mut out = archive.map_performance(|_, _| rng.random::<f64>());
    out.agent = "Baseline".to_string();
    out
}
