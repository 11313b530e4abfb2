//! Shared fixtures for the benchmarks.

use levelfit_core::level_gen::random_solution;
use levelfit_core::seed::rng_from;
use levelfit_core::{baseline_prior, behavior_descriptor, Archive, Elite, GameState, Level};

/// `n` random levels, reproducible from `seed`.
pub fn levels(n: usize, seed: u64) -> Vec<Level> {
    let mut rng = rng_from(seed);
    (0..n).map(|_| random_solution(&mut rng)).collect()
}

/// The largest of `n` random levels, for per-step costs.
pub fn big_level(seed: u64) -> Level {
    levels(64, seed)
        .into_iter()
        .max_by_key(|l| (l.width() * l.height(), l.enemy_count()))
        .expect("non-empty")
}

pub fn start(level: &Level) -> GameState {
    GameState::new(level, 2000)
}

/// Archive filled from `n` random levels with uniform random performances.
pub fn random_prior(n: usize, seed: u64) -> Archive {
    let mut archive = Archive::new("Fixture");
    for level in levels(n, seed) {
        let descriptor = behavior_descriptor(&level).expect("generated levels are solvable");
        archive.try_insert(Elite {
            level,
            descriptor,
            win_rate: 0.0,
            performance: 0.0,
            eval_count: 0,
        });
    }
    baseline_prior(&archive, seed)
}
