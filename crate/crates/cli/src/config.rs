use std::path::Path;

use levelfit_core::{AdaptConfig, AgentKind, AgentParams, GameConfig, MapElitesConfig};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::CliError;

/// Everything an experiment run depends on. Missing keys take the values
/// used in the original study.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ExperimentConfig {
    pub seed: u64,
    /// Agents evolved and adapted by default.
    pub agents: Vec<AgentKind>,
    pub agent_params: AgentParams,
    pub game: GameConfig,
    pub map_elites: MapElitesConfig,
    pub adapt: AdaptConfig,
    pub matrix: MatrixConfig,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct MatrixConfig {
    /// Adaptation runs per (prior, target) pair.
    pub repetitions: u32,
    /// Add a row whose prior is the DoNothing archive with random
    /// performances.
    pub baseline: bool,
}

impl Default for MatrixConfig {
    fn default() -> Self {
        Self {
            repetitions: 10,
            baseline: true,
        }
    }
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            seed: 0,
            agents: AgentKind::ALL.to_vec(),
            agent_params: AgentParams::default(),
            game: GameConfig::default(),
            map_elites: MapElitesConfig::default(),
            adapt: AdaptConfig::default(),
            matrix: MatrixConfig::default(),
        }
    }
}

impl ExperimentConfig {
    pub fn from_toml(src: &str) -> Result<Self, CliError> {
        let config: Self = toml::from_str(src).map_err(|e| CliError::Config(e.to_string()))?;
        config.validate()?;
        Ok(config)
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let src = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        Self::from_toml(&src)
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("config serializes")
    }

    pub fn validate(&self) -> Result<(), CliError> {
        let bad = |msg: &str| Err(CliError::Config(msg.to_string()));
        if self.game.max_ticks == 0 {
            return bad("game.max_ticks must be positive");
        }
        if self.game.budget.validate().is_err() {
            return bad("game.budget.limit must be positive");
        }
        let me = &self.map_elites;
        if me.n_init == 0 || me.rollouts == 0 || (me.n_generations > 0 && me.iters_per_gen == 0) {
            return bad("map_elites.n_init, rollouts and iters_per_gen must be positive");
        }
        if self.adapt.kernel.validate().is_err() {
            return bad("adapt.kernel: amplitude and lengthscale must be positive, noise non-negative");
        }
        if self.adapt.beta.is_nan() || self.adapt.beta < 0.0 {
            return bad("adapt.beta must be non-negative");
        }
        if self.adapt.max_iters == 0 || self.adapt.rollouts == 0 {
            return bad("adapt.max_iters and adapt.rollouts must be positive");
        }
        if !(0.0..=1.0).contains(&self.adapt.success_threshold) {
            return bad("adapt.success_threshold must lie in [0, 1]");
        }
        if self.matrix.repetitions == 0 {
            return bad("matrix.repetitions must be positive");
        }
        Ok(())
    }

    /// SHA-256 of the canonical JSON form of the whole configuration.
    pub fn fingerprint(&self) -> String {
        digest(&serde_json::to_string(self).expect("config serializes"))
    }

    /// SHA-256 of the game rules and planning budget only. Archives with
    /// different game fingerprints measure different games.
    pub fn game_fingerprint(&self) -> String {
        let rules = serde_json::json!({
            "game": self.game,
            "scores": [levelfit_core::grid_game::KEY_SCORE, levelfit_core::grid_game::KILL_SCORE, levelfit_core::grid_game::WIN_SCORE],
        });
        digest(&rules.to_string())
    }
}

fn digest(s: &str) -> String {
    hex::encode(Sha256::digest(s.as_bytes()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_file_gives_defaults() {
        let c = ExperimentConfig::from_toml("").unwrap();
        assert_eq!(c, ExperimentConfig::default());
        assert_eq!(c.map_elites.total_candidates(), 600);
        assert_eq!(c.adapt.beta, 0.03);
        assert_eq!(c.adapt.kernel.noise_variance, 0.1);
        assert_eq!(c.matrix.repetitions, 10);
    }

    #[test]
    fn round_trips_through_toml() {
        let mut c = ExperimentConfig {
            seed: 17,
            agents: vec![AgentKind::Random, AgentKind::Osla],
            ..ExperimentConfig::default()
        };
        c.game.max_ticks = 300;
        assert_eq!(ExperimentConfig::from_toml(&c.to_toml()).unwrap(), c);
    }

    #[test]
    fn rejects_unknown_keys_and_bad_values() {
        assert!(ExperimentConfig::from_toml("sede = 3").is_err());
        assert!(ExperimentConfig::from_toml("[game]\nmax_ticks = 0").is_err());
        assert!(ExperimentConfig::from_toml("[adapt]\nbeta = -1.0").is_err());
        assert!(ExperimentConfig::from_toml("agents = [\"Alice\"]").is_err());
    }

    #[test]
    fn fingerprints_track_changes() {
        let a = ExperimentConfig::default();
        let mut b = a.clone();
        b.seed = 1;
        assert_ne!(a.fingerprint(), b.fingerprint());
        assert_eq!(a.game_fingerprint(), b.game_fingerprint());
        b.game.max_ticks = 10;
        assert_ne!(a.game_fingerprint(), b.game_fingerprint());
        assert_eq!(a.fingerprint().len(), 64);
    }
}
