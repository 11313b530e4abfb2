//! Difficulty-calibrated level archives for a Zelda-like grid dungeon game.
//!
//! The crate is organised bottom-up:
//!
//! - [`grid_game`]: the deterministic simulator, its forward model and the
//!   ASCII level format.
//! - [`level_gen`]: the level genotype, random generation, mutation, A* and
//!   behavior descriptors.
//! - [`agents`]: eight budgeted planning agents acting through the forward
//!   model.
//! - [`qd_archive`]: MAP-Elites over (coverage, leniency, reachability) with
//!   a performance function peaking at a 60% win rate.
//! - [`itae`]: Gaussian-process trial-and-error search that adapts an archive
//!   built for one agent to another agent in a handful of evaluations.

pub mod agents;
pub mod grid_game;
pub mod itae;
pub mod level_gen;
pub mod qd_archive;
pub mod seed;

pub use agents::{Agent, AgentKind, AgentParams, Policy};
pub use grid_game::{
    run_episode, Action, BudgetMode, BudgetSpec, Direction, EpisodeResult, ForwardModel, GameConfig, GameState,
    Outcome, Pos, StepError, Tile,
};
pub use itae::{
    adapt, baseline_prior, select_next, AdaptConfig, AdaptationTrace, GpError, GpPosterior, Matern52Kernel,
};
pub use level_gen::{astar_path, behavior_descriptor, BehaviorDescriptor, Level};
pub use qd_archive::{
    cell_index, difficulty_bands, evaluate_level, map_elites, performance, Archive, CellId, Elite, EvalOutcome,
    MapElitesConfig,
};
