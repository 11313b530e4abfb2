//! MAP-Elites over the (coverage, leniency, reachability) behavior space.
//!
//! A level's performance for an agent is its win rate over repeated
//! rollouts pushed through a function that peaks at 60%, so the archive
//! collects levels that are neither trivial nor hopeless for that agent.

mod archive;
mod cells;
mod evaluate;
mod map_elites;
mod performance;

pub use archive::{band_of, difficulty_bands, Archive, ArchiveError, CellRecord, Elite, Projection, BAND_LABELS};
pub use cells::{cell_index, CellId, Centroid, FeatureRange, BINS, COVERAGE_RANGE, LENIENCY_RANGE, REACHABILITY_RANGE};
pub use evaluate::{evaluate_level, EvalOutcome, DEFAULT_ROLLOUTS};
pub use map_elites::{map_elites, CandidateRecord, MapElitesConfig, MapElitesRun};
pub use performance::{performance, performance_from_counts, PerformanceError, TARGET_WIN_RATE};
