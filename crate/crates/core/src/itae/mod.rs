//! Intelligent trial-and-error: a Gaussian process over the archive's
//! behavior space whose prior mean is another agent's performance map.
//! Each trial evaluates the elite maximizing `mean + β·sd` on the target
//! agent, conditions the GP on the result and stops at the first level
//! whose performance clears the success bound.

mod adapt;
mod gp;
mod kernel;
mod linalg;

use thiserror::Error;

use crate::qd_archive::CellId;

pub use adapt::{adapt, baseline_prior, AdaptConfig, AdaptationTrace, IterationRecord};
pub use gp::{select_next, GpPosterior, Observation, Selection};
pub use kernel::Matern52Kernel;
pub use linalg::{cholesky, cholesky_with_jitter, solve_lower, solve_upper_transposed, JITTER_LADDER};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GpError {
    #[error("kernel matrix is not positive definite even with jitter {max_jitter:e}")]
    NotPositiveDefinite { max_jitter: f64 },
    #[error("cannot select from an empty archive")]
    EmptyArchive,
    #[error("cell {0} is not part of the prior archive")]
    UnknownCell(CellId),
    #[error("invalid kernel: {0}")]
    InvalidKernel(&'static str),
}
