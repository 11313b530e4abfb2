use std::time::{Duration, Instant};

use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{Action, GameState};

pub const DEFAULT_CALL_BUDGET: u64 = 1000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BudgetMode {
    /// `limit` forward-model steps per decision. Reproducible.
    CallCount,
    /// `limit` milliseconds per decision. Not reproducible.
    WallClock,
}

/// Per-decision planning budget.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BudgetSpec {
    pub mode: BudgetMode,
    pub limit: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("budget limit must be positive")]
pub struct BudgetError;

impl BudgetSpec {
    pub fn new(mode: BudgetMode, limit: u64) -> Result<Self, BudgetError> {
        if limit == 0 {
            return Err(BudgetError);
        }
        Ok(Self { mode, limit })
    }

    pub fn calls(limit: u64) -> Self {
        Self::new(BudgetMode::CallCount, limit).expect("call budget must be positive")
    }

    pub fn validate(&self) -> Result<(), BudgetError> {
        Self::new(self.mode, self.limit).map(|_| ())
    }
}

impl Default for BudgetSpec {
    fn default() -> Self {
        Self::calls(DEFAULT_CALL_BUDGET)
    }
}

/// Budgeted access to the simulator for one decision.
///
/// Every successful step counts as one call. Once the budget is spent all
/// further steps are refused.
#[derive(Debug)]
pub struct ForwardModel {
    budget: BudgetSpec,
    calls: u64,
    deadline: Option<Instant>,
}

impl ForwardModel {
    pub fn new(budget: BudgetSpec) -> Self {
        let deadline = match budget.mode {
            BudgetMode::CallCount => None,
            BudgetMode::WallClock => Some(Instant::now() + Duration::from_millis(budget.limit)),
        };
        Self {
            budget,
            calls: 0,
            deadline,
        }
    }

    pub fn budget(&self) -> BudgetSpec {
        self.budget
    }

    pub fn calls(&self) -> u64 {
        self.calls
    }

    /// Calls left, when the budget is a call count.
    pub fn remaining_calls(&self) -> Option<u64> {
        match self.budget.mode {
            BudgetMode::CallCount => Some(self.budget.limit.saturating_sub(self.calls)),
            BudgetMode::WallClock => None,
        }
    }

    pub fn exhausted(&self) -> bool {
        match self.budget.mode {
            BudgetMode::CallCount => self.calls >= self.budget.limit,
            BudgetMode::WallClock => self.deadline.is_some_and(|d| Instant::now() >= d),
        }
    }

    /// Steps `state` in place. Returns `false`, leaving the state
    /// untouched, when the budget is spent or the state is terminal.
    pub fn advance<R: Rng + ?Sized>(&mut self, state: &mut GameState, action: Action, rng: &mut R) -> bool {
        if self.exhausted() || state.is_terminal() {
            return false;
        }
        self.calls += 1;
        state.advance(action, rng).is_ok()
    }

    /// Copying variant of [`ForwardModel::advance`].
    pub fn step<R: Rng + ?Sized>(&mut self, state: &GameState, action: Action, rng: &mut R) -> Option<GameState> {
        let mut next = state.clone();
        self.advance(&mut next, action, rng).then_some(next)
    }
}
