//! Budgeted planning agents.
//!
//! Every agent plans through a [`ForwardModel`], which refuses to step once
//! the per-decision budget is spent; whatever has been found by then is
//! played. Agents keep no state between decisions.

mod gts;
mod mcts;
mod olets;
mod osla;
mod rhea;
mod rs;
mod simple;

use std::fmt;
use std::str::FromStr;

use rand::Rng as _;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::grid_game::{Action, ForwardModel, GameState};
use crate::seed::Rng;

pub use gts::Gts;
pub use mcts::{Mcts, MctsParams};
pub use olets::{Olets, OletsParams};
pub use osla::Osla;
pub use rhea::{Rhea, RheaParams};
pub use rs::{RandomSearch, RsParams};
pub use simple::{DoNothing, RandomAgent};

/// Anything that can play the game.
pub trait Policy: Send + Sync {
    fn name(&self) -> &str;

    /// Picks the action for `state`, which must be ongoing. Planning steps
    /// go through `model`; stochastic choices draw from `rng`.
    fn act(&self, state: &GameState, model: &mut ForwardModel, rng: &mut Rng) -> Action;
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum AgentKind {
    DoNothing,
    Random,
    #[serde(rename = "OSLA")]
    Osla,
    #[serde(rename = "GTS")]
    Gts,
    #[serde(rename = "RS")]
    Rs,
    #[serde(rename = "RHEA")]
    Rhea,
    #[serde(rename = "MCTS")]
    Mcts,
    #[serde(rename = "OLETS")]
    Olets,
}

impl AgentKind {
    pub const ALL: [AgentKind; 8] = [
        AgentKind::DoNothing,
        AgentKind::Random,
        AgentKind::Osla,
        AgentKind::Gts,
        AgentKind::Rs,
        AgentKind::Rhea,
        AgentKind::Mcts,
        AgentKind::Olets,
    ];

    pub fn name(self) -> &'static str {
        match self {
            AgentKind::DoNothing => "DoNothing",
            AgentKind::Random => "Random",
            AgentKind::Osla => "OSLA",
            AgentKind::Gts => "GTS",
            AgentKind::Rs => "RS",
            AgentKind::Rhea => "RHEA",
            AgentKind::Mcts => "MCTS",
            AgentKind::Olets => "OLETS",
        }
    }
}

impl fmt::Display for AgentKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown agent {0:?} (expected one of DoNothing, Random, OSLA, GTS, RS, RHEA, MCTS, OLETS)")]
pub struct UnknownAgent(pub String);

impl FromStr for AgentKind {
    type Err = UnknownAgent;

    /// Case-insensitive.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        AgentKind::ALL
            .into_iter()
            .find(|k| k.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| UnknownAgent(s.to_string()))
    }
}

/// Hyperparameters for every agent kind; each agent reads its own group.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct AgentParams {
    pub rs: RsParams,
    pub rhea: RheaParams,
    pub mcts: MctsParams,
    pub olets: OletsParams,
}

/// One of the eight built-in agents.
#[derive(Clone, Debug)]
pub struct Agent {
    kind: AgentKind,
    params: AgentParams,
}

impl Agent {
    pub fn new(kind: AgentKind) -> Self {
        Self::with_params(kind, AgentParams::default())
    }

    pub fn with_params(kind: AgentKind, params: AgentParams) -> Self {
        Self { kind, params }
    }

    pub fn kind(&self) -> AgentKind {
        self.kind
    }

    pub fn params(&self) -> &AgentParams {
        &self.params
    }
}

impl Policy for Agent {
    fn name(&self) -> &str {
        self.kind.name()
    }

    fn act(&self, state: &GameState, model: &mut ForwardModel, rng: &mut Rng) -> Action {
        match self.kind {
            AgentKind::DoNothing => DoNothing.act(state, model, rng),
            AgentKind::Random => RandomAgent.act(state, model, rng),
            AgentKind::Osla => Osla.act(state, model, rng),
            AgentKind::Gts => Gts.act(state, model, rng),
            AgentKind::Rs => RandomSearch(self.params.rs.clone()).act(state, model, rng),
            AgentKind::Rhea => Rhea(self.params.rhea.clone()).act(state, model, rng),
            AgentKind::Mcts => Mcts(self.params.mcts.clone()).act(state, model, rng),
            AgentKind::Olets => Olets(self.params.olets.clone()).act(state, model, rng),
        }
    }
}

pub(crate) fn random_action(rng: &mut Rng) -> Action {
    Action::ALL[rng.random_range(0..Action::ALL.len())]
}

/// Running min/max of values seen during one decision, used to map raw
/// values onto [0, 1].
#[derive(Clone, Copy, Debug)]
pub(crate) struct Bounds {
    lo: f64,
    hi: f64,
}

impl Bounds {
    pub(crate) fn new() -> Self {
        Self {
            lo: f64::INFINITY,
            hi: f64::NEG_INFINITY,
        }
    }

    pub(crate) fn observe(&mut self, v: f64) {
        self.lo = self.lo.min(v);
        self.hi = self.hi.max(v);
    }

    pub(crate) fn normalize(&self, v: f64) -> f64 {
        if self.hi > self.lo {
            (v - self.lo) / (self.hi - self.lo)
        } else {
            0.5
        }
    }
}
