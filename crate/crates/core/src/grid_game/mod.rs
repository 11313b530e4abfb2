//! The Zelda-like dungeon: pick up the key, reach the goal, don't get
//! touched by an enemy. Enemies wander randomly at three speeds and can be
//! killed with a one-tick sword swing.

pub mod ascii;
mod episode;
mod model;
mod state;

use serde::{Deserialize, Serialize};

pub use episode::{run_episode, run_episode_traced, EpisodeResult};
pub use model::{BudgetError, BudgetMode, BudgetSpec, ForwardModel};
pub use state::{state_value, Enemy, GameState, StepError, LOSS_VALUE, WIN_VALUE};

/// Points for picking up the key.
pub const KEY_SCORE: i64 = 1;
/// Points for killing an enemy.
pub const KILL_SCORE: i64 = 2;
/// Points for reaching the goal with the key.
pub const WIN_SCORE: i64 = 1;

pub const DEFAULT_MAX_TICKS: u32 = 2000;

/// Cell coordinates, row-major.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Pos {
    pub row: usize,
    pub col: usize,
}

impl Pos {
    pub const fn new(row: usize, col: usize) -> Self {
        Self { row, col }
    }

    /// The neighbouring cell in `dir`, or `None` when it would leave the
    /// first row/column. Callers bound-check the far edges against the grid.
    pub fn offset(self, dir: Direction) -> Option<Pos> {
        let (dr, dc) = dir.delta();
        let row = self.row.checked_add_signed(dr)?;
        let col = self.col.checked_add_signed(dc)?;
        Some(Pos { row, col })
    }

    pub fn manhattan(self, other: Pos) -> usize {
        self.row.abs_diff(other.row) + self.col.abs_diff(other.col)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Direction {
    Up,
    Down,
    Left,
    Right,
}

impl Direction {
    /// Fixed neighbour order used by pathing and enemy movement.
    pub const ALL: [Direction; 4] = [Direction::Up, Direction::Down, Direction::Left, Direction::Right];

    pub fn delta(self) -> (isize, isize) {
        match self {
            Direction::Up => (-1, 0),
            Direction::Down => (1, 0),
            Direction::Left => (0, -1),
            Direction::Right => (0, 1),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum EnemyKind {
    Slow,
    Normal,
    Quick,
}

impl EnemyKind {
    pub const ALL: [EnemyKind; 3] = [EnemyKind::Slow, EnemyKind::Normal, EnemyKind::Quick];

    /// Ticks between two moves.
    pub fn period(self) -> u8 {
        match self {
            EnemyKind::Quick => 1,
            EnemyKind::Normal => 2,
            EnemyKind::Slow => 4,
        }
    }

    pub fn tile(self) -> Tile {
        match self {
            EnemyKind::Slow => Tile::EnemySlow,
            EnemyKind::Normal => Tile::EnemyNormal,
            EnemyKind::Quick => Tile::EnemyQuick,
        }
    }
}

/// Contents of one grid cell. The avatar is tracked separately.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Tile {
    Floor,
    Wall,
    Key,
    Goal,
    EnemySlow,
    EnemyNormal,
    EnemyQuick,
}

impl Tile {
    pub fn enemy_kind(self) -> Option<EnemyKind> {
        match self {
            Tile::EnemySlow => Some(EnemyKind::Slow),
            Tile::EnemyNormal => Some(EnemyKind::Normal),
            Tile::EnemyQuick => Some(EnemyKind::Quick),
            _ => None,
        }
    }

    pub fn is_enemy(self) -> bool {
        self.enemy_kind().is_some()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Action {
    Nil,
    Up,
    Down,
    Left,
    Right,
    Use,
}

impl Action {
    pub const ALL: [Action; 6] = [
        Action::Nil,
        Action::Up,
        Action::Down,
        Action::Left,
        Action::Right,
        Action::Use,
    ];

    pub fn direction(self) -> Option<Direction> {
        match self {
            Action::Up => Some(Direction::Up),
            Action::Down => Some(Direction::Down),
            Action::Left => Some(Direction::Left),
            Action::Right => Some(Direction::Right),
            Action::Nil | Action::Use => None,
        }
    }

    pub fn from_direction(dir: Direction) -> Action {
        match dir {
            Direction::Up => Action::Up,
            Direction::Down => Action::Down,
            Direction::Left => Action::Left,
            Direction::Right => Action::Right,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Outcome {
    Ongoing,
    Win,
    Loss,
}

/// Rules shared by every episode of an experiment.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct GameConfig {
    pub max_ticks: u32,
    pub budget: BudgetSpec,
}

impl Default for GameConfig {
    fn default() -> Self {
        Self {
            max_ticks: DEFAULT_MAX_TICKS,
            budget: BudgetSpec::default(),
        }
    }
}
