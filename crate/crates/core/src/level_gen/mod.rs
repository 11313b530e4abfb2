//! Level genotype: a bordered tile grid with one avatar, one key and one
//! goal, kept solvable by construction.

mod astar;
mod descriptor;
mod generate;
mod mutate;

use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::grid_game::ascii::{self, ParseError};
use crate::grid_game::{Pos, Tile};

pub use astar::{astar_path, path_steps};
pub use descriptor::{behavior_descriptor, BehaviorDescriptor};
pub use generate::{random_solution, random_solution_traced, SampledParams, MAX_SAMPLED_SIDE, MIN_SIDE};
pub use mutate::{random_variation, random_variation_traced, MutationRecord, Resize};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LevelError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("border cell at row {row}, col {col} is not a wall")]
    Border { row: usize, col: usize },
    #[error("avatar at row {}, col {} is not on an interior floor cell", .0.row, .0.col)]
    AvatarPlacement(Pos),
    #[error("expected exactly one {what}, found {count}")]
    Count { what: &'static str, count: usize },
    #[error("no path from the avatar to the key and on to the goal")]
    Unsolvable,
}

/// A rectangular level. `width` counts columns, `height` rows, both
/// including the wall border.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Level {
    width: usize,
    height: usize,
    tiles: Vec<Tile>,
    avatar: Pos,
}

impl Level {
    pub(crate) fn from_parts(width: usize, height: usize, tiles: Vec<Tile>, avatar: Pos) -> Self {
        debug_assert_eq!(tiles.len(), width * height);
        Self {
            width,
            height,
            tiles,
            avatar,
        }
    }

    /// An open room: wall border, floor interior, avatar/key/goal at the
    /// given cells.
    pub fn open_room(width: usize, height: usize, avatar: Pos, key: Pos, goal: Pos) -> Self {
        let mut tiles = vec![Tile::Floor; width * height];
        for row in 0..height {
            for col in 0..width {
                if row == 0 || col == 0 || row + 1 == height || col + 1 == width {
                    tiles[row * width + col] = Tile::Wall;
                }
            }
        }
        let mut level = Self::from_parts(width, height, tiles, avatar);
        level.set_tile(key, Tile::Key);
        level.set_tile(goal, Tile::Goal);
        level
    }

    pub fn parse(src: &str) -> Result<Self, ParseError> {
        ascii::parse(src)
    }

    pub fn to_ascii(&self) -> String {
        ascii::format(self)
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn tile(&self, pos: Pos) -> Tile {
        self.tiles[pos.row * self.width + pos.col]
    }

    /// Overwrites one cell. Invariants are not rechecked; see
    /// [`Level::validate`].
    pub fn set_tile(&mut self, pos: Pos, tile: Tile) {
        self.tiles[pos.row * self.width + pos.col] = tile;
    }

    pub fn avatar(&self) -> Pos {
        self.avatar
    }

    pub fn set_avatar(&mut self, pos: Pos) {
        self.avatar = pos;
    }

    pub fn contains(&self, pos: Pos) -> bool {
        pos.row < self.height && pos.col < self.width
    }

    pub fn is_interior(&self, pos: Pos) -> bool {
        pos.row > 0 && pos.col > 0 && pos.row + 1 < self.height && pos.col + 1 < self.width
    }

    /// Walls block pathing; everything else, enemies included, is passable.
    pub fn is_passable(&self, pos: Pos) -> bool {
        self.contains(pos) && self.tile(pos) != Tile::Wall
    }

    pub fn interior_cells(&self) -> impl Iterator<Item = Pos> + '_ {
        (1..self.height.saturating_sub(1))
            .flat_map(move |row| (1..self.width.saturating_sub(1)).map(move |col| Pos::new(row, col)))
    }

    pub fn interior_area(&self) -> usize {
        self.width.saturating_sub(2) * self.height.saturating_sub(2)
    }

    fn find(&self, tile: Tile) -> Option<Pos> {
        self.tiles
            .iter()
            .position(|&t| t == tile)
            .map(|i| Pos::new(i / self.width, i % self.width))
    }

    pub fn key(&self) -> Pos {
        self.find(Tile::Key).expect("level has a key")
    }

    pub fn goal(&self) -> Pos {
        self.find(Tile::Goal).expect("level has a goal")
    }

    pub fn enemy_count(&self) -> usize {
        self.tiles.iter().filter(|t| t.is_enemy()).count()
    }

    pub fn inner_wall_count(&self) -> usize {
        self.interior_cells().filter(|&p| self.tile(p) == Tile::Wall).count()
    }

    /// Interior floor cells not holding the avatar.
    pub fn free_cells(&self) -> Vec<Pos> {
        self.interior_cells()
            .filter(|&p| p != self.avatar && self.tile(p) == Tile::Floor)
            .collect()
    }

    pub fn is_solvable(&self) -> bool {
        let (key, goal) = match (self.find(Tile::Key), self.find(Tile::Goal)) {
            (Some(k), Some(g)) => (k, g),
            _ => return false,
        };
        astar_path(self, self.avatar, key).is_some() && astar_path(self, key, goal).is_some()
    }

    /// Checks every structural invariant plus solvability.
    pub fn validate(&self) -> Result<(), LevelError> {
        for row in 0..self.height {
            for col in 0..self.width {
                let pos = Pos::new(row, col);
                if !self.is_interior(pos) && self.tile(pos) != Tile::Wall {
                    return Err(LevelError::Border { row, col });
                }
            }
        }
        if !self.is_interior(self.avatar) || self.tile(self.avatar) != Tile::Floor {
            return Err(LevelError::AvatarPlacement(self.avatar));
        }
        for (what, tile) in [("key", Tile::Key), ("goal", Tile::Goal)] {
            let count = self.tiles.iter().filter(|&&t| t == tile).count();
            if count != 1 {
                return Err(LevelError::Count { what, count });
            }
        }
        if !self.is_solvable() {
            return Err(LevelError::Unsolvable);
        }
        Ok(())
    }

    pub(crate) fn insert_row(&mut self, at: usize) {
        let w = self.width;
        let mut row = vec![Tile::Floor; w];
        row[0] = Tile::Wall;
        row[w - 1] = Tile::Wall;
        self.tiles.splice(at * w..at * w, row);
        self.height += 1;
        if self.avatar.row >= at {
            self.avatar.row += 1;
        }
    }

    pub(crate) fn remove_row(&mut self, at: usize) {
        let w = self.width;
        self.tiles.drain(at * w..(at + 1) * w);
        self.height -= 1;
        if self.avatar.row > at {
            self.avatar.row -= 1;
        }
    }

    pub(crate) fn insert_col(&mut self, at: usize) {
        let (w, h) = (self.width, self.height);
        let mut tiles = Vec::with_capacity((w + 1) * h);
        for row in 0..h {
            let src = &self.tiles[row * w..(row + 1) * w];
            tiles.extend_from_slice(&src[..at]);
            tiles.push(if row == 0 || row + 1 == h {
                Tile::Wall
            } else {
                Tile::Floor
            });
            tiles.extend_from_slice(&src[at..]);
        }
        self.tiles = tiles;
        self.width += 1;
        if self.avatar.col >= at {
            self.avatar.col += 1;
        }
    }

    pub(crate) fn remove_col(&mut self, at: usize) {
        let w = self.width;
        let mut i = 0;
        self.tiles.retain(|_| {
            let keep = i % w != at;
            i += 1;
            keep
        });
        self.width -= 1;
        if self.avatar.col > at {
            self.avatar.col -= 1;
        }
    }
}

impl fmt::Debug for Level {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Level {}x{}", self.width, self.height)?;
        f.write_str(&self.to_ascii())
    }
}

impl fmt::Display for Level {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_ascii())
    }
}

impl Serialize for Level {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_ascii())
    }
}

impl<'de> Deserialize<'de> for Level {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let src = String::deserialize(deserializer)?;
        ascii::parse(&src).map_err(serde::de::Error::custom)
    }
}
