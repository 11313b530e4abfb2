use std::sync::Arc;

use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{Action, Direction, EnemyKind, Outcome, Pos, Tile, KEY_SCORE, KILL_SCORE, WIN_SCORE};
use crate::level_gen::Level;

/// Terminal value of a won state for search heuristics.
pub const WIN_VALUE: f64 = 1e6;
/// Terminal value of a lost state for search heuristics.
pub const LOSS_VALUE: f64 = -1e6;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StepError {
    #[error("cannot step a finished episode (outcome {outcome:?} at tick {tick})")]
    Terminal { outcome: Outcome, tick: u32 },
}

/// Static terrain: walls, floor, key and goal. Shared between copies of a
/// state so that forward-model clones stay cheap.
#[derive(Debug, PartialEq, Eq, Hash)]
struct Terrain {
    width: usize,
    height: usize,
    tiles: Vec<Tile>,
}

impl Terrain {
    fn get(&self, pos: Pos) -> Tile {
        if pos.row >= self.height || pos.col >= self.width {
            return Tile::Wall;
        }
        self.tiles[pos.row * self.width + pos.col]
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Enemy {
    pub pos: Pos,
    pub kind: EnemyKind,
    /// Ticks left until the next move.
    pub cooldown: u8,
}

/// A live episode. Cloning is cheap and yields an independent forward model
/// copy.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GameState {
    terrain: Arc<Terrain>,
    enemies: Vec<Enemy>,
    avatar: Pos,
    facing: Direction,
    has_key: bool,
    score: i64,
    tick: u32,
    max_ticks: u32,
    outcome: Outcome,
}

impl GameState {
    /// Initial state of `level`. Enemies keep the row-major order in which
    /// they appear in the level for the whole episode.
    pub fn new(level: &Level, max_ticks: u32) -> Self {
        let mut tiles = Vec::with_capacity(level.width() * level.height());
        let mut enemies = Vec::new();
        for row in 0..level.height() {
            for col in 0..level.width() {
                let pos = Pos::new(row, col);
                let tile = level.tile(pos);
                match tile.enemy_kind() {
                    Some(kind) => {
                        enemies.push(Enemy {
                            pos,
                            kind,
                            cooldown: kind.period(),
                        });
                        tiles.push(Tile::Floor);
                    }
                    None => tiles.push(tile),
                }
            }
        }
        Self {
            terrain: Arc::new(Terrain {
                width: level.width(),
                height: level.height(),
                tiles,
            }),
            enemies,
            avatar: level.avatar(),
            facing: Direction::Down,
            has_key: false,
            score: 0,
            tick: 0,
            max_ticks: max_ticks.max(1),
            outcome: Outcome::Ongoing,
        }
    }

    pub fn with_facing(mut self, facing: Direction) -> Self {
        self.facing = facing;
        self
    }

    pub fn width(&self) -> usize {
        self.terrain.width
    }

    pub fn height(&self) -> usize {
        self.terrain.height
    }

    pub fn avatar(&self) -> Pos {
        self.avatar
    }

    pub fn facing(&self) -> Direction {
        self.facing
    }

    pub fn has_key(&self) -> bool {
        self.has_key
    }

    pub fn score(&self) -> i64 {
        self.score
    }

    pub fn tick(&self) -> u32 {
        self.tick
    }

    pub fn max_ticks(&self) -> u32 {
        self.max_ticks
    }

    pub fn outcome(&self) -> Outcome {
        self.outcome
    }

    pub fn is_terminal(&self) -> bool {
        self.outcome != Outcome::Ongoing
    }

    pub fn enemies(&self) -> &[Enemy] {
        &self.enemies
    }

    /// Terrain under `pos`, ignoring enemies. The key cell reads as floor
    /// once the key has been picked up.
    pub fn terrain(&self, pos: Pos) -> Tile {
        match self.terrain.get(pos) {
            Tile::Key if self.has_key => Tile::Floor,
            t => t,
        }
    }

    /// Full cell contents including enemies.
    pub fn tile(&self, pos: Pos) -> Tile {
        match self.enemy_index(pos) {
            Some(i) => self.enemies[i].kind.tile(),
            None => self.terrain(pos),
        }
    }

    pub fn key_pos(&self) -> Option<Pos> {
        if self.has_key {
            return None;
        }
        self.find_terrain(Tile::Key)
    }

    pub fn goal_pos(&self) -> Option<Pos> {
        self.find_terrain(Tile::Goal)
    }

    fn find_terrain(&self, tile: Tile) -> Option<Pos> {
        let w = self.terrain.width;
        self.terrain
            .tiles
            .iter()
            .position(|&t| t == tile)
            .map(|i| Pos::new(i / w, i % w))
    }

    fn enemy_index(&self, pos: Pos) -> Option<usize> {
        self.enemies.iter().position(|e| e.pos == pos)
    }

    fn neighbour(&self, pos: Pos, dir: Direction) -> Option<Pos> {
        pos.offset(dir)
            .filter(|p| p.row < self.terrain.height && p.col < self.terrain.width)
    }

    /// Returns the successor state; `self` is left untouched.
    pub fn step<R: Rng + ?Sized>(&self, action: Action, rng: &mut R) -> Result<GameState, StepError> {
        let mut next = self.clone();
        next.advance(action, rng)?;
        Ok(next)
    }

    /// Advances this state by one tick in place.
    ///
    /// Order: avatar action, touch check, enemy moves, touch check, timeout.
    pub fn advance<R: Rng + ?Sized>(&mut self, action: Action, rng: &mut R) -> Result<(), StepError> {
        if self.is_terminal() {
            return Err(StepError::Terminal {
                outcome: self.outcome,
                tick: self.tick,
            });
        }
        self.tick += 1;

        match action {
            Action::Nil => {}
            Action::Use => {
                if let Some(target) = self.neighbour(self.avatar, self.facing) {
                    if let Some(i) = self.enemy_index(target) {
                        self.enemies.remove(i);
                        self.score += KILL_SCORE;
                    }
                }
            }
            Action::Up | Action::Down | Action::Left | Action::Right => {
                let dir = action.direction().expect("movement action");
                self.facing = dir;
                if let Some(target) = self.neighbour(self.avatar, dir) {
                    match self.terrain(target) {
                        Tile::Wall => {}
                        Tile::Key => {
                            self.avatar = target;
                            self.has_key = true;
                            self.score += KEY_SCORE;
                        }
                        Tile::Goal => {
                            self.avatar = target;
                            if self.has_key {
                                self.outcome = Outcome::Win;
                                self.score += WIN_SCORE;
                            }
                        }
                        _ => self.avatar = target,
                    }
                }
            }
        }

        if self.outcome == Outcome::Win {
            return Ok(());
        }
        if self.enemy_index(self.avatar).is_some() {
            self.outcome = Outcome::Loss;
            return Ok(());
        }

        self.move_enemies(rng);

        if self.enemy_index(self.avatar).is_some() || self.tick >= self.max_ticks {
            self.outcome = Outcome::Loss;
        }
        Ok(())
    }

    fn move_enemies<R: Rng + ?Sized>(&mut self, rng: &mut R) {
        let mut candidates: [Pos; 4] = [Pos::new(0, 0); 4];
        for i in 0..self.enemies.len() {
            let enemy = &mut self.enemies[i];
            enemy.cooldown -= 1;
            if enemy.cooldown > 0 {
                continue;
            }
            enemy.cooldown = enemy.kind.period();
            let from = enemy.pos;

            let mut n = 0;
            for dir in Direction::ALL {
                if let Some(p) = self.neighbour(from, dir) {
                    if matches!(self.terrain(p), Tile::Floor) {
                        candidates[n] = p;
                        n += 1;
                    }
                }
            }
            if n == 0 {
                continue;
            }
            let to = candidates[rng.random_range(0..n)];
            // Enemies never stack; a blocked enemy stays put.
            if self.enemy_index(to).is_none() {
                self.enemies[i].pos = to;
            }
        }
    }
}

/// Search heuristic: the score while playing, ±10^6 once decided.
pub fn state_value(state: &GameState) -> f64 {
    match state.outcome {
        Outcome::Win => WIN_VALUE,
        Outcome::Loss => LOSS_VALUE,
        Outcome::Ongoing => state.score as f64,
    }
}
