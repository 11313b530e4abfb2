use std::collections::HashSet;

use rand::seq::{IndexedRandom, SliceRandom};
use rand::Rng;
use serde::{Deserialize, Serialize};

use super::{astar_path, Level};
use crate::grid_game::{EnemyKind, Pos, Tile};

pub const MIN_SIDE: usize = 3;
pub const MAX_SAMPLED_SIDE: usize = 9;

/// The random draws behind one generated level.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SampledParams {
    pub sampled_width: usize,
    pub sampled_height: usize,
    pub enemies: usize,
    pub inner_walls: usize,
    /// Size after growing the level until everything fits.
    pub width: usize,
    pub height: usize,
}

/// A fresh random solvable level.
pub fn random_solution<R: Rng + ?Sized>(rng: &mut R) -> Level {
    random_solution_traced(rng).0
}

pub fn random_solution_traced<R: Rng + ?Sized>(rng: &mut R) -> (Level, SampledParams) {
    let sampled_width = rng.random_range(MIN_SIDE..=MAX_SAMPLED_SIDE);
    let sampled_height = rng.random_range(MIN_SIDE..=MAX_SAMPLED_SIDE);
    let side = sampled_width.min(sampled_height);
    let enemies = rng.random_range(side / 2..=side);
    // Any inner wall in a one-cell-wide interior would cut the level.
    let inner_walls = if side > MIN_SIDE {
        rng.random_range(side / 2..=side)
    } else {
        0
    };

    let (mut width, mut height) = (sampled_width, sampled_height);
    while inner_walls + enemies + 3 > (width - 2) * (height - 2) {
        if rng.random_bool(0.5) {
            height += 1;
        } else {
            width += 1;
        }
    }

    let interior: Vec<Pos> = (1..height - 1)
        .flat_map(|row| (1..width - 1).map(move |col| Pos::new(row, col)))
        .collect();
    let picks: Vec<Pos> = interior.choose_multiple(rng, 3).copied().collect();
    let (avatar, key, goal) = (picks[0], picks[1], picks[2]);
    let mut level = Level::open_room(width, height, avatar, key, goal);

    for _ in 0..enemies {
        let kind = EnemyKind::ALL[rng.random_range(0..EnemyKind::ALL.len())];
        let free = level.free_cells();
        if let Some(&pos) = free.choose(rng) {
            level.set_tile(pos, kind.tile());
        }
    }

    let mut occupied: HashSet<Pos> = HashSet::new();
    for (from, to) in [(avatar, key), (key, goal)] {
        let path = astar_path(&level, from, to).expect("walls are placed after the paths");
        occupied.extend(path);
    }
    let mut available: Vec<Pos> = level
        .free_cells()
        .into_iter()
        .filter(|p| !occupied.contains(p))
        .collect();
    available.shuffle(rng);
    for &pos in available.iter().take(inner_walls) {
        level.set_tile(pos, Tile::Wall);
    }

    let params = SampledParams {
        sampled_width,
        sampled_height,
        enemies,
        inner_walls,
        width,
        height,
    };
    (level, params)
}
