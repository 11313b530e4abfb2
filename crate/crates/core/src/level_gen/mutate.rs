use rand::seq::{IndexedRandom, SliceRandom};
use rand::Rng;
use serde::{Deserialize, Serialize};

use super::Level;
use crate::grid_game::{EnemyKind, Pos, Tile};

/// Structural change applied by the first mutation step.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Resize {
    AddRow(usize),
    RemoveRow(usize),
    AddCol(usize),
    RemoveCol(usize),
}

/// What one call to [`random_variation`] actually did.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct MutationRecord {
    pub resize: Option<Resize>,
    /// Enemies added (positive) or removed (negative) by the enemy step.
    pub enemy_delta: i32,
    /// Inner walls added or removed by the wall step.
    pub wall_delta: i32,
}

/// Mutates a copy of `level`; the result is always solvable.
pub fn random_variation<R: Rng + ?Sized>(level: &Level, rng: &mut R) -> Level {
    random_variation_traced(level, rng).0
}

pub fn random_variation_traced<R: Rng + ?Sized>(level: &Level, rng: &mut R) -> (Level, MutationRecord) {
    let mut out = level.clone();
    let resize = resize_step(&mut out, rng);
    let enemy_delta = enemy_step(&mut out, rng);
    let wall_delta = wall_step(&mut out, rng);
    debug_assert!(out.is_solvable());
    (
        out,
        MutationRecord {
            resize,
            enemy_delta,
            wall_delta,
        },
    )
}

/// Adds or removes one row or column. Only rows/columns free of the avatar,
/// key and goal may be removed, and removal must not break connectivity.
fn resize_step<R: Rng + ?Sized>(level: &mut Level, rng: &mut R) -> Option<Resize> {
    let rows = rng.random_bool(0.5);
    let add = rng.random_bool(0.5);
    let (w, h) = (level.width(), level.height());

    if add {
        if rows {
            let at = rng.random_range(1..h);
            level.insert_row(at);
            return Some(Resize::AddRow(at));
        }
        let at = rng.random_range(1..w);
        level.insert_col(at);
        return Some(Resize::AddCol(at));
    }

    let (key, goal, avatar) = (level.key(), level.goal(), level.avatar());
    let protected = [avatar, key, goal];
    let (inner_len, other_inner) = if rows { (h - 2, w - 2) } else { (w - 2, h - 2) };
    if inner_len < 2 || (inner_len - 1) * other_inner < 3 {
        return None;
    }
    let mut candidates: Vec<usize> = (1..=inner_len)
        .filter(|&i| protected.iter().all(|p| if rows { p.row != i } else { p.col != i }))
        .collect();
    candidates.shuffle(rng);
    for at in candidates {
        let mut trial = level.clone();
        if rows {
            trial.remove_row(at);
        } else {
            trial.remove_col(at);
        }
        if trial.is_solvable() {
            *level = trial;
            return Some(if rows {
                Resize::RemoveRow(at)
            } else {
                Resize::RemoveCol(at)
            });
        }
    }
    None
}

fn enemy_step<R: Rng + ?Sized>(level: &mut Level, rng: &mut R) -> i32 {
    let delta: i32 = rng.random_range(-2..=2);
    let mut applied = 0;
    if delta < 0 {
        let mut enemies: Vec<Pos> = level.interior_cells().filter(|&p| level.tile(p).is_enemy()).collect();
        enemies.shuffle(rng);
        for &pos in enemies.iter().take(delta.unsigned_abs() as usize) {
            level.set_tile(pos, Tile::Floor);
            applied -= 1;
        }
    } else {
        for _ in 0..delta {
            let kind = EnemyKind::ALL[rng.random_range(0..EnemyKind::ALL.len())];
            let free = level.free_cells();
            let Some(&pos) = free.choose(rng) else { break };
            level.set_tile(pos, kind.tile());
            applied += 1;
        }
    }
    applied
}

/// Adds or removes inner walls. A wall is only kept if the avatar can still
/// reach the key and the goal.
fn wall_step<R: Rng + ?Sized>(level: &mut Level, rng: &mut R) -> i32 {
    let delta: i32 = rng.random_range(-2..=2);
    let mut applied = 0;
    if delta < 0 {
        let mut walls: Vec<Pos> = level
            .interior_cells()
            .filter(|&p| level.tile(p) == Tile::Wall)
            .collect();
        walls.shuffle(rng);
        for &pos in walls.iter().take(delta.unsigned_abs() as usize) {
            level.set_tile(pos, Tile::Floor);
            applied -= 1;
        }
        return applied;
    }
    for _ in 0..delta {
        let mut free = level.free_cells();
        free.shuffle(rng);
        let placed = free.into_iter().any(|pos| {
            level.set_tile(pos, Tile::Wall);
            if level.is_solvable() {
                true
            } else {
                level.set_tile(pos, Tile::Floor);
                false
            }
        });
        if !placed {
            break;
        }
        applied += 1;
    }
    applied
}
