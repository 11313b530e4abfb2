//! One character per cell:
//!
//! | char | cell |
//! |------|------|
//! | `w` | wall |
//! | `.` | floor |
//! | `A` | avatar (on floor) |
//! | `+` | key |
//! | `g` | goal |
//! | `1` / `2` / `3` | quick / normal / slow enemy |
//!
//! Rows are newline-separated and the border must be all walls.

use std::fmt::Write as _;

use thiserror::Error;

use super::{Pos, Tile};
use crate::level_gen::Level;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("empty level")]
    Empty,
    #[error("row {row} has {found} cells, expected {expected}")]
    Ragged { row: usize, expected: usize, found: usize },
    #[error("unknown cell {ch:?} at row {row}, col {col}")]
    UnknownChar { row: usize, col: usize, ch: char },
    #[error("border cell at row {row}, col {col} is not a wall")]
    Border { row: usize, col: usize },
    #[error("level must be at least 3x3, got {width}x{height}")]
    TooSmall { width: usize, height: usize },
    #[error("expected exactly one {what}, found {count}")]
    Count { what: &'static str, count: usize },
}

fn tile_of(ch: char) -> Option<(Tile, bool)> {
    Some(match ch {
        'w' => (Tile::Wall, false),
        '.' => (Tile::Floor, false),
        'A' => (Tile::Floor, true),
        '+' => (Tile::Key, false),
        'g' => (Tile::Goal, false),
        '1' => (Tile::EnemyQuick, false),
        '2' => (Tile::EnemyNormal, false),
        '3' => (Tile::EnemySlow, false),
        _ => return None,
    })
}

pub fn char_of(tile: Tile) -> char {
    match tile {
        Tile::Wall => 'w',
        Tile::Floor => '.',
        Tile::Key => '+',
        Tile::Goal => 'g',
        Tile::EnemyQuick => '1',
        Tile::EnemyNormal => '2',
        Tile::EnemySlow => '3',
    }
}

/// Parses a level. Solvability is not checked here; see
/// [`Level::validate`].
pub fn parse(src: &str) -> Result<Level, ParseError> {
    let mut rows: Vec<&str> = src.lines().map(|l| l.trim_end_matches('\r')).collect();
    while rows.last().is_some_and(|l| l.is_empty()) {
        rows.pop();
    }
    if rows.is_empty() {
        return Err(ParseError::Empty);
    }
    let width = rows[0].chars().count();
    let height = rows.len();

    let mut tiles = Vec::with_capacity(width * height);
    let mut avatars = Vec::new();
    for (row, line) in rows.iter().enumerate() {
        let found = line.chars().count();
        if found != width {
            return Err(ParseError::Ragged {
                row,
                expected: width,
                found,
            });
        }
        for (col, ch) in line.chars().enumerate() {
            let (tile, avatar) = tile_of(ch).ok_or(ParseError::UnknownChar { row, col, ch })?;
            let border = row == 0 || col == 0 || row + 1 == height || col + 1 == width;
            if border && tile != Tile::Wall {
                return Err(ParseError::Border { row, col });
            }
            if avatar {
                avatars.push(Pos::new(row, col));
            }
            tiles.push(tile);
        }
    }
    if width < 3 || height < 3 {
        return Err(ParseError::TooSmall { width, height });
    }

    let count = |t: Tile| tiles.iter().filter(|&&x| x == t).count();
    if avatars.len() != 1 {
        return Err(ParseError::Count {
            what: "avatar",
            count: avatars.len(),
        });
    }
    for (what, tile) in [("key", Tile::Key), ("goal", Tile::Goal)] {
        let n = count(tile);
        if n != 1 {
            return Err(ParseError::Count { what, count: n });
        }
    }
    Ok(Level::from_parts(width, height, tiles, avatars[0]))
}

/// Renders a level, one row per line with a trailing newline.
pub fn format(level: &Level) -> String {
    let mut out = String::with_capacity((level.width() + 1) * level.height());
    for row in 0..level.height() {
        for col in 0..level.width() {
            let pos = Pos::new(row, col);
            let ch = if pos == level.avatar() {
                'A'
            } else {
                char_of(level.tile(pos))
            };
            out.push(ch);
        }
        let _ = writeln!(out);
    }
    out
}
