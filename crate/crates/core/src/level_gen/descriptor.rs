use serde::{Deserialize, Serialize};

use super::{path_steps, Level, LevelError};
use crate::grid_game::Tile;

/// Where a level sits in behavior space.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct BehaviorDescriptor {
    /// Fraction of interior cells that are not plain floor (walls, enemies,
    /// key, goal and the avatar's start cell).
    pub coverage: f64,
    /// Number of enemies.
    pub leniency: u32,
    /// A* steps avatar→key plus key→goal.
    pub reachability: u32,
}

impl BehaviorDescriptor {
    pub fn as_array(&self) -> [f64; 3] {
        [self.coverage, f64::from(self.leniency), f64::from(self.reachability)]
    }
}

pub fn behavior_descriptor(level: &Level) -> Result<BehaviorDescriptor, LevelError> {
    let (key, goal) = (level.key(), level.goal());
    let to_key = path_steps(level, level.avatar(), key).ok_or(LevelError::Unsolvable)?;
    let to_goal = path_steps(level, key, goal).ok_or(LevelError::Unsolvable)?;

    let occupied = level
        .interior_cells()
        .filter(|&p| p == level.avatar() || level.tile(p) != Tile::Floor)
        .count();
    let area = level.interior_area().max(1);

    Ok(BehaviorDescriptor {
        coverage: occupied as f64 / area as f64,
        leniency: level.enemy_count() as u32,
        reachability: (to_key + to_goal) as u32,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid_game::Pos;

    #[test]
    fn counts_enemies() {
        let level = Level::parse("wwwwwww\nwA.1.+w\nw.2.3.w\nw....gw\nwwwwwww\n").unwrap();
        assert_eq!(behavior_descriptor(&level).unwrap().leniency, 3);
    }

    #[test]
    fn adjacent_objectives_give_minimal_reachability() {
        let level = Level::parse("wwwww\nwA+gw\nwwwww\n").unwrap();
        let d = behavior_descriptor(&level).unwrap();
        assert_eq!(d.reachability, 2);
        assert_eq!(d.coverage, 1.0);
    }

    #[test]
    fn open_room_coverage() {
        let level = Level::open_room(7, 7, Pos::new(1, 1), Pos::new(3, 3), Pos::new(5, 5));
        let d = behavior_descriptor(&level).unwrap();
        assert_eq!(d.coverage, 3.0 / 25.0);
        assert_eq!(d.leniency, 0);
        assert_eq!(d.reachability, 8);
    }

    #[test]
    fn unsolvable_is_an_error() {
        let level = Level::parse("wwwwww\nwA+wgw\nwwwwww\n").unwrap();
        assert_eq!(behavior_descriptor(&level), Err(LevelError::Unsolvable));
    }
}
