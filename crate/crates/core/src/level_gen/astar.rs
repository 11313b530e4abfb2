use std::cmp::Reverse;
use std::collections::BinaryHeap;

use super::Level;
use crate::grid_game::{Direction, Pos};

/// Shortest 4-connected path from `from` to `to` over non-wall cells,
/// both endpoints included.
///
/// Enemies do not block. Neighbours are expanded Up, Down, Left, Right and
/// equal f-scores pop in insertion order, so the returned path is fully
/// deterministic.
pub fn astar_path(level: &Level, from: Pos, to: Pos) -> Option<Vec<Pos>> {
    if !level.is_passable(from) || !level.is_passable(to) {
        return None;
    }
    let w = level.width();
    let n = w * level.height();
    let idx = |p: Pos| p.row * w + p.col;

    let mut g = vec![usize::MAX; n];
    let mut parent = vec![usize::MAX; n];
    let mut closed = vec![false; n];
    let mut open = BinaryHeap::new();
    let mut seq = 0usize;

    g[idx(from)] = 0;
    open.push(Reverse((from.manhattan(to), seq, idx(from))));

    while let Some(Reverse((_, _, cur))) = open.pop() {
        if closed[cur] {
            continue;
        }
        closed[cur] = true;
        let pos = Pos::new(cur / w, cur % w);
        if pos == to {
            let mut path = vec![pos];
            let mut at = cur;
            while parent[at] != usize::MAX {
                at = parent[at];
                path.push(Pos::new(at / w, at % w));
            }
            path.reverse();
            return Some(path);
        }
        for dir in Direction::ALL {
            let Some(next) = pos.offset(dir).filter(|&p| level.is_passable(p)) else {
                continue;
            };
            let ni = idx(next);
            let cost = g[cur] + 1;
            if !closed[ni] && cost < g[ni] {
                g[ni] = cost;
                parent[ni] = cur;
                seq += 1;
                open.push(Reverse((cost + next.manhattan(to), seq, ni)));
            }
        }
    }
    None
}

/// Length in steps of the A* path, if any.
pub fn path_steps(level: &Level, from: Pos, to: Pos) -> Option<usize> {
    astar_path(level, from, to).map(|p| p.len() - 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn adjacent_cells_have_length_one() {
        let level = Level::open_room(7, 7, Pos::new(1, 1), Pos::new(1, 2), Pos::new(5, 5));
        assert_eq!(path_steps(&level, Pos::new(3, 3), Pos::new(3, 4)), Some(1));
        assert_eq!(path_steps(&level, Pos::new(3, 3), Pos::new(3, 3)), Some(0));
    }

    #[test]
    fn wall_line_disconnects() {
        let level = Level::parse("wwwwwww\nwA.w.+w\nw..w..w\nw..w.gw\nwwwwwww\n").unwrap();
        assert_eq!(astar_path(&level, Pos::new(1, 1), Pos::new(1, 5)), None);
    }

    #[test]
    fn path_is_contiguous_and_avoids_walls() {
        let level = Level::parse("wwwwwww\nwA.w.+w\nw..w..w\nw.....w\nw.www.w\nw....gw\nwwwwwww\n").unwrap();
        let path = astar_path(&level, level.avatar(), level.key()).unwrap();
        assert_eq!(path.first(), Some(&level.avatar()));
        assert_eq!(path.last(), Some(&level.key()));
        for pair in path.windows(2) {
            assert_eq!(pair[0].manhattan(pair[1]), 1);
        }
        assert!(path.iter().all(|&p| level.is_passable(p)));
        assert_eq!(path.len() - 1, 8);
    }

    #[test]
    fn wall_endpoint_has_no_path() {
        let level = Level::open_room(5, 5, Pos::new(1, 1), Pos::new(1, 2), Pos::new(3, 3));
        assert_eq!(astar_path(&level, Pos::new(0, 0), Pos::new(2, 2)), None);
    }
}
