//! Reference implementations used as test oracles. They are deliberately
//! naive and share no code with the library beyond its data types.
#![allow(dead_code)]

use std::collections::{BTreeMap, VecDeque};

use levelfit_core::qd_archive::CandidateRecord;
use levelfit_core::{CellId, Level, Pos, Tile};

/// Breadth-first shortest path length over non-wall cells.
pub fn bfs_distance(level: &Level, from: Pos, to: Pos) -> Option<usize> {
    let (w, h) = (level.width(), level.height());
    let mut dist = vec![usize::MAX; w * h];
    let mut queue = VecDeque::new();
    dist[from.row * w + from.col] = 0;
    queue.push_back(from);
    while let Some(p) = queue.pop_front() {
        if p == to {
            return Some(dist[p.row * w + p.col]);
        }
        let d = dist[p.row * w + p.col];
        let candidates = [
            (p.row.wrapping_sub(1), p.col),
            (p.row + 1, p.col),
            (p.row, p.col.wrapping_sub(1)),
            (p.row, p.col + 1),
        ];
        for (r, c) in candidates {
            if r >= h || c >= w || dist[r * w + c] != usize::MAX {
                continue;
            }
            if level.tile(Pos::new(r, c)) == Tile::Wall {
                continue;
            }
            dist[r * w + c] = d + 1;
            queue.push_back(Pos::new(r, c));
        }
    }
    None
}

/// Level invariants checked cell by cell.
pub fn check_level(level: &Level) -> Result<(), String> {
    let (w, h) = (level.width(), level.height());
    let mut keys = 0;
    let mut goals = 0;
    for r in 0..h {
        for c in 0..w {
            let t = level.tile(Pos::new(r, c));
            let border = r == 0 || c == 0 || r == h - 1 || c == w - 1;
            if border && t != Tile::Wall {
                return Err(format!("border cell ({r},{c}) is {t:?}"));
            }
            keys += usize::from(t == Tile::Key);
            goals += usize::from(t == Tile::Goal);
        }
    }
    if keys != 1 || goals != 1 {
        return Err(format!("{keys} keys, {goals} goals"));
    }
    let avatar = level.avatar();
    if level.tile(avatar) != Tile::Floor {
        return Err(format!("avatar stands on {:?}", level.tile(avatar)));
    }
    let (key, goal) = (find(level, Tile::Key), find(level, Tile::Goal));
    if bfs_distance(level, avatar, key).is_none() || bfs_distance(level, key, goal).is_none() {
        return Err("key or goal unreachable".into());
    }
    Ok(())
}

pub fn find(level: &Level, tile: Tile) -> Pos {
    (0..level.height())
        .flat_map(|r| (0..level.width()).map(move |c| Pos::new(r, c)))
        .find(|&p| level.tile(p) == tile)
        .expect("tile present")
}

/// Matérn 5/2 covariance written out from its definition.
pub fn matern(sigma: f64, ell: f64, x: &[f64; 3], y: &[f64; 3]) -> f64 {
    let d2: f64 = x.iter().zip(y).map(|(a, b)| (a - b) * (a - b)).sum();
    let r = d2.sqrt() / ell;
    let s5 = 5f64.sqrt();
    sigma * sigma * (1.0 + s5 * r + 5.0 / 3.0 * r * r) * (-s5 * r).exp()
}

/// Inverse by Gauss-Jordan elimination with partial pivoting.
pub fn invert(mut a: Vec<Vec<f64>>) -> Vec<Vec<f64>> {
    let n = a.len();
    let mut inv: Vec<Vec<f64>> = (0..n)
        .map(|i| (0..n).map(|j| f64::from(u8::from(i == j))).collect())
        .collect();
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))
            .unwrap();
        a.swap(col, pivot);
        inv.swap(col, pivot);
        let p = a[col][col];
        for j in 0..n {
            a[col][j] /= p;
            inv[col][j] /= p;
        }
        for i in 0..n {
            if i != col {
                let f = a[i][col];
                for j in 0..n {
                    a[i][j] -= f * a[col][j];
                    inv[i][j] -= f * inv[col][j];
                }
            }
        }
    }
    inv
}

/// GP posterior at `q` computed with an explicit inverse of the noisy Gram
/// matrix. `obs` holds (input, prior mean, observed value).
pub fn dense_posterior(
    sigma: f64,
    ell: f64,
    noise: f64,
    obs: &[([f64; 3], f64, f64)],
    q: &[f64; 3],
    prior_q: f64,
) -> (f64, f64) {
    let n = obs.len();
    if n == 0 {
        return (prior_q, sigma * sigma);
    }
    let gram: Vec<Vec<f64>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| matern(sigma, ell, &obs[i].0, &obs[j].0) + if i == j { noise } else { 0.0 })
                .collect()
        })
        .collect();
    let kinv = invert(gram);
    let k: Vec<f64> = obs.iter().map(|o| matern(sigma, ell, &o.0, q)).collect();
    let resid: Vec<f64> = obs.iter().map(|o| o.2 - o.1).collect();
    let mut mean = prior_q;
    let mut quad = 0.0;
    for i in 0..n {
        for j in 0..n {
            mean += k[i] * kinv[i][j] * resid[j];
            quad += k[i] * kinv[i][j] * k[j];
        }
    }
    (mean, matern(sigma, ell, q, q) - quad)
}

/// e^x by its Taylor series, summed until terms vanish.
pub fn exp_series(x: f64) -> f64 {
    // Evaluate e^|x| and invert for negative x to avoid cancellation.
    let ax = x.abs();
    let mut term = 1.0f64;
    let mut sum = 1.0f64;
    let mut k = 1.0;
    while term > 1e-20 * sum {
        term *= ax / k;
        sum += term;
        k += 1.0;
    }
    if x < 0.0 {
        1.0 / sum
    } else {
        sum
    }
}

/// Square root by Newton iteration.
pub fn sqrt_newton(v: f64) -> f64 {
    let mut x = v.max(1.0);
    for _ in 0..100 {
        x = 0.5 * (x + v / x);
    }
    x
}

/// Replays a logged candidate stream through a plain reading of the
/// MAP-Elites loop: a candidate enters its cell when the cell is empty or
/// the incumbent performance is strictly lower.
pub fn replay_map_elites(log: &[CandidateRecord]) -> BTreeMap<CellId, (String, f64, f64)> {
    let mut map: BTreeMap<CellId, (String, f64, f64)> = BTreeMap::new();
    for c in log {
        let cell = oracle_cell(c.descriptor.coverage, c.descriptor.leniency, c.descriptor.reachability);
        let better = match map.get(&cell) {
            None => true,
            Some(&(_, _, p)) => p < c.performance,
        };
        if better {
            map.insert(cell, (c.level.to_ascii(), c.win_rate, c.performance));
        }
    }
    map
}

/// Cell of a descriptor: coverage [0,1] and reachability [2,40] in ten
/// uniform bins, leniency one bin per enemy up to nine.
pub fn oracle_cell(coverage: f64, leniency: u32, reachability: u32) -> CellId {
    let bin = |v: f64, lo: f64, hi: f64| -> u8 {
        let t = ((v - lo) / (hi - lo)).clamp(0.0, 1.0);
        ((t * 10.0).floor() as u8).min(9)
    };
    CellId([
        bin(coverage, 0.0, 1.0),
        leniency.min(9) as u8,
        bin(f64::from(reachability), 2.0, 40.0),
    ])
}
