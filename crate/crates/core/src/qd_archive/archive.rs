use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::cells::{cell_index, CellId, Centroid, BINS};
use crate::level_gen::{behavior_descriptor, BehaviorDescriptor, Level, LevelError};

#[derive(Debug, Error)]
pub enum ArchiveError {
    #[error("malformed archive JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("cell {cell}: {source}")]
    Level { cell: CellId, source: LevelError },
    #[error("cell {cell}: elite descriptor belongs to cell {actual}")]
    WrongCell { cell: CellId, actual: CellId },
    #[error("cell {0} appears more than once")]
    DuplicateCell(CellId),
    #[error("cell {cell}: {what} {value} outside [0, 1]")]
    Range {
        cell: CellId,
        what: &'static str,
        value: f64,
    },
}

/// The best level found for one cell.
#[derive(Clone, Debug, PartialEq)]
pub struct Elite {
    pub level: Level,
    pub descriptor: BehaviorDescriptor,
    pub win_rate: f64,
    pub performance: f64,
    /// Rollouts behind `win_rate`.
    pub eval_count: u32,
}

/// Behavior-performance map: at most one elite per cell.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Archive {
    pub agent: String,
    /// Fingerprint of the full experiment configuration.
    pub config_fingerprint: String,
    /// Fingerprint of the game rules only.
    pub game_fingerprint: String,
    cells: BTreeMap<CellId, Elite>,
}

/// One archive cell as stored on disk.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CellRecord {
    pub cell_id: CellId,
    pub centroid: Centroid,
    pub level: String,
    pub win_rate: f64,
    pub performance: f64,
    pub eval_count: u32,
}

#[derive(Serialize, Deserialize)]
struct ArchiveDocument {
    config_fingerprint: String,
    game_fingerprint: String,
    agent: String,
    cells: Vec<CellRecord>,
}

impl Archive {
    pub fn new(agent: impl Into<String>) -> Self {
        Self {
            agent: agent.into(),
            ..Self::default()
        }
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn get(&self, cell: &CellId) -> Option<&Elite> {
        self.cells.get(cell)
    }

    /// Elites in cell order.
    pub fn iter(&self) -> impl Iterator<Item = (&CellId, &Elite)> {
        self.cells.iter()
    }

    pub fn cell_ids(&self) -> impl Iterator<Item = CellId> + '_ {
        self.cells.keys().copied()
    }

    /// Stores `elite` in its descriptor's cell if the cell is empty or the
    /// incumbent performs strictly worse. Returns whether it was stored.
    pub fn try_insert(&mut self, elite: Elite) -> bool {
        let cell = cell_index(&elite.descriptor);
        match self.cells.get(&cell) {
            Some(inc) if inc.performance >= elite.performance => false,
            _ => {
                self.cells.insert(cell, elite);
                true
            }
        }
    }

    /// Copy of this archive with every performance replaced by `f(cell,
    /// elite)`.
    pub fn map_performance(&self, mut f: impl FnMut(&CellId, &Elite) -> f64) -> Archive {
        let mut out = self.clone();
        for (cell, elite) in out.cells.iter_mut() {
            elite.performance = f(cell, elite);
        }
        out
    }

    pub fn records(&self) -> Vec<CellRecord> {
        self.cells
            .iter()
            .map(|(cell, e)| CellRecord {
                cell_id: *cell,
                centroid: cell.centroid(),
                level: e.level.to_ascii(),
                win_rate: e.win_rate,
                performance: e.performance,
                eval_count: e.eval_count,
            })
            .collect()
    }

    pub fn to_json(&self) -> String {
        let doc = ArchiveDocument {
            config_fingerprint: self.config_fingerprint.clone(),
            game_fingerprint: self.game_fingerprint.clone(),
            agent: self.agent.clone(),
            cells: self.records(),
        };
        let mut s = serde_json::to_string_pretty(&doc).expect("archive serializes");
        s.push('\n');
        s
    }

    /// Parses and re-validates an archive: every level must be solvable and
    /// sit in the cell it is filed under.
    pub fn from_json(src: &str) -> Result<Archive, ArchiveError> {
        let doc: ArchiveDocument = serde_json::from_str(src)?;
        let mut cells = BTreeMap::new();
        for rec in doc.cells {
            let cell = rec.cell_id;
            let level = Level::parse(&rec.level).map_err(|e| ArchiveError::Level { cell, source: e.into() })?;
            level
                .validate()
                .map_err(|source| ArchiveError::Level { cell, source })?;
            let descriptor = behavior_descriptor(&level).map_err(|source| ArchiveError::Level { cell, source })?;
            let actual = cell_index(&descriptor);
            if actual != cell {
                return Err(ArchiveError::WrongCell { cell, actual });
            }
            for (what, value) in [("win_rate", rec.win_rate), ("performance", rec.performance)] {
                if !(0.0..=1.0).contains(&value) {
                    return Err(ArchiveError::Range { cell, what, value });
                }
            }
            let elite = Elite {
                level,
                descriptor,
                win_rate: rec.win_rate,
                performance: rec.performance,
                eval_count: rec.eval_count,
            };
            if cells.insert(cell, elite).is_some() {
                return Err(ArchiveError::DuplicateCell(cell));
            }
        }
        Ok(Archive {
            agent: doc.agent,
            config_fingerprint: doc.config_fingerprint,
            game_fingerprint: doc.game_fingerprint,
            cells,
        })
    }

    /// Mean win rate per cell of a 2-D projection, averaging over the
    /// remaining feature. `axes` picks the two kept features (0 coverage, 1
    /// leniency, 2 reachability). Cells with no elite are `None`.
    pub fn projection(&self, axes: (usize, usize)) -> Projection {
        assert!(
            axes.0 < 3 && axes.1 < 3 && axes.0 != axes.1,
            "two distinct feature axes"
        );
        let n = usize::from(BINS);
        let mut sum = vec![vec![0.0; n]; n];
        let mut count = vec![vec![0u32; n]; n];
        for (cell, elite) in &self.cells {
            let (i, j) = (usize::from(cell.0[axes.0]), usize::from(cell.0[axes.1]));
            sum[i][j] += elite.win_rate;
            count[i][j] += 1;
        }
        let values = sum
            .iter()
            .zip(&count)
            .map(|(s, c)| {
                s.iter()
                    .zip(c)
                    .map(|(&s, &c)| (c > 0).then(|| s / f64::from(c)))
                    .collect()
            })
            .collect();
        Projection { axes, values }
    }
}

/// `values[i][j]`: bin `i` of the first axis, bin `j` of the second.
#[derive(Clone, Debug, PartialEq)]
pub struct Projection {
    pub axes: (usize, usize),
    pub values: Vec<Vec<Option<f64>>>,
}

pub const BAND_LABELS: [&str; 5] = ["1>=w>=0.8", "0.8>w>=0.6", "0.6>w>=0.4", "0.4>w>=0.2", "0.2>w>=0"];

/// Difficulty band of a win rate, 0 = easiest. Band edges belong to the
/// easier band.
pub fn band_of(w: f64) -> usize {
    if w >= 0.8 {
        0
    } else if w >= 0.6 {
        1
    } else if w >= 0.4 {
        2
    } else if w >= 0.2 {
        3
    } else {
        4
    }
}

/// Elite counts per difficulty band, ordered easy to hard.
pub fn difficulty_bands(archive: &Archive) -> [usize; 5] {
    let mut counts = [0; 5];
    for (_, e) in archive.iter() {
        counts[band_of(e.win_rate)] += 1;
    }
    counts
}
