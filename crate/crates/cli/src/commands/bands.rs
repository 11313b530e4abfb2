use std::path::{Path, PathBuf};

use levelfit_core::qd_archive::BAND_LABELS;
use levelfit_core::{difficulty_bands, Archive};

use super::load_archive;
use crate::config::ExperimentConfig;
use crate::error::CliError;
use crate::output::{csv_document, write_atomic};

pub const BANDS_HEADER: [&str; 8] = [
    "agent",
    "archive_fingerprint",
    BAND_LABELS[0],
    BAND_LABELS[1],
    BAND_LABELS[2],
    BAND_LABELS[3],
    BAND_LABELS[4],
    "total",
];

#[derive(Clone, Debug, PartialEq)]
pub struct BandRow {
    pub agent: String,
    pub archive_fingerprint: String,
    /// Easiest band first.
    pub counts: [usize; 5],
}

pub fn band_rows(archives: &[Archive]) -> Vec<BandRow> {
    archives
        .iter()
        .map(|a| BandRow {
            agent: a.agent.clone(),
            archive_fingerprint: a.config_fingerprint.clone(),
            counts: difficulty_bands(a),
        })
        .collect()
}

/// Elite counts per win-rate band, one row per archive. Written to
/// `out/bands.csv` when `out` is given; the CSV text is returned either way.
pub fn cmd_bands(config: &ExperimentConfig, archives: &[PathBuf], out: Option<&Path>) -> Result<String, CliError> {
    let loaded = archives
        .iter()
        .map(|p| load_archive(p))
        .collect::<Result<Vec<_>, _>>()?;
    let rows = band_rows(&loaded).into_iter().map(|r| {
        let mut cells = vec![r.agent, r.archive_fingerprint];
        cells.extend(r.counts.iter().map(usize::to_string));
        cells.push(r.counts.iter().sum::<usize>().to_string());
        cells
    });
    let csv = csv_document(&config.fingerprint(), &BANDS_HEADER, rows);
    if let Some(dir) = out {
        write_atomic(&dir.join("bands.csv"), csv.as_bytes())?;
    }
    Ok(csv)
}
