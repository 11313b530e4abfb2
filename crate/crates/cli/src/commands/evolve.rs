use std::path::{Path, PathBuf};

use levelfit_core::qd_archive::CandidateRecord;
use levelfit_core::{map_elites, seed, AgentKind, Archive};
use serde::Serialize;

use super::{archive_path, build_agent};
use crate::config::ExperimentConfig;
use crate::error::CliError;
use crate::output::{csv_document, num, write_atomic};

const FEATURES: [&str; 3] = ["coverage", "leniency", "reachability"];

/// Feature pairs of the three heatmap projections.
pub const HEATMAP_AXES: [(usize, usize); 3] = [(0, 1), (0, 2), (1, 2)];

#[derive(Debug)]
pub struct EvolveOutput {
    pub archive: Archive,
    pub archive_path: PathBuf,
    pub candidates_path: PathBuf,
    pub heatmap_paths: Vec<PathBuf>,
}

#[derive(Serialize)]
struct CandidateLog<'a> {
    config_fingerprint: &'a str,
    agent: &'a str,
    candidates: &'a [CandidateRecord],
}

/// Evolves an archive for `agent` and writes it to `out` together with the
/// candidate log and one mean-win-rate heatmap per feature pair.
pub fn cmd_evolve(config: &ExperimentConfig, agent: AgentKind, out: &Path) -> Result<EvolveOutput, CliError> {
    let policy = build_agent(config, agent);
    let run_seed = seed::derive_path(config.seed, &[seed::label("evolve"), seed::label(agent.name())]);
    let run = map_elites(&policy, &config.map_elites, &config.game, run_seed);

    let fingerprint = config.fingerprint();
    let mut archive = run.archive;
    archive.config_fingerprint = fingerprint.clone();
    archive.game_fingerprint = config.game_fingerprint();

    let archive_path = archive_path(out, agent.name());
    write_atomic(&archive_path, archive.to_json().as_bytes())?;

    let candidates_path = out.join(format!("candidates_{}.json", agent.name()));
    let log = CandidateLog {
        config_fingerprint: &fingerprint,
        agent: agent.name(),
        candidates: &run.log,
    };
    let mut json = serde_json::to_string_pretty(&log).expect("log serializes");
    json.push('\n');
    write_atomic(&candidates_path, json.as_bytes())?;

    let mut heatmap_paths = Vec::new();
    for axes in HEATMAP_AXES {
        let path = out.join(format!(
            "heatmap_{}_{}_{}.csv",
            agent.name(),
            FEATURES[axes.0],
            FEATURES[axes.1]
        ));
        write_atomic(&path, heatmap_csv(&archive, axes, &fingerprint).as_bytes())?;
        heatmap_paths.push(path);
    }

    Ok(EvolveOutput {
        archive,
        archive_path,
        candidates_path,
        heatmap_paths,
    })
}

/// 10×10 grid of mean elite win rates; rows are bins of the first feature,
/// columns bins of the second, empty where no elite exists.
pub(crate) fn heatmap_csv(archive: &Archive, axes: (usize, usize), fingerprint: &str) -> String {
    let projection = archive.projection(axes);
    let corner = format!("{}/{}", FEATURES[axes.0], FEATURES[axes.1]);
    let n = projection.values.len();
    let mut header = vec![corner];
    header.extend((0..n).map(|j| j.to_string()));
    let header: Vec<&str> = header.iter().map(String::as_str).collect();
    let rows = projection.values.iter().enumerate().map(|(i, row)| {
        let mut cells = vec![i.to_string()];
        cells.extend(row.iter().map(|v| v.map(num).unwrap_or_default()));
        cells
    });
    csv_document(fingerprint, &header, rows)
}
