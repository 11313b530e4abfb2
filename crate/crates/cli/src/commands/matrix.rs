use std::path::{Path, PathBuf};

use levelfit_core::{adapt, baseline_prior, seed, AdaptationTrace, AgentKind, Archive};
use rayon::prelude::*;
use serde::Serialize;

use super::{archive_path, build_agent, load_archive};
use crate::config::ExperimentConfig;
use crate::error::CliError;
use crate::output::{csv_document, num, write_atomic};

/// Row label of the random-performance prior.
pub const BASELINE: &str = "Baseline";

pub const MATRIX_HEADER: [&str; 5] = ["prior", "target", "repetitions", "successes", "mean_iterations"];
pub const ITERATIONS_HEADER: [&str; 7] = [
    "run_id",
    "iteration",
    "cell_id",
    "win_rate",
    "performance",
    "acq_value",
    "success",
];

#[derive(Clone, Debug)]
pub struct MatrixRequest {
    /// Agents whose archives serve as priors.
    pub priors: Vec<AgentKind>,
    pub targets: Vec<AgentKind>,
    /// Directory holding `archive_<agent>.json` files.
    pub archive_dir: PathBuf,
    /// Append the baseline row built from the DoNothing archive.
    pub baseline: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MatrixCell {
    pub prior: String,
    pub target: String,
    pub repetitions: u32,
    pub successes: u32,
    /// Mean iterations over successful runs only.
    pub mean_iterations: Option<f64>,
}

#[derive(Debug)]
pub struct MatrixOutput {
    pub cells: Vec<MatrixCell>,
    pub traces: Vec<(String, AdaptationTrace)>,
    pub matrix_path: PathBuf,
    pub iterations_path: PathBuf,
    pub trace_dir: PathBuf,
}

#[derive(Serialize)]
struct TraceFile<'a> {
    config_fingerprint: &'a str,
    run_id: &'a str,
    #[serde(flatten)]
    trace: &'a AdaptationTrace,
}

struct Job<'a> {
    prior: &'a str,
    archive: &'a Archive,
    target: AgentKind,
    repetition: u32,
}

/// Runs `repetitions` adaptations for every (prior, target) pair and writes
/// the aggregate matrix, one trace file per run and a per-iteration CSV.
pub fn cmd_matrix(config: &ExperimentConfig, request: &MatrixRequest, out: &Path) -> Result<MatrixOutput, CliError> {
    let expected_game = config.game_fingerprint();
    let load = |agent: AgentKind| -> Result<Archive, CliError> {
        let path = archive_path(&request.archive_dir, agent.name());
        let archive = load_archive(&path)?;
        if archive.game_fingerprint != expected_game {
            return Err(CliError::GameMismatch {
                path,
                expected: expected_game.clone(),
                found: archive.game_fingerprint,
            });
        }
        Ok(archive)
    };

    let mut priors: Vec<(String, Archive)> = Vec::new();
    for &agent in &request.priors {
        priors.push((agent.name().to_string(), load(agent)?));
    }
    let repetitions = config.matrix.repetitions;
    // One random prior per repetition, all sharing the DoNothing cells.
    let baselines: Vec<Archive> = if request.baseline {
        let source = load(AgentKind::DoNothing)?;
        (0..repetitions)
            .map(|rep| {
                let s = seed::derive_path(config.seed, &[seed::label("baseline"), u64::from(rep)]);
                baseline_prior(&source, s)
            })
            .collect()
    } else {
        Vec::new()
    };

    let mut jobs = Vec::new();
    for (name, archive) in &priors {
        for &target in &request.targets {
            for repetition in 0..repetitions {
                jobs.push(Job {
                    prior: name,
                    archive,
                    target,
                    repetition,
                });
            }
        }
    }
    for &target in &request.targets {
        for (repetition, archive) in (0..repetitions).zip(&baselines) {
            jobs.push(Job {
                prior: BASELINE,
                archive,
                target,
                repetition,
            });
        }
    }

    let traces = jobs
        .par_iter()
        .map(|job| {
            let run_seed = seed::derive_path(
                config.seed,
                &[
                    seed::label("matrix"),
                    seed::label(job.prior),
                    seed::label(job.target.name()),
                    u64::from(job.repetition),
                ],
            );
            let mut trace = adapt(
                job.archive,
                &build_agent(config, job.target),
                &config.adapt,
                &config.game,
                run_seed,
            )?;
            trace.prior_agent = job.prior.to_string();
            let run_id = format!("{}/{}/{}", job.prior, job.target.name(), job.repetition);
            Ok((run_id, trace))
        })
        .collect::<Result<Vec<_>, CliError>>()?;

    let fingerprint = config.fingerprint();
    let trace_dir = out.join("traces");
    for (run_id, trace) in &traces {
        let file = TraceFile {
            config_fingerprint: &fingerprint,
            run_id,
            trace,
        };
        let mut json = serde_json::to_string_pretty(&file).expect("trace serializes");
        json.push('\n');
        write_atomic(
            &trace_dir.join(format!("{}.json", run_id.replace('/', "__"))),
            json.as_bytes(),
        )?;
    }

    let cells = aggregate(&traces, repetitions);
    let matrix_path = out.join("matrix.csv");
    write_atomic(&matrix_path, matrix_csv(&cells, &fingerprint).as_bytes())?;
    let iterations_path = out.join("iterations.csv");
    write_atomic(&iterations_path, iterations_csv(&traces, &fingerprint).as_bytes())?;

    Ok(MatrixOutput {
        cells,
        traces,
        matrix_path,
        iterations_path,
        trace_dir,
    })
}

/// Groups consecutive runs of the same pair; jobs were laid out pair by pair.
fn aggregate(traces: &[(String, AdaptationTrace)], repetitions: u32) -> Vec<MatrixCell> {
    traces
        .chunks(repetitions as usize)
        .map(|runs| {
            let first = &runs[0].1;
            let used: Vec<u32> = runs
                .iter()
                .filter(|(_, t)| t.success)
                .map(|(_, t)| t.iterations_used)
                .collect();
            MatrixCell {
                prior: first.prior_agent.clone(),
                target: first.target_agent.clone(),
                repetitions: runs.len() as u32,
                successes: used.len() as u32,
                mean_iterations: (!used.is_empty()).then(|| f64::from(used.iter().sum::<u32>()) / used.len() as f64),
            }
        })
        .collect()
}

pub(crate) fn matrix_csv(cells: &[MatrixCell], fingerprint: &str) -> String {
    let rows = cells.iter().map(|c| {
        [
            c.prior.clone(),
            c.target.clone(),
            c.repetitions.to_string(),
            c.successes.to_string(),
            c.mean_iterations.map(num).unwrap_or_default(),
        ]
    });
    csv_document(fingerprint, &MATRIX_HEADER, rows)
}

/// `success` is true on the iteration that met the threshold, which is
/// always a run's last row.
pub(crate) fn iterations_csv(traces: &[(String, AdaptationTrace)], fingerprint: &str) -> String {
    let rows = traces.iter().flat_map(|(run_id, t)| {
        let last = t.iterations.len();
        t.iterations.iter().map(move |r| {
            [
                run_id.clone(),
                r.iteration.to_string(),
                r.cell_id.to_string(),
                num(r.win_rate),
                num(r.performance),
                num(r.acquisition),
                (t.success && r.iteration as usize == last).to_string(),
            ]
        })
    });
    csv_document(fingerprint, &ITERATIONS_HEADER, rows)
}
