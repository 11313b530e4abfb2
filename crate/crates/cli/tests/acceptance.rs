//! Acceptance suite. Runs every criterion, prints one PASS/FAIL line each
//! and exits non-zero if any failed.

#[path = "../../core/tests/common/mod.rs"]
mod common;

use std::collections::{BTreeMap, BTreeSet};
use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::Instant;

use levelfit_cli::commands::{cmd_evolve, cmd_matrix, MatrixRequest};
use levelfit_cli::ExperimentConfig;
use levelfit_core::itae::cholesky_with_jitter;
use levelfit_core::level_gen::{random_solution_traced, random_variation};
use levelfit_core::qd_archive::CandidateRecord;
use levelfit_core::seed::rng_from;
use levelfit_core::{
    difficulty_bands, performance, AdaptationTrace, AgentKind, Archive, CellId, GpPosterior, Matern52Kernel,
};
use rand::Rng;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn repo_root() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../..")
}

fn load_config(name: &str) -> ExperimentConfig {
    ExperimentConfig::load(&repo_root().join("configs").join(name)).expect("bundled config")
}

fn ac1_performance() -> Outcome {
    let p = |w| performance(w).unwrap();
    let checks = [(0.0, 0.0), (0.6, 1.0), (1.0, 0.0), (0.8, 0.75)];
    for (w, want) in checks {
        ensure((p(w) - want).abs() <= 1e-12, || format!("p({w}) = {}", p(w)))?;
    }
    let left: f64 = 5.0 / 3.0 * 0.6;
    let right: f64 = -25.0 / 4.0 * 0.6 * 0.6 + 15.0 / 2.0 * 0.6 - 5.0 / 4.0;
    ensure((left - right).abs() <= 1e-12, || {
        format!("branches differ at 0.6: {left} vs {right}")
    })?;
    ensure((p(0.6 - 1e-9) - p(0.6 + 1e-9)).abs() < 1e-8, || {
        "discontinuous at 0.6".into()
    })?;
    Ok("anchors exact, branches meet at 0.6".into())
}

fn ac2_gp_oracle() -> Outcome {
    let mut rng = rng_from(2);
    let mut worst: f64 = 0.0;
    for _ in 0..200 {
        let kernel = Matern52Kernel {
            amplitude: rng.random_range(0.5..2.0),
            lengthscale: rng.random_range(0.2..2.0),
            noise_variance: rng.random_range(0.01..0.5),
        };
        let mut gp = GpPosterior::new(kernel, BTreeMap::new()).map_err(|e| e.to_string())?;
        let mut obs = Vec::new();
        for _ in 0..rng.random_range(0..=8) {
            let x = [rng.random(), rng.random(), rng.random()];
            let (m0, f) = (rng.random::<f64>(), rng.random::<f64>());
            gp.observe_point(x, m0, f).map_err(|e| e.to_string())?;
            obs.push((x, m0, f));
        }
        let q = [rng.random(), rng.random(), rng.random()];
        let m0 = rng.random::<f64>();
        let (m, v) = gp.predict_at(&q, m0);
        let (om, ov) = common::dense_posterior(
            kernel.amplitude,
            kernel.lengthscale,
            kernel.noise_variance,
            &obs,
            &q,
            m0,
        );
        worst = worst.max((m - om).abs()).max((v - ov.max(0.0)).abs());
    }
    ensure(worst <= 1e-10, || format!("max abs error {worst:e}"))?;
    Ok(format!("200 configurations, max abs error {worst:.1e}"))
}

fn ac3_kernel() -> Outcome {
    let k = Matern52Kernel::default();
    ensure(k.at_distance(0.0) == 1.0, || "k(0) != σ²".into())?;
    let wide = Matern52Kernel { amplitude: 2.5, ..k };
    ensure((wide.at_distance(0.0) - 6.25).abs() < 1e-12, || {
        "k(0) != σ² for σ=2.5".into()
    })?;
    let s5 = common::sqrt_newton(5.0);
    let oracle = (1.0 + s5 + 5.0 / 3.0) * common::exp_series(-s5);
    let err = (k.at_distance(1.0) - oracle).abs();
    ensure(err <= 1e-12, || format!("k(1) error {err:e}"))?;

    let mut rng = rng_from(3);
    let mut max_jitter: f64 = 0.0;
    for _ in 0..50 {
        let n = rng.random_range(2..60);
        let xs: Vec<[f64; 3]> = (0..n)
            .map(|_| {
                CellId([
                    rng.random_range(0..10),
                    rng.random_range(0..10),
                    rng.random_range(0..10),
                ])
                .unit_point()
            })
            .collect();
        let gram: Vec<f64> = xs.iter().flat_map(|a| xs.iter().map(|b| k.eval(a, b))).collect();
        let (_, jitter) = cholesky_with_jitter(&gram, n).map_err(|e| e.to_string())?;
        max_jitter = max_jitter.max(jitter);
    }
    Ok(format!(
        "k(1) = {oracle:.12}, 50 Gram matrices factorized, max jitter {max_jitter:e}"
    ))
}

fn ac4_generator() -> Outcome {
    let mut rng = rng_from(4);
    for i in 0..10_000 {
        let (level, s) = random_solution_traced(&mut rng);
        common::check_level(&level).map_err(|e| format!("random_solution #{i}: {e}\n{level}"))?;
        let side = s.sampled_width.min(s.sampled_height);
        let bounds_ok = (3..=9).contains(&s.sampled_width)
            && (3..=9).contains(&s.sampled_height)
            && (side / 2..=side).contains(&s.enemies)
            && if side == 3 {
                s.inner_walls == 0
            } else {
                (side / 2..=side).contains(&s.inner_walls)
            }
            && s.inner_walls + s.enemies + 3 <= (s.width - 2) * (s.height - 2);
        ensure(bounds_ok, || format!("sample #{i} out of bounds: {s:?}"))?;
    }
    let mut mutated = 0;
    for chain in 0..100 {
        let (mut level, _) = random_solution_traced(&mut rng);
        for step in 0..100 {
            level = random_variation(&level, &mut rng);
            common::check_level(&level).map_err(|e| format!("chain {chain} step {step}: {e}\n{level}"))?;
            mutated += 1;
        }
    }
    Ok(format!(
        "10000 generated and {mutated} chained mutations pass the BFS oracle"
    ))
}

fn ac5_replay(scratch: &Path) -> Outcome {
    let mut config = ExperimentConfig {
        seed: 5,
        ..ExperimentConfig::default()
    };
    config.game.max_ticks = 200;
    config.game.budget.limit = 300;
    config.map_elites.n_init = 20;
    config.map_elites.n_generations = 1;
    config.map_elites.iters_per_gen = 30;
    config.map_elites.rollouts = 5;
    let dir = scratch.join("ac5");
    let out = cmd_evolve(&config, AgentKind::Random, &dir).map_err(|e| e.to_string())?;

    // Replay from the files on disk, not from memory.
    let log: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&out.candidates_path).unwrap()).map_err(|e| e.to_string())?;
    let candidates: Vec<CandidateRecord> =
        serde_json::from_value(log["candidates"].clone()).map_err(|e| e.to_string())?;
    ensure(candidates.len() == 50, || {
        format!("{} candidates logged", candidates.len())
    })?;
    let archive =
        Archive::from_json(&std::fs::read_to_string(&out.archive_path).unwrap()).map_err(|e| e.to_string())?;
    let oracle = common::replay_map_elites(&candidates);
    ensure(archive.len() == oracle.len(), || {
        format!("{} cells vs oracle {}", archive.len(), oracle.len())
    })?;
    for (cell, elite) in archive.iter() {
        let Some((level, w, p)) = oracle.get(cell) else {
            return Err(format!("cell {cell} missing from oracle"));
        };
        ensure(
            &elite.level.to_ascii() == level && elite.win_rate == *w && elite.performance == *p,
            || format!("cell {cell} differs from oracle"),
        )?;
    }
    Ok(format!(
        "{} elites identical to replay of 50 logged candidates",
        archive.len()
    ))
}

struct Desk {
    archives: BTreeMap<AgentKind, Archive>,
    traces: Vec<(String, AdaptationTrace)>,
}

fn run_desk(scratch: &Path) -> Result<Desk, String> {
    let config = load_config("desk.toml");
    let dir = scratch.join("desk");
    let mut archives = BTreeMap::new();
    for agent in [AgentKind::DoNothing, AgentKind::Random, AgentKind::Osla, AgentKind::Gts] {
        let out = cmd_evolve(&config, agent, &dir).map_err(|e| e.to_string())?;
        archives.insert(agent, out.archive);
    }
    let request = MatrixRequest {
        priors: vec![AgentKind::Random, AgentKind::Osla, AgentKind::Gts],
        targets: vec![AgentKind::Random, AgentKind::Osla, AgentKind::Gts, AgentKind::DoNothing],
        archive_dir: dir.clone(),
        baseline: false,
    };
    let out = cmd_matrix(&config, &request, &dir).map_err(|e| e.to_string())?;
    Ok(Desk {
        archives,
        traces: out.traces,
    })
}

fn runs<'a>(desk: &'a Desk, prior: &str, target: &str) -> Vec<&'a AdaptationTrace> {
    desk.traces
        .iter()
        .map(|(_, t)| t)
        .filter(|t| t.prior_agent == prior && t.target_agent == target)
        .collect()
}

fn ac6_do_nothing(desk: &Desk) -> Outcome {
    let archive = &desk.archives[&AgentKind::DoNothing];
    let bands = difficulty_bands(archive);
    ensure(!archive.is_empty(), || "empty archive".into())?;
    ensure(archive.iter().all(|(_, e)| e.win_rate == 0.0), || {
        format!("bands {bands:?}")
    })?;
    ensure(bands[..4].iter().all(|&c| c == 0), || format!("bands {bands:?}"))?;
    Ok(format!(
        "bands {bands:?}: all {} elites in the hardest band",
        archive.len()
    ))
}

fn ac7_self_prior(desk: &Desk) -> Outcome {
    let mut detail = Vec::new();
    for agent in ["Random", "OSLA", "GTS"] {
        let rs = runs(desk, agent, agent);
        ensure(rs.len() == 10, || format!("{agent}: {} runs", rs.len()))?;
        let quick = rs.iter().filter(|t| t.success && t.iterations_used <= 3).count();
        let used: Vec<u32> = rs.iter().map(|t| t.iterations_used).collect();
        detail.push(format!("{agent} {quick}/10 {used:?}"));
        ensure(quick >= 8, || detail.join("; "))?;
    }
    Ok(format!("successes within 3 iterations: {}", detail.join("; ")))
}

fn ac8_mismatch(desk: &Desk) -> Outcome {
    let summary = |rs: &[&AdaptationTrace]| {
        let ok: Vec<u32> = rs.iter().filter(|t| t.success).map(|t| t.iterations_used).collect();
        let mean = if ok.is_empty() {
            f64::INFINITY
        } else {
            f64::from(ok.iter().sum::<u32>()) / ok.len() as f64
        };
        (ok.len(), mean)
    };
    let (own_ok, own_mean) = summary(&runs(desk, "Random", "Random"));
    let (gts_ok, gts_mean) = summary(&runs(desk, "GTS", "Random"));
    ensure(gts_ok < own_ok || (gts_ok == own_ok && gts_mean > own_mean), || {
        format!("Random on GTS {gts_ok}/10 ({gts_mean}) vs own {own_ok}/10 ({own_mean})")
    })?;

    // DoNothing never wins, so every level of any prior is unwinnable for it.
    let stuck = runs(desk, "GTS", "DoNothing");
    ensure(stuck.len() == 10, || format!("{} unwinnable runs", stuck.len()))?;
    let all_capped = stuck.iter().all(|t| !t.success && t.iterations_used == 20);
    ensure(all_capped, || {
        "unwinnable prior produced a success or stopped early".into()
    })?;
    Ok(format!(
        "Random on own archive {own_ok}/10 (mean {own_mean:.2}), on GTS archive {gts_ok}/10; unwinnable prior 0/10 at the 20-iteration cap"
    ))
}

fn ac9_stopping_rule(desk: &Desk) -> Outcome {
    for (run_id, t) in &desk.traces {
        let last = t.iterations.last().ok_or_else(|| format!("{run_id}: no iterations"))?;
        let in_window = 20 * last.wins >= 9 * last.rollouts && 5 * last.wins <= 4 * last.rollouts;
        ensure(t.success == in_window, || {
            format!("{run_id}: success {} with win rate {}", t.success, last.win_rate)
        })?;
        ensure(t.success == (0.45..=0.8).contains(&last.win_rate), || {
            format!("{run_id}: float window disagrees")
        })?;
    }
    Ok(format!(
        "{} traces: success ⇔ final win rate in [0.45, 0.8]",
        desk.traces.len()
    ))
}

fn run_cli(dir: &Path, args: &[&str]) -> Result<(), String> {
    let config = repo_root().join("configs/smoke.toml");
    let status = Command::new(env!("CARGO_BIN_EXE_levelfit"))
        .arg("--config")
        .arg(&config)
        .arg("--out")
        .arg(dir)
        .args(args)
        .output()
        .map_err(|e| e.to_string())?;
    ensure(status.status.success(), || {
        String::from_utf8_lossy(&status.stderr).into_owned()
    })
}

fn ac10_determinism(scratch: &Path) -> Outcome {
    let mut outputs = Vec::new();
    for run in ["a", "b"] {
        let dir = scratch.join(format!("smoke_{run}"));
        run_cli(&dir, &["evolve", "--agent", "Random,OSLA"])?;
        run_cli(&dir, &["matrix", "--priors", "Random,OSLA", "--targets", "Random,OSLA"])?;
        outputs.push(dir);
    }
    let files = [
        "archive_Random.json",
        "archive_OSLA.json",
        "matrix.csv",
        "iterations.csv",
    ];
    for f in files {
        let a = std::fs::read(outputs[0].join(f)).map_err(|e| format!("{f}: {e}"))?;
        let b = std::fs::read(outputs[1].join(f)).map_err(|e| format!("{f}: {e}"))?;
        ensure(a == b, || format!("{f} differs between runs"))?;
    }
    let traces: BTreeSet<String> = std::fs::read_dir(outputs[0].join("traces"))
        .map_err(|e| e.to_string())?
        .map(|e| e.unwrap().file_name().to_string_lossy().into_owned())
        .collect();
    let matrix = std::fs::read_to_string(outputs[0].join("matrix.csv")).unwrap();
    let cells = matrix.lines().skip(2).count();
    ensure(cells == 4 && traces.len() == 8, || {
        format!("{cells} cells, {} traces", traces.len())
    })?;
    Ok(format!(
        "{} files byte-identical across two runs; 4 cells from 8 traces",
        files.len()
    ))
}

fn main() {
    let scratch = tempfile::tempdir().expect("temp dir");
    let mut failed = 0;
    let mut report = |id: &str, name: &str, start: Instant, outcome: Outcome| {
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("{id} {name}: PASS ({secs:.1}s) {detail}"),
            Err(why) => {
                failed += 1;
                println!("{id} {name}: FAIL ({secs:.1}s) {why}");
            }
        }
    };

    let t = Instant::now();
    report("AC1", "performance function exactness", t, ac1_performance());
    let t = Instant::now();
    report("AC2", "GP oracle equivalence", t, ac2_gp_oracle());
    let t = Instant::now();
    report("AC3", "kernel correctness", t, ac3_kernel());
    let t = Instant::now();
    report("AC4", "generator soundness", t, ac4_generator());
    let t = Instant::now();
    report("AC5", "MAP-Elites oracle replay", t, ac5_replay(scratch.path()));

    let t = Instant::now();
    match run_desk(scratch.path()) {
        Ok(desk) => {
            println!(
                "    desk-scale archives and matrix built in {:.1}s",
                t.elapsed().as_secs_f64()
            );
            let t = Instant::now();
            report("AC6", "DoNothing hardness", t, ac6_do_nothing(&desk));
            let t = Instant::now();
            report("AC7", "self-prior adaptation", t, ac7_self_prior(&desk));
            let t = Instant::now();
            report("AC8", "skill-mismatch failure", t, ac8_mismatch(&desk));
            let t = Instant::now();
            report("AC9", "stopping-rule identity", t, ac9_stopping_rule(&desk));
        }
        Err(e) => {
            for (id, name) in [
                ("AC6", "DoNothing hardness"),
                ("AC7", "self-prior adaptation"),
                ("AC8", "skill-mismatch failure"),
                ("AC9", "stopping-rule identity"),
            ] {
                report(id, name, t, Err(format!("desk run failed: {e}")));
            }
        }
    }

    let t = Instant::now();
    report("AC10", "end-to-end determinism", t, ac10_determinism(scratch.path()));

    if failed > 0 {
        println!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
    println!("all 10 acceptance criteria passed");
}
