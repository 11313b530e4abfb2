use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use levelfit_cli::commands::{
    archive_path, cmd_bands, cmd_eval, cmd_evolve, cmd_matrix, cmd_validate_level, parse_agent, MatrixRequest,
};
use levelfit_cli::{CliError, ExperimentConfig};
use levelfit_core::AgentKind;

/// Evolve difficulty-calibrated level archives and adapt them to new agents.
#[derive(Parser, Debug)]
#[command(name = "levelfit", version)]
struct Cli {
    /// TOML experiment configuration; built-in defaults when omitted.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Output directory.
    #[arg(long, global = true, default_value = "out")]
    out: PathBuf,
    /// Override the configured root seed.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run MAP-Elites for each agent and write archives and heatmaps.
    Evolve {
        /// Agents to evolve (default: the configured roster).
        #[arg(long = "agent", value_delimiter = ',')]
        agents: Vec<String>,
    },
    /// Adapt every target agent on every prior archive.
    Matrix {
        /// Prior archives, by agent (default: the configured roster).
        #[arg(long, value_delimiter = ',')]
        priors: Vec<String>,
        /// Target agents (default: the configured roster).
        #[arg(long, value_delimiter = ',')]
        targets: Vec<String>,
        /// Directory with archive_<agent>.json files (default: --out).
        #[arg(long)]
        archives: Option<PathBuf>,
        /// Skip the random-performance baseline row.
        #[arg(long)]
        no_baseline: bool,
    },
    /// Count elites per difficulty band.
    Bands {
        /// Archive files; defaults to every roster archive in --out.
        archives: Vec<PathBuf>,
    },
    /// Evaluate one agent on one level file.
    Eval {
        /// ASCII level file.
        #[arg(long)]
        level: PathBuf,
        /// Agent name, e.g. OSLA.
        #[arg(long)]
        agent: String,
        /// Episodes to play (default: adapt.rollouts).
        #[arg(long)]
        rollouts: Option<u32>,
    },
    /// Check a level file and print its behavior descriptor.
    ValidateLevel {
        /// ASCII level file.
        level: PathBuf,
    },
    /// Print the resolved configuration as TOML.
    ShowConfig,
}

fn agents_or_roster(names: &[String], config: &ExperimentConfig) -> Result<Vec<AgentKind>, CliError> {
    if names.is_empty() {
        return Ok(config.agents.clone());
    }
    names.iter().map(|n| parse_agent(n)).collect()
}

fn print_json<T: serde::Serialize>(value: &T) {
    println!("{}", serde_json::to_string(value).expect("serializable"));
}

fn run(cli: Cli) -> Result<(), CliError> {
    let mut config = match &cli.config {
        Some(path) => ExperimentConfig::load(path)?,
        None => ExperimentConfig::default(),
    };
    if let Some(seed) = cli.seed {
        config.seed = seed;
    }
    if let Some(jobs) = cli.jobs {
        rayon::ThreadPoolBuilder::new()
            .num_threads(jobs.max(1))
            .build_global()
            .map_err(|e| CliError::Usage(e.to_string()))?;
    }

    match cli.command {
        Command::Evolve { agents } => {
            for agent in agents_or_roster(&agents, &config)? {
                let out = cmd_evolve(&config, agent, &cli.out)?;
                print_json(&serde_json::json!({
                    "agent": agent.name(),
                    "elites": out.archive.len(),
                    "archive": out.archive_path,
                }));
            }
        }
        Command::Matrix {
            priors,
            targets,
            archives,
            no_baseline,
        } => {
            let request = MatrixRequest {
                priors: agents_or_roster(&priors, &config)?,
                targets: agents_or_roster(&targets, &config)?,
                archive_dir: archives.unwrap_or_else(|| cli.out.clone()),
                baseline: config.matrix.baseline && !no_baseline,
            };
            let out = cmd_matrix(&config, &request, &cli.out)?;
            for cell in &out.cells {
                print_json(cell);
            }
        }
        Command::Bands { archives } => {
            let paths = if archives.is_empty() {
                config.agents.iter().map(|a| archive_path(&cli.out, a.name())).collect()
            } else {
                archives
            };
            print!("{}", cmd_bands(&config, &paths, Some(&cli.out))?);
        }
        Command::Eval { level, agent, rollouts } => {
            let rollouts = rollouts.unwrap_or(config.adapt.rollouts);
            print_json(&cmd_eval(&config, &level, parse_agent(&agent)?, rollouts, config.seed)?);
        }
        Command::ValidateLevel { level } => print_json(&cmd_validate_level(&level)?),
        Command::ShowConfig => print!("{}", config.to_toml()),
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            // --help and --version
            print!("{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let err = CliError::Usage(e.to_string().trim().to_string());
            eprintln!("{}", err.to_json());
            return ExitCode::from(2);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("{}", e.to_json());
            ExitCode::FAILURE
        }
    }
}
