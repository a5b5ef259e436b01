use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use ilt::commands::{self, CommandOutput, Outcome, Plot, VerifyRequest};
use ilt::config::{ExperimentConfig, Overrides};
use ilt::games::{GamesOptions, DEFAULT_EXACT_NODES};
use ilt::harness::Perturbation;
use ilt::Error;

#[derive(Args, Clone, Default)]
struct Common {
    /// `key = value` config file; flags take precedence over it
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Named seed (k1, k2, k3, c4, c5, p4, p5, petersen, ...) or graph file
    #[arg(long, global = true)]
    seed_graph: Option<String>,
    /// Number of steps
    #[arg(long = "t", global = true)]
    t: Option<usize>,
    /// ILT(p) density parameter in [0, 1]
    #[arg(long, global = true)]
    delta: Option<f64>,
    #[arg(long, global = true)]
    rng_seed: Option<u64>,
    /// Independent runs for sweeps
    #[arg(long, global = true)]
    seeds: Option<usize>,
    #[arg(long, global = true)]
    output_dir: Option<PathBuf>,
    /// Node cap for generated graphs (also ILT_BUDGET_NODES)
    #[arg(long, global = true)]
    max_nodes: Option<u64>,
    #[arg(long, global = true)]
    max_edges: Option<u64>,
    /// Largest order given a dense eigensolve
    #[arg(long, global = true)]
    dense_nodes: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Write G_0..G_t (or H_0..H_T) with lineage sidecars
    Generate,
    /// Sizes, distances, clustering per step
    Metrics,
    /// Laplacian and adjacency spectra per step
    Spectral,
    /// Domination number, cop number and automorphism group per step
    Games {
        /// Largest order solved exactly
        #[arg(long, default_value_t = DEFAULT_EXACT_NODES)]
        max_n_exact: usize,
        #[arg(long, default_value_t = 3)]
        k_max: usize,
    },
    /// Run the verification harness
    Verify {
        /// Check ids or criterion numbers, comma separated
        #[arg(long, value_delimiter = ',')]
        only: Vec<String>,
        /// Fault injection mode (add-edge)
        #[arg(long)]
        perturb: Option<Perturbation>,
        /// Print the report as JSON instead of a table
        #[arg(long)]
        json: bool,
        /// List check ids and exit
        #[arg(long)]
        list: bool,
    },
    /// Per-step metrics CSV and plots, or per-seed ILT(p) volumes with --delta
    Sweep {
        /// densification and/or degree-dist, comma separated
        #[arg(long, value_delimiter = ',')]
        plot: Vec<Plot>,
    },
    /// Exact degree histogram of G_t from the degree recurrence
    DegreeDist {
        /// Also write degree_dist.svg
        #[arg(long)]
        plot: bool,
    },
}

/// Iterated Local Transitivity graphs: generation, metrics, spectra, games
/// and self-verification.
#[derive(Parser)]
#[command(name = "ilt", version)]
struct Root {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

fn layered(common: &Common) -> Result<Overrides, Error> {
    let flags = Overrides {
        seed_graph: common.seed_graph.clone(),
        t_max: common.t,
        delta: common.delta,
        rng_seed: common.rng_seed,
        seeds_count: common.seeds,
        max_nodes: common.max_nodes,
        max_edges: common.max_edges,
        dense_nodes: common.dense_nodes,
        output_dir: common.output_dir.clone(),
    };
    Ok(match &common.config {
        Some(path) => Overrides::parse_file(&std::fs::read_to_string(path)?)?.merge(flags),
        None => flags,
    })
}

fn run(root: Root) -> Result<CommandOutput, Error> {
    let layers = layered(&root.common)?;
    let config = ExperimentConfig::from_overrides(layers.clone())?;
    match root.command {
        Command::Generate => commands::generate(&config),
        Command::Metrics => commands::metrics(&config),
        Command::Spectral => commands::spectral(&config),
        Command::Games { max_n_exact, k_max } => {
            let opts = GamesOptions {
                max_nodes: max_n_exact,
                k_max,
                ..Default::default()
            };
            commands::games(&config, &opts)
        }
        Command::Verify { list: true, .. } => Ok(CommandOutput {
            stdout: ilt::harness::check_ids().join("\n") + "\n",
            notes: Vec::new(),
            written: Vec::new(),
            outcome: Outcome::Success,
        }),
        Command::Verify { only, perturb, json, .. } => {
            commands::verify(&config, &layers, &VerifyRequest { only, perturb, json })
        }
        Command::Sweep { plot } => commands::sweep(&config, &plot),
        Command::DegreeDist { plot } => commands::degree_dist(&config, plot),
    }
}

fn main() -> ExitCode {
    let root = match Root::try_parse() {
        Ok(root) => root,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(root) {
        Ok(out) => {
            let _ = std::io::stdout().write_all(out.stdout.as_bytes());
            for note in &out.notes {
                eprintln!("{note}");
            }
            for path in &out.written {
                eprintln!("wrote {}", path.display());
            }
            ExitCode::from(match out.outcome {
                Outcome::Success => 0,
                Outcome::ChecksFailed => 1,
                Outcome::Skipped => 3,
            })
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                Error::InvalidInput(_) | Error::Parse { .. } => 2,
                Error::Budget(_) => 3,
                _ => 1,
            })
        }
    }
}
