use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use litla::config::RunConfig;
use litla::pipeline::{self, Stage};

#[derive(Parser)]
#[command(name = "litla", version, about = "Bibliographic landscape analysis over a records file")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Run configuration (TOML).
    #[arg(long, global = true, default_value = "litla.toml")]
    config: PathBuf,
    /// Overrides the configured output directory.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    /// Overrides the configured seed.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Worker threads for parallel stages.
    #[arg(long, global = true)]
    threads: Option<usize>,
}

#[derive(Subcommand, Clone, Copy)]
enum Command {
    /// Parse, filter and export the knowledge graph.
    Ingest,
    /// Descriptive statistics.
    Stats,
    /// Topic clustering, trends and linkage.
    Topics,
    /// Citation network laws, disruption and backbone.
    Citenet,
    /// Collaboration network structure.
    Collabnet,
    /// Keyword link prediction.
    Predict,
    /// Every stage in dependency order.
    All,
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let mut config = match RunConfig::load(&cli.config) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("litla: {e}");
            return ExitCode::from(2);
        }
    };
    if let Some(out) = cli.output {
        config.output = out;
    }
    if let Some(seed) = cli.seed {
        config.seed = seed;
    }
    let threads = match cli.threads {
        Some(0) => {
            eprintln!("litla: --threads must be at least 1");
            return ExitCode::from(2);
        }
        Some(n) => n,
        None => std::thread::available_parallelism().map_or(1, |n| n.get()),
    };
    if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global() {
        eprintln!("litla: {e}");
        return ExitCode::from(2);
    }
    let stages: Vec<Stage> = match cli.command {
        Command::Ingest => vec![Stage::Ingest],
        Command::Stats => vec![Stage::Stats],
        Command::Topics => vec![Stage::Topics],
        Command::Citenet => vec![Stage::Citenet],
        Command::Collabnet => vec![Stage::Collabnet],
        Command::Predict => vec![Stage::Predict],
        Command::All => Stage::ALL.to_vec(),
    };
    match pipeline::run(&stages, &config, threads) {
        Ok(manifest) => {
            for s in &manifest.stages {
                match &s.error {
                    None => println!("{:<10} ok      {:>6} ms  {} files", s.stage, s.duration_ms, s.outputs.len()),
                    Some(e) => println!("{:<10} FAILED  {:>6} ms  {e}", s.stage, s.duration_ms),
                }
            }
            if manifest.succeeded() { ExitCode::SUCCESS } else { ExitCode::from(1) }
        }
        Err(e) => {
            eprintln!("litla: {e:#}");
            ExitCode::from(1)
        }
    }
}
