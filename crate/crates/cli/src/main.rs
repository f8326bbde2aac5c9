//! `planarstat`: planar statistics and section experiments on Platonic solids.
//!
//! Exit codes are shared by every subcommand: 0 on success, 1 when a
//! verification fails, 2 on usage or configuration errors.

mod figures;
mod output;
mod planes;
mod search;
mod sections;
mod stats;
mod subset;
mod verify;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use planarstat::SolidId;

#[derive(Parser)]
#[command(name = "planarstat", version, about = "Planar statistics of vertex subsets of Platonic solids")]
struct Cli {
    #[command(flatten)]
    config: RunConfig,
    #[command(subcommand)]
    command: Command,
}

/// Options shared by every subcommand.
#[derive(Args, Clone, Debug)]
pub struct RunConfig {
    /// tetrahedron, cube, octahedron, dodecahedron or icosahedron.
    #[arg(long, global = true, default_value = "dodecahedron")]
    pub solid: SolidId,
    /// Directory receiving JSON, CSV and SVG output.
    #[arg(long, global = true, default_value = "out")]
    pub out: PathBuf,
    #[arg(long, global = true, default_value_t = 42)]
    pub seed: u64,
    /// Restrict tabular output to one encoding; both are written by default.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Significance level for hypothesis tests.
    #[arg(long, global = true, default_value_t = 0.01)]
    pub alpha: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate vertex-planes and their isometry types.
    Planes,
    /// Planar statistic of one vertex subset.
    Stats(stats::StatsArgs),
    /// Check that two subsets are homometric but not congruent.
    Verify(verify::VerifyArgs),
    /// Search for homometric non-congruent pairs.
    Search(search::SearchArgs),
    /// Compare section distributions of two truncated solids.
    Sections(sections::SectionsArgs),
    /// Draw Schlegel diagrams, subset highlights and class thumbnails.
    Figures(figures::FiguresArgs),
}

/// Whether the command's checks held.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    Passed,
    Failed,
}

impl Outcome {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Outcome::Passed
        } else {
            Outcome::Failed
        }
    }
}

fn configure_threads() -> anyhow::Result<()> {
    let Ok(value) = std::env::var("PLANARSTAT_THREADS") else {
        return Ok(());
    };
    let threads: usize = value
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| anyhow::anyhow!("PLANARSTAT_THREADS must be a positive integer, got '{value}'"))?;
    rayon::ThreadPoolBuilder::new().num_threads(threads).build_global()?;
    Ok(())
}

fn run(cli: Cli) -> anyhow::Result<Outcome> {
    configure_threads()?;
    let config = cli.config;
    if !(config.alpha > 0.0 && config.alpha < 1.0) {
        anyhow::bail!("--alpha must lie in (0, 1), got {}", config.alpha);
    }
    match cli.command {
        Command::Planes => planes::run(&config),
        Command::Stats(args) => stats::run(&config, &args),
        Command::Verify(args) => verify::run(&config, &args),
        Command::Search(args) => search::run(&config, &args),
        Command::Sections(args) => sections::run(&config, &args),
        Command::Figures(args) => figures::run(&config, &args),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(Outcome::Passed) => ExitCode::SUCCESS,
        Ok(Outcome::Failed) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
