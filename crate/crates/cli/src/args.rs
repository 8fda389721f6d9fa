use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use wmv_core::sensitivity::SweepMode;

use crate::config::{CommandKind, ExperimentConfig, Format, GridSpec};
use crate::error::{CliError, CliResult};

#[derive(Debug, Parser)]
#[command(name = "wmv", version, about = "Correctness and stability of weighted majority voting")]
pub struct Cli {
    /// Read the whole experiment from a JSON config file.
    #[arg(long, global = true, value_name = "FILE")]
    pub config: Option<PathBuf>,

    /// Write the effective config as JSON before running.
    #[arg(long, global = true, value_name = "FILE")]
    pub save_config: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Option<Command>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Probability of a correct decision, ω(trust, truth).
    Correctness(RunArgs),
    /// Correctness along one coordinate (or an identical group).
    Sweep(RunArgs),
    /// Correctness over two coordinates.
    Surface(RunArgs),
    /// Believed minus achieved correctness under unbiased random trustworthiness.
    Soc(RunArgs),
    /// Stability of optimality with its bounds.
    Soo(RunArgs),
    /// Both SoO bounds for given support half-widths.
    Bounds(RunArgs),
    /// Predicted breakpoints of a direct-mode curve.
    Breakpoints(RunArgs),
    /// Regenerate the data behind a figure.
    Figure(RunArgs),
}

#[derive(Debug, Clone, Args, Default)]
pub struct RunArgs {
    /// Trust values p̂, comma separated.
    #[arg(long, value_delimiter = ',')]
    pub trust: Option<Vec<f64>>,
    /// Trustworthiness values p, comma separated (defaults to trust).
    #[arg(long, value_delimiter = ',')]
    pub truth: Option<Vec<f64>>,
    /// Sweep regime: direct, truth_varying or trust_varying.
    #[arg(long, value_parser = |s: &str| s.parse::<SweepMode>().map_err(|e| e.to_string()))]
    pub mode: Option<SweepMode>,
    /// 1-based source index (two, comma separated, for surfaces).
    #[arg(long, value_delimiter = ',')]
    pub index: Option<Vec<usize>>,
    /// Grid as min,max,points.
    #[arg(long)]
    pub grid: Option<GridSpec>,
    /// Second surface axis as min,max,points (defaults to --grid).
    #[arg(long)]
    pub grid2: Option<GridSpec>,
    /// Distribution spec, e.g. extreme:delta=0.05 or beta:var=0.01.
    #[arg(long)]
    pub dist: Option<String>,
    /// Support half-widths, one value or one per source.
    #[arg(long, value_delimiter = ',')]
    pub delta: Option<Vec<f64>>,
    /// Size of an identical group occupying the first sources.
    #[arg(long)]
    pub identical: Option<usize>,
    /// Enumerate the support exactly.
    #[arg(long)]
    pub exact: bool,
    /// Monte Carlo replicates.
    #[arg(long)]
    pub runs: Option<u64>,
    /// Seed for Monte Carlo streams.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Output file (directory for `figure`).
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Figure preset id (fig1a .. fig7d).
    #[arg(long)]
    pub preset: Option<String>,
}

impl RunArgs {
    pub fn into_config(self, command: CommandKind) -> ExperimentConfig {
        ExperimentConfig {
            command,
            trust: self.trust.unwrap_or_default(),
            truth: self.truth,
            mode: self.mode,
            indices: self.index.unwrap_or_default(),
            grid: self.grid,
            grid2: self.grid2,
            dist: self.dist,
            delta: self.delta,
            identical: self.identical,
            exact: self.exact,
            runs: self.runs,
            seed: self.seed,
            preset: self.preset,
            out: self.out,
            format: self.format.unwrap_or_default(),
        }
    }
}

impl Cli {
    /// Resolve the effective config from a config file and/or flags.
    pub fn into_config(self) -> CliResult<ExperimentConfig> {
        match (self.config, self.command) {
            (Some(path), None) => {
                let text = std::fs::read_to_string(&path).map_err(|e| CliError::io(&path, e))?;
                ExperimentConfig::from_json(&text)
            }
            (None, Some(cmd)) => {
                let (kind, args) = match cmd {
                    Command::Correctness(a) => (CommandKind::Correctness, a),
                    Command::Sweep(a) => (CommandKind::Sweep, a),
                    Command::Surface(a) => (CommandKind::Surface, a),
                    Command::Soc(a) => (CommandKind::Soc, a),
                    Command::Soo(a) => (CommandKind::Soo, a),
                    Command::Bounds(a) => (CommandKind::Bounds, a),
                    Command::Breakpoints(a) => (CommandKind::Breakpoints, a),
                    Command::Figure(a) => (CommandKind::Figure, a),
                };
                Ok(args.into_config(kind))
            }
            (Some(_), Some(_)) => Err(CliError::invalid(
                "config",
                "give either --config or a subcommand, not both",
            )),
            (None, None) => Err(CliError::invalid("command", "missing subcommand")),
        }
    }
}
