//! Command-line flags and their translation into a [`RunConfig`].

use std::path::PathBuf;

use anyhow::Result;
use clap::{Args, Parser, Subcommand};
use twocore::ball::Mode;
use twocore::generators::{parse_generator_arg, GeneratorSpec};

use crate::config::{Command, Format, RunConfig, UsageError};

#[derive(Parser, Debug)]
#[command(
    name = "twocore",
    version,
    about = "Local 2-core estimation on percolated random graphs"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: CliCommand,
}

#[derive(Subcommand, Debug)]
pub enum CliCommand {
    /// Generate a graph and write its edge list.
    Gen(Flags),
    /// Percolate a graph at --p and write the edge list.
    Percolate(Flags),
    /// Exact 2-core fractions.
    Exact(Flags),
    /// Sampling estimate of the 2-core fractions.
    Estimate(Flags),
    /// Estimates along a grid of percolation probabilities.
    Sweep(Flags),
    /// Cut search, path counts, forest coloring and the sprinkling experiment.
    Diagnose(Flags),
    /// Poisson branching-process limits.
    Oracle(Flags),
    /// Run a JSON configuration file.
    Run {
        #[arg(long)]
        config: PathBuf,
    },
}

#[derive(Args, Debug, Default)]
pub struct Flags {
    /// Generator, e.g. `er:n=1000,c=4` or a JSON spec.
    #[arg(long = "gen")]
    pub generator: Option<String>,
    /// Edge-list file.
    #[arg(long)]
    pub input: Option<PathBuf>,
    /// Master seed.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub p: Option<f64>,
    /// Comma-separated percolation probabilities.
    #[arg(long, value_delimiter = ',')]
    pub p_grid: Option<Vec<f64>>,
    /// Explicit coupling seed.
    #[arg(long)]
    pub coupling_seed: Option<u64>,
    /// Ball size cap.
    #[arg(long = "K")]
    pub k: Option<usize>,
    /// Sample count.
    #[arg(long = "T")]
    pub t: Option<u64>,
    /// Target accuracy; sets T by the Hoeffding bound.
    #[arg(long)]
    pub epsilon: Option<f64>,
    #[arg(long, value_parser = parse_mode)]
    pub mode: Option<Mode>,
    #[arg(long)]
    pub with_exact: bool,
    #[arg(long)]
    pub without_exact: bool,
    /// Per-sample indicators as CSV.
    #[arg(long)]
    pub samples_csv: Option<PathBuf>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Plot table with oracle columns (sweep).
    #[arg(long)]
    pub plot_data: Option<PathBuf>,
    #[arg(long)]
    pub cut_epsilon: Option<f64>,
    #[arg(long)]
    pub iters: Option<usize>,
    #[arg(long)]
    pub ell: Option<usize>,
    /// Two vertex-set files.
    #[arg(long, num_args = 2, value_names = ["A", "B"])]
    pub paths: Option<Vec<PathBuf>>,
    /// Seed-set file for forest coloring.
    #[arg(long)]
    pub forest_h: Option<PathBuf>,
    #[arg(long)]
    pub p_low: Option<f64>,
    #[arg(long)]
    pub p_high: Option<f64>,
    /// Seed subgraph size for the sprinkling experiment.
    #[arg(long = "h-size")]
    pub h_size: Option<usize>,
    #[arg(long)]
    pub lambda: Option<f64>,
}

fn parse_mode(s: &str) -> std::result::Result<Mode, String> {
    s.parse().map_err(|e: twocore::Error| e.to_string())
}

fn parse_generator(arg: &str, seed: u64) -> Result<GeneratorSpec> {
    let spec = if arg.trim_start().starts_with('{') {
        let mut value: serde_json::Value = serde_json::from_str(arg)
            .map_err(|e| UsageError(format!("bad generator JSON: {e}")))?;
        if let Some(obj) = value.as_object_mut() {
            obj.entry("seed").or_insert(seed.into());
        }
        serde_json::from_value(value).map_err(|e| UsageError(format!("bad generator JSON: {e}")))?
    } else {
        parse_generator_arg(arg, seed).map_err(|e| UsageError(e.to_string()))?
    };
    Ok(spec)
}

impl Flags {
    pub fn into_config(self, command: Command) -> Result<RunConfig> {
        let mut c = RunConfig::new(command);
        c.master_seed = self.seed;
        c.generator = self
            .generator
            .as_deref()
            .map(|g| parse_generator(g, self.seed))
            .transpose()?;
        c.input = self.input;
        c.percolation.p = self.p;
        c.percolation.p_grid = self.p_grid;
        c.percolation.seed = self.coupling_seed;
        if let Some(k) = self.k {
            c.estimator.k = k;
        }
        c.estimator.t = self.t;
        c.estimator.epsilon = self.epsilon;
        if let Some(m) = self.mode {
            c.estimator.mode = m;
        }
        if self.with_exact && self.without_exact {
            return Err(UsageError("--with-exact and --without-exact conflict".into()).into());
        }
        c.estimator.with_exact = match (self.with_exact, self.without_exact) {
            (true, _) => Some(true),
            (_, true) => Some(false),
            _ => None,
        };
        c.estimator.samples_csv = self.samples_csv;
        c.output.path = self.out;
        c.output.format = self.format;
        c.output.plot_data = self.plot_data;
        c.diagnose.cut_epsilon = self.cut_epsilon;
        if let Some(i) = self.iters {
            c.diagnose.iters = i;
        }
        c.diagnose.ell = self.ell;
        c.diagnose.paths = self.paths.map(|v| {
            let [a, b]: [PathBuf; 2] = v.try_into().expect("clap enforces two values");
            [a, b]
        });
        c.diagnose.forest_h = self.forest_h;
        c.diagnose.p_low = self.p_low;
        c.diagnose.p_high = self.p_high;
        c.diagnose.h_size = self.h_size;
        c.lambda = self.lambda;
        Ok(c)
    }
}

impl CliCommand {
    /// Resolves flags or a config file into a configuration.
    pub fn into_config(self) -> Result<RunConfig> {
        let (command, flags) = match self {
            CliCommand::Run { config } => {
                let text = std::fs::read_to_string(&config)
                    .map_err(|e| UsageError(format!("cannot read {}: {e}", config.display())))?;
                return RunConfig::from_json(&text);
            }
            CliCommand::Gen(f) => (Command::Gen, f),
            CliCommand::Percolate(f) => (Command::Percolate, f),
            CliCommand::Exact(f) => (Command::Exact, f),
            CliCommand::Estimate(f) => (Command::Estimate, f),
            CliCommand::Sweep(f) => (Command::Sweep, f),
            CliCommand::Diagnose(f) => (Command::Diagnose, f),
            CliCommand::Oracle(f) => (Command::Oracle, f),
        };
        flags.into_config(command)
    }
}
