//! Run configuration, shared by command-line flags and JSON config files.

use std::fmt;
use std::path::PathBuf;

use serde::{Deserialize, Serialize};
use twocore::ball::Mode;
use twocore::generators::GeneratorSpec;

/// Size cap used when neither flags nor config give one.
pub const DEFAULT_K: usize = 1000;
pub const DEFAULT_CUT_ITERS: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum Command {
    Gen,
    Percolate,
    Exact,
    Estimate,
    Sweep,
    Diagnose,
    Oracle,
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = serde_json::to_value(self).unwrap();
        write!(f, "{}", s.as_str().unwrap())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct PercolationConfig {
    pub p: Option<f64>,
    pub p_grid: Option<Vec<f64>>,
    /// Coupling seed; derived from the master seed when absent.
    pub seed: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct EstimatorConfig {
    #[serde(rename = "K")]
    pub k: usize,
    #[serde(rename = "T")]
    pub t: Option<u64>,
    pub epsilon: Option<f64>,
    pub mode: Mode,
    /// Attach exact fractions; sweeps default to on, estimates to off.
    pub with_exact: Option<bool>,
    /// Sampling seed; derived from the master seed when absent.
    pub seed: Option<u64>,
    pub samples_csv: Option<PathBuf>,
}

impl Default for EstimatorConfig {
    fn default() -> Self {
        EstimatorConfig {
            k: DEFAULT_K,
            t: None,
            epsilon: None,
            mode: Mode::Semantic,
            with_exact: None,
            seed: None,
            samples_csv: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct DiagnoseConfig {
    pub cut_epsilon: Option<f64>,
    pub iters: usize,
    pub ell: Option<usize>,
    /// Two files of vertex ids for an edge-disjoint path count.
    pub paths: Option<[PathBuf; 2]>,
    /// File of seed-set ids for forest coloring.
    pub forest_h: Option<PathBuf>,
    pub p_low: Option<f64>,
    pub p_high: Option<f64>,
    pub h_size: Option<usize>,
}

impl Default for DiagnoseConfig {
    fn default() -> Self {
        DiagnoseConfig {
            cut_epsilon: None,
            iters: DEFAULT_CUT_ITERS,
            ell: None,
            paths: None,
            forest_h: None,
            p_low: None,
            p_high: None,
            h_size: None,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct OutputConfig {
    pub format: Option<Format>,
    pub path: Option<PathBuf>,
    pub plot_data: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub command: Command,
    #[serde(default)]
    pub master_seed: u64,
    #[serde(default)]
    pub generator: Option<GeneratorSpec>,
    #[serde(default)]
    pub input: Option<PathBuf>,
    #[serde(default)]
    pub percolation: PercolationConfig,
    #[serde(default)]
    pub estimator: EstimatorConfig,
    #[serde(default)]
    pub diagnose: DiagnoseConfig,
    #[serde(default)]
    pub lambda: Option<f64>,
    #[serde(default)]
    pub output: OutputConfig,
}

/// A configuration the pipeline refuses to run; maps to exit status 2.
#[derive(Debug)]
pub struct UsageError(pub String);

impl fmt::Display for UsageError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

fn usage(msg: impl Into<String>) -> anyhow::Error {
    UsageError(msg.into()).into()
}

impl RunConfig {
    pub fn new(command: Command) -> Self {
        RunConfig {
            command,
            master_seed: 0,
            generator: None,
            input: None,
            percolation: PercolationConfig::default(),
            estimator: EstimatorConfig::default(),
            diagnose: DiagnoseConfig::default(),
            lambda: None,
            output: OutputConfig::default(),
        }
    }

    pub fn from_json(text: &str) -> anyhow::Result<Self> {
        serde_json::from_str(text).map_err(|e| usage(format!("bad config: {e}")))
    }

    /// Checks the cross-field rules that flags alone cannot express.
    pub fn validate(&self) -> anyhow::Result<()> {
        let needs_graph = self.command != Command::Oracle;
        match (&self.generator, &self.input) {
            (Some(_), Some(_)) => {
                return Err(usage("give either a generator or an input file, not both"))
            }
            (None, None) if needs_graph => {
                return Err(usage(
                    "a generator (--gen) or input file (--input) is required",
                ))
            }
            _ => {}
        }
        if let Some(spec) = &self.generator {
            spec.validate().map_err(|e| usage(e.to_string()))?;
        }
        let prob = |name: &str, p: Option<f64>| match p {
            Some(p) if !(0.0..=1.0).contains(&p) => {
                Err(usage(format!("{name} = {p} is not a probability")))
            }
            _ => Ok(()),
        };
        prob("p", self.percolation.p)?;
        prob("p_low", self.diagnose.p_low)?;
        prob("p_high", self.diagnose.p_high)?;
        for &p in self.percolation.p_grid.iter().flatten() {
            prob("grid value", Some(p))?;
        }
        if self.percolation.p.is_some() && self.percolation.p_grid.is_some() {
            return Err(usage("give either p or a p grid, not both"));
        }
        let est = &self.estimator;
        if matches!(self.command, Command::Estimate | Command::Sweep) {
            match (est.t, est.epsilon) {
                (Some(_), Some(_)) => return Err(usage("give either T or epsilon, not both")),
                (None, None) => return Err(usage("one of T or epsilon is required")),
                (Some(0), _) => return Err(usage("T must be at least 1")),
                (_, Some(e)) if !(e > 0.0 && e < 1.0) => {
                    return Err(usage(format!("epsilon = {e} must lie in (0, 1)")))
                }
                _ => {}
            }
            if est.k < 2 {
                return Err(usage("K must be at least 2"));
            }
        }
        match self.command {
            Command::Sweep
                if self
                    .percolation
                    .p_grid
                    .as_ref()
                    .is_none_or(|g| g.is_empty()) =>
            {
                Err(usage("sweep needs a nonempty p grid (--p-grid)"))
            }
            Command::Percolate if self.percolation.p.is_none() => Err(usage("percolate needs --p")),
            Command::Oracle if self.lambda.is_none() && self.oracle_mean().is_none() => Err(usage(
                "oracle needs --lambda, or an Erdős–Rényi generator together with --p",
            )),
            Command::Diagnose => self.validate_diagnose(),
            _ => Ok(()),
        }
    }

    fn validate_diagnose(&self) -> anyhow::Result<()> {
        let d = &self.diagnose;
        if let Some(e) = d.cut_epsilon {
            if !(e > 0.0 && e < 0.5) {
                return Err(usage(format!("cut epsilon = {e} must lie in (0, 1/2)")));
            }
            if d.iters == 0 {
                return Err(usage("iters must be at least 1"));
            }
        }
        if d.p_low.is_some() != d.p_high.is_some() {
            return Err(usage("p_low and p_high go together"));
        }
        if let (Some(lo), Some(hi)) = (d.p_low, d.p_high) {
            if lo >= hi {
                return Err(usage("p_low must be below p_high"));
            }
            if d.ell.is_none_or(|l| l < 2) {
                return Err(usage("the sprinkling experiment needs --ell >= 2"));
            }
        }
        if d.forest_h.is_some() && d.ell.is_none_or(|l| l < 1) {
            return Err(usage("forest coloring needs --ell >= 1"));
        }
        let any = d.cut_epsilon.is_some()
            || d.paths.is_some()
            || d.forest_h.is_some()
            || d.p_low.is_some();
        if !any {
            return Err(usage(
                "diagnose needs at least one of --cut-epsilon, --paths, --forest-h, --p-low/--p-high",
            ));
        }
        Ok(())
    }

    /// `lambda = c p` for an Erdős–Rényi generator with a fixed `p`.
    pub fn oracle_mean(&self) -> Option<f64> {
        let c = self.generator.as_ref()?.poisson_mean_degree()?;
        Some(c * self.percolation.p.unwrap_or(1.0))
    }
}
