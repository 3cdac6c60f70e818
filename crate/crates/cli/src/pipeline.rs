//! Executes a validated [`RunConfig`].

use std::fs::File;
use std::io::{BufReader, Write};
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use serde::Serialize;
use twocore::diagnostics::{
    color_forest, edge_disjoint_paths, find_balanced_cut, path_length, seed_core_experiment,
    sprinkling_bound, verify_upstream_bound, CutWitness, SeedCoreReport, SprinklingBound,
    UpstreamReport,
};
use twocore::estimator::{estimate_with, sample_size, sweep_graph, EstimateParams, SweepConfig};
use twocore::graph::Graph;
use twocore::graph::{parse_edge_list, write_edge_list};
use twocore::oracle::{c2_ell_set, er_branching_oracle, two_core};
use twocore::percolation::{draw_coupling, sprinkle_beta};
use twocore::rng::derive_seed;

use crate::config::{Command, Format, RunConfig};
use crate::plot::{emit_plot_data, sweep_csv, write_atomic};

/// Seeds actually used by a run, recorded in provenance sidecars.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Seeds {
    pub master: u64,
    pub generator: Option<u64>,
    pub coupling: u64,
    pub estimator: u64,
    pub cut: u64,
    pub experiment: u64,
}

impl Seeds {
    pub fn of(cfg: &RunConfig) -> Self {
        let m = cfg.master_seed;
        Seeds {
            master: m,
            generator: cfg.generator.as_ref().map(|g| g.seed),
            coupling: cfg.percolation.seed.unwrap_or_else(|| derive_seed(m, 1)),
            estimator: cfg.estimator.seed.unwrap_or_else(|| derive_seed(m, 2)),
            cut: derive_seed(m, 3),
            experiment: derive_seed(m, 4),
        }
    }
}

#[derive(Serialize)]
struct Provenance<'a> {
    tool: &'static str,
    version: &'static str,
    artifact: String,
    config: &'a RunConfig,
    seeds: Seeds,
}

#[derive(Debug, Clone, Serialize)]
pub struct ExactReport {
    pub n: usize,
    pub m: usize,
    pub frac_cmax: f64,
    pub frac_c2: f64,
    pub frac_c2max: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ell: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub frac_c2_ell: Option<f64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct OracleReport {
    pub lambda: f64,
    pub zeta: f64,
    pub zeta2inf: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct ForestReport {
    pub ell: usize,
    pub colored_segments: usize,
    pub colored_vertices: usize,
    pub gray_vertices: usize,
    pub upstream: UpstreamReport,
}

#[derive(Debug, Clone, Serialize)]
pub struct DiagnoseReport {
    pub n: usize,
    pub m: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cut: Option<CutWitness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub disjoint_paths: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub forest: Option<ForestReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed_core: Option<SeedCoreReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sprinkling_bound: Option<SprinklingBound>,
}

/// A finished run: the main artifact and the one-line summary.
pub struct Outcome {
    pub bytes: Vec<u8>,
    pub summary: String,
    pub extra_files: Vec<PathBuf>,
}

fn json_bytes<T: Serialize>(value: &T) -> Result<Vec<u8>> {
    let mut v = serde_json::to_vec_pretty(value)?;
    v.push(b'\n');
    Ok(v)
}

/// Whitespace-separated vertex ids; `#` starts a comment.
pub fn read_vertex_set(path: &Path) -> Result<Vec<usize>> {
    let text =
        std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    let mut ids = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap();
        for tok in line.split_whitespace() {
            let id = tok
                .parse()
                .with_context(|| format!("{}:{}: bad vertex id {tok:?}", path.display(), i + 1))?;
            ids.push(id);
        }
    }
    ids.sort_unstable();
    ids.dedup();
    Ok(ids)
}

pub fn load_graph(cfg: &RunConfig) -> Result<Graph> {
    if let Some(spec) = &cfg.generator {
        return Ok(spec.generate()?);
    }
    let path = cfg.input.as_ref().expect("validated");
    let file = File::open(path).with_context(|| format!("cannot open {}", path.display()))?;
    let (g, _) = parse_edge_list(BufReader::new(file))
        .with_context(|| format!("reading {}", path.display()))?;
    Ok(g)
}

fn maybe_percolate(cfg: &RunConfig, seeds: &Seeds, g: Graph) -> Result<Graph> {
    match cfg.percolation.p {
        Some(p) => Ok(draw_coupling(&g, seeds.coupling).percolate_at(p)?),
        None => Ok(g),
    }
}

fn sample_count(cfg: &RunConfig) -> Result<u64> {
    match cfg.estimator.t {
        Some(t) => Ok(t),
        None => Ok(sample_size(cfg.estimator.epsilon.expect("validated"))?),
    }
}

/// Runs the pipeline and writes every artifact; returns the summary line.
pub fn run(cfg: &RunConfig) -> Result<String> {
    let outcome = execute(cfg)?;
    let seeds = Seeds::of(cfg);
    match &cfg.output.path {
        Some(path) => {
            write_atomic(path, &outcome.bytes)?;
            write_provenance(path, cfg, seeds)?;
        }
        None => std::io::stdout().write_all(&outcome.bytes)?,
    }
    for extra in &outcome.extra_files {
        write_provenance(extra, cfg, seeds)?;
    }
    Ok(outcome.summary)
}

fn write_provenance(artifact: &Path, cfg: &RunConfig, seeds: Seeds) -> Result<()> {
    let mut name = artifact.as_os_str().to_owned();
    name.push(".provenance.json");
    let prov = Provenance {
        tool: "twocore",
        version: env!("CARGO_PKG_VERSION"),
        artifact: artifact
            .file_name()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_default(),
        config: cfg,
        seeds,
    };
    write_atomic(Path::new(&name), &json_bytes(&prov)?)
}

/// Computes the main artifact in memory, writing only side files.
pub fn execute(cfg: &RunConfig) -> Result<Outcome> {
    cfg.validate()?;
    let seeds = Seeds::of(cfg);
    let mut extra_files = Vec::new();
    let (bytes, summary) = match cfg.command {
        Command::Oracle => {
            let lambda = cfg.lambda.or_else(|| cfg.oracle_mean()).expect("validated");
            let l = er_branching_oracle(lambda)?;
            let r = OracleReport {
                lambda,
                zeta: l.zeta,
                zeta2inf: l.zeta2inf,
            };
            (
                json_bytes(&r)?,
                format!(
                    "oracle: lambda={lambda} zeta={:.6} zeta2inf={:.6}",
                    r.zeta, r.zeta2inf
                ),
            )
        }
        Command::Gen | Command::Percolate => {
            let g = maybe_percolate(cfg, &seeds, load_graph(cfg)?)?;
            let mut bytes = Vec::new();
            write_edge_list(&g, &mut bytes)?;
            (bytes, format!("{}: n={} m={}", cfg.command, g.n(), g.m()))
        }
        Command::Exact => {
            let g = maybe_percolate(cfg, &seeds, load_graph(cfg)?)?;
            let f = two_core(&g).fractions;
            let ell = cfg.diagnose.ell;
            let frac_c2_ell = match ell {
                Some(l) if g.n() > 0 => {
                    let set = c2_ell_set(&g, l)?;
                    Some(set.iter().filter(|&&b| b).count() as f64 / g.n() as f64)
                }
                _ => None,
            };
            let r = ExactReport {
                n: g.n(),
                m: g.m(),
                frac_cmax: f.frac_cmax,
                frac_c2: f.frac_c2,
                frac_c2max: f.frac_c2max,
                ell,
                frac_c2_ell,
            };
            let s = format!(
                "exact: n={} m={} frac_c2={:.6} frac_c2max={:.6}",
                r.n, r.m, r.frac_c2, r.frac_c2max
            );
            (json_bytes(&r)?, s)
        }
        Command::Estimate => {
            let g = maybe_percolate(cfg, &seeds, load_graph(cfg)?)?;
            let est = &cfg.estimator;
            let params = EstimateParams {
                k: est.k,
                t: sample_count(cfg)?,
                seed: seeds.estimator,
                mode: est.mode,
            };
            let mut report = estimate_with(&g, params, est.samples_csv.is_some())?;
            report.epsilon = est.epsilon;
            if est.with_exact.unwrap_or(false) {
                report.compare_exact(&two_core(&g).fractions);
            }
            if let Some(path) = &est.samples_csv {
                let mut w = csv::WriterBuilder::new()
                    .terminator(csv::Terminator::Any(b'\n'))
                    .from_writer(Vec::new());
                w.write_record(["vertex", "I2", "I2inf"])?;
                for s in report.per_sample.take().unwrap_or_default() {
                    w.serialize((s.vertex, u8::from(s.core), u8::from(s.giant)))?;
                }
                write_atomic(path, &w.into_inner()?)?;
                extra_files.push(path.clone());
            }
            let s = format!(
                "estimate: n={} I2={} I2inf={} T={} K={} mode={:?}",
                g.n(),
                report.i2,
                report.i2inf,
                report.t,
                report.k,
                report.mode
            );
            (json_bytes(&report)?, s)
        }
        Command::Sweep => {
            let base = load_graph(cfg)?;
            let est = &cfg.estimator;
            let sweep_cfg = SweepConfig {
                coupling_seed: seeds.coupling,
                estimate: EstimateParams {
                    k: est.k,
                    t: sample_count(cfg)?,
                    seed: seeds.estimator,
                    mode: est.mode,
                },
                with_exact: est.with_exact.unwrap_or(true),
            };
            let grid = cfg.percolation.p_grid.as_deref().expect("validated");
            let poisson = cfg.generator.as_ref().and_then(|s| s.poisson_mean_degree());
            let rows = sweep_graph(&base, grid, &sweep_cfg, poisson)?;
            if let Some(path) = &cfg.output.plot_data {
                emit_plot_data(&rows, path)?;
                extra_files.push(path.clone());
            }
            let bytes = match cfg.output.format.unwrap_or(Format::Csv) {
                Format::Csv => sweep_csv(&rows)?,
                Format::Json => json_bytes(&rows)?,
            };
            (
                bytes,
                format!(
                    "sweep: n={} rows={} T={}",
                    base.n(),
                    rows.len(),
                    sweep_cfg.estimate.t
                ),
            )
        }
        Command::Diagnose => {
            let g = maybe_percolate(cfg, &seeds, load_graph(cfg)?)?;
            let r = diagnose(cfg, &seeds, &g)?;
            let mut parts = vec![format!("diagnose: n={} m={}", r.n, r.m)];
            if let Some(c) = &r.cut {
                parts.push(format!(
                    "cut crossing={} delta={:.6}",
                    c.crossing, c.delta_level
                ));
            }
            if let Some(p) = r.disjoint_paths {
                parts.push(format!("paths={p}"));
            }
            if let Some(f) = &r.forest {
                parts.push(format!(
                    "upstream violations={}",
                    f.upstream.violations.len()
                ));
            }
            if let Some(s) = &r.seed_core {
                parts.push(format!("post core={}", s.post_two_core_nonempty));
            }
            (json_bytes(&r)?, parts.join(" "))
        }
    };
    Ok(Outcome {
        bytes,
        summary,
        extra_files,
    })
}

fn diagnose(cfg: &RunConfig, seeds: &Seeds, g: &Graph) -> Result<DiagnoseReport> {
    let d = &cfg.diagnose;
    let cut = d
        .cut_epsilon
        .map(|e| find_balanced_cut(g, e, d.iters, seeds.cut))
        .transpose()?;
    let disjoint_paths = match &d.paths {
        Some([a, b]) => Some(edge_disjoint_paths(
            g,
            &read_vertex_set(a)?,
            &read_vertex_set(b)?,
        )?),
        None => None,
    };
    let forest = match &d.forest_h {
        Some(path) => {
            let ell = d.ell.expect("validated");
            let cf = color_forest(g, &read_vertex_set(path)?, ell)?;
            let colored: Vec<_> = cf.final_colored_segments().collect();
            Some(ForestReport {
                ell,
                colored_segments: colored.len(),
                colored_vertices: colored.iter().map(|s| s.vertices.len()).sum(),
                gray_vertices: cf
                    .color
                    .iter()
                    .filter(|c| **c == Some(twocore::diagnostics::Color::Gray))
                    .count(),
                upstream: verify_upstream_bound(&cf),
            })
        }
        None => None,
    };
    let seed_core = match (d.p_low, d.p_high) {
        (Some(lo), Some(hi)) => {
            let ell = d.ell.expect("validated");
            Some(seed_core_experiment(
                g,
                lo,
                hi,
                ell,
                seeds.experiment,
                d.h_size,
            )?)
        }
        _ => None,
    };
    let sprinkling = match (&cut, &seed_core) {
        (Some(c), Some(s)) if c.delta_level > 0.0 => {
            let beta = sprinkle_beta(s.p_low, s.p_high)?;
            let l = path_length(g.average_degree(), c.delta_level)?;
            Some(sprinkling_bound(g.n(), s.ell, c.delta_level, beta, l)?)
        }
        _ => None,
    };
    Ok(DiagnoseReport {
        n: g.n(),
        m: g.m(),
        cut,
        disjoint_paths,
        forest,
        seed_core,
        sprinkling_bound: sprinkling,
    })
}
