//! Monte Carlo estimation of the 2-core fractions from local explorations.
//!
//! Each sample draws a uniform vertex, explores the largest full-level ball of
//! at most `K` vertices around it, and classifies the root with protected
//! peeling. Sample `t` is keyed by `(seed, t)`, and samples are summed as
//! integers, so a report does not depend on the number of worker threads.

use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::ball::{classify, Explorer, Mode};
use crate::error::{invalid, Result};
use crate::generators::GeneratorSpec;
use crate::graph::Graph;
use crate::oracle::{er_branching_oracle, two_core, CoreFractions};
use crate::percolation::draw_coupling;
use crate::rng::stream_rng;

/// `T = ceil((8 / eps^2) ln(8 / eps))`.
///
/// Two-sided Hoeffding with deviation `eps/4`: `2 exp(-2T(eps/4)^2) <= eps/4`.
pub fn sample_size(epsilon: f64) -> Result<u64> {
    if !(epsilon > 0.0 && epsilon < 1.0) {
        return Err(invalid(format!("epsilon = {epsilon} must lie in (0, 1)")));
    }
    Ok(((8.0 / (epsilon * epsilon)) * (8.0 / epsilon).ln()).ceil() as u64)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EstimateParams {
    #[serde(rename = "K")]
    pub k: usize,
    #[serde(rename = "T")]
    pub t: u64,
    pub seed: u64,
    pub mode: Mode,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Sample {
    pub vertex: usize,
    #[serde(rename = "I2")]
    pub core: bool,
    #[serde(rename = "I2inf")]
    pub giant: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ExactComparison {
    pub frac_c2: f64,
    pub frac_c2max: f64,
    pub gap_c2: f64,
    pub gap_c2max: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EstimateReport {
    #[serde(rename = "I2")]
    pub i2: f64,
    #[serde(rename = "I2inf")]
    pub i2inf: f64,
    pub core_hits: u64,
    pub giant_hits: u64,
    #[serde(rename = "T")]
    pub t: u64,
    #[serde(rename = "K")]
    pub k: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub epsilon: Option<f64>,
    pub seed: u64,
    pub mode: Mode,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub per_sample: Option<Vec<Sample>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exact_comparison: Option<ExactComparison>,
}

impl EstimateReport {
    pub fn compare_exact(&mut self, exact: &CoreFractions) {
        self.exact_comparison = Some(ExactComparison {
            frac_c2: exact.frac_c2,
            frac_c2max: exact.frac_c2max,
            gap_c2: (self.i2 - exact.frac_c2).abs(),
            gap_c2max: (self.i2inf - exact.frac_c2max).abs(),
        });
    }
}

/// Draws sample `t`: its vertex and its classification.
pub fn draw_sample(g: &Graph, explorer: &mut Explorer, params: &EstimateParams, t: u64) -> Sample {
    let mut rng = stream_rng(params.seed, t);
    let vertex = rng.random_range(0..g.n());
    let ball = explorer
        .explore_capped(g, vertex, params.k)
        .expect("parameters validated before sampling");
    let c = classify(&ball, params.mode);
    Sample {
        vertex,
        core: c.core,
        giant: c.giant,
    }
}

pub fn estimate(g: &Graph, params: EstimateParams) -> Result<EstimateReport> {
    estimate_with(g, params, false)
}

/// Like [`estimate`], optionally keeping the per-sample indicators.
pub fn estimate_with(
    g: &Graph,
    params: EstimateParams,
    keep_samples: bool,
) -> Result<EstimateReport> {
    if g.n() == 0 {
        return Err(invalid("cannot sample from an empty graph"));
    }
    if params.k < 2 {
        return Err(invalid(format!(
            "size cap K = {} must be at least 2",
            params.k
        )));
    }
    if params.t == 0 {
        return Err(invalid("sample count T must be at least 1"));
    }
    let n = g.n();
    let samples: Vec<Sample> = (0..params.t)
        .into_par_iter()
        .map_init(|| Explorer::new(n), |ex, t| draw_sample(g, ex, &params, t))
        .collect();
    let core_hits = samples.iter().filter(|s| s.core).count() as u64;
    let giant_hits = samples.iter().filter(|s| s.giant).count() as u64;
    debug_assert!(samples.iter().all(|s| s.core || !s.giant));
    Ok(EstimateReport {
        i2: core_hits as f64 / params.t as f64,
        i2inf: giant_hits as f64 / params.t as f64,
        core_hits,
        giant_hits,
        t: params.t,
        k: params.k,
        epsilon: None,
        seed: params.seed,
        mode: params.mode,
        per_sample: keep_samples.then_some(samples),
        exact_comparison: None,
    })
}

/// One row of a percolation sweep.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SweepRow {
    pub p: f64,
    #[serde(rename = "I2")]
    pub i2: f64,
    #[serde(rename = "I2inf")]
    pub i2inf: f64,
    pub frac_c2: Option<f64>,
    pub frac_c2max: Option<f64>,
    /// Branching-process limits at `lambda = c p`, for Poisson models.
    pub zeta2_oracle: Option<f64>,
    pub zeta2inf_oracle: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepConfig {
    pub coupling_seed: u64,
    pub estimate: EstimateParams,
    pub with_exact: bool,
}

/// Estimates along `p_grid` on one base graph and one percolation coupling.
pub fn sweep_graph(
    base: &Graph,
    p_grid: &[f64],
    config: &SweepConfig,
    poisson_mean: Option<f64>,
) -> Result<Vec<SweepRow>> {
    if let Some(&p) = p_grid.iter().find(|p| !(0.0..=1.0).contains(*p)) {
        return Err(invalid(format!("grid value p = {p} is not a probability")));
    }
    let coupling = draw_coupling(base, config.coupling_seed);
    p_grid
        .iter()
        .map(|&p| {
            let g = coupling.percolate_at(p)?;
            let report = estimate(&g, config.estimate)?;
            let exact = config.with_exact.then(|| two_core(&g).fractions);
            // On a Poisson limit tree every 2-core vertex is in the infinite part.
            let limits = poisson_mean
                .map(|c| er_branching_oracle(c * p))
                .transpose()?;
            Ok(SweepRow {
                p,
                i2: report.i2,
                i2inf: report.i2inf,
                frac_c2: exact.map(|e| e.frac_c2),
                frac_c2max: exact.map(|e| e.frac_c2max),
                zeta2_oracle: limits.map(|l| l.zeta2inf),
                zeta2inf_oracle: limits.map(|l| l.zeta2inf),
            })
        })
        .collect()
}

/// Generates the base graph from `spec` and sweeps it.
pub fn sweep(spec: &GeneratorSpec, p_grid: &[f64], config: &SweepConfig) -> Result<Vec<SweepRow>> {
    spec.validate()?;
    let base = spec.generate()?;
    sweep_graph(&base, p_grid, config, spec.poisson_mean_degree())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named;

    fn params(k: usize, t: u64, seed: u64) -> EstimateParams {
        EstimateParams {
            k,
            t,
            seed,
            mode: Mode::Semantic,
        }
    }

    #[test]
    fn sample_size_formula() {
        assert_eq!(sample_size(0.02).unwrap(), 119_830);
        assert_eq!(sample_size(0.1).unwrap(), 3_506);
        assert_eq!(sample_size(0.5).unwrap(), 89);
        assert!(sample_size(0.0).is_err());
        assert!(sample_size(1.0).is_err());
        assert!(sample_size(f64::NAN).is_err());
    }

    #[test]
    fn cycle_is_all_core() {
        let r = estimate(&named::cycle(1000), params(20, 500, 3)).unwrap();
        assert_eq!((r.i2, r.i2inf), (1.0, 1.0));
    }

    #[test]
    fn argument_errors() {
        assert!(estimate(&Graph::empty(0), params(20, 5, 1)).is_err());
        assert!(estimate(&named::cycle(5), params(1, 5, 1)).is_err());
        assert!(estimate(&named::cycle(5), params(3, 0, 1)).is_err());
    }

    #[test]
    fn per_sample_totals_match() {
        let g = crate::generators::erdos_renyi(2000, 2.0, 1).unwrap();
        let r = estimate_with(&g, params(50, 1000, 9), true).unwrap();
        let s = r.per_sample.as_ref().unwrap();
        assert_eq!(s.len(), 1000);
        assert_eq!(s.iter().filter(|x| x.core).count() as u64, r.core_hits);
        assert_eq!(r.i2, r.core_hits as f64 / 1000.0);
        assert!(r.i2inf <= r.i2);
    }

    #[test]
    fn sweep_edge_rows() {
        let cfg = SweepConfig {
            coupling_seed: 1,
            estimate: params(20, 200, 2),
            with_exact: true,
        };
        let rows = sweep_graph(&named::cycle(1000), &[0.0, 1.0], &cfg, None).unwrap();
        assert_eq!(
            (
                rows[0].i2,
                rows[0].i2inf,
                rows[0].frac_c2,
                rows[0].frac_c2max
            ),
            (0.0, 0.0, Some(0.0), Some(0.0))
        );
        assert_eq!(
            (
                rows[1].i2,
                rows[1].i2inf,
                rows[1].frac_c2,
                rows[1].frac_c2max
            ),
            (1.0, 1.0, Some(1.0), Some(1.0))
        );
        assert!(sweep_graph(&named::cycle(10), &[1.2], &cfg, None).is_err());
    }
}
