//! Edge percolation with a monotone coupling across `p`, and sprinkling.

use crate::error::{invalid, Result};
use crate::graph::Graph;
use crate::rng::keyed_uniforms;

/// One uniform weight per base edge; thresholding the weights at `p` gives
/// `G(p)`, so all `G(p)` drawn from one coupling are nested.
#[derive(Debug, Clone)]
pub struct PercolationCoupling<'g> {
    base: &'g Graph,
    edges: Vec<(usize, usize)>,
    weights: Vec<f64>,
    seed: u64,
}

/// Weight of edge `index` is a function of `(seed, index)` only.
pub fn draw_coupling(g: &Graph, seed: u64) -> PercolationCoupling<'_> {
    let edges: Vec<_> = g.edges().collect();
    let weights = keyed_uniforms(seed, edges.len());
    PercolationCoupling {
        base: g,
        edges,
        weights,
        seed,
    }
}

fn check_probability(name: &str, p: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&p) {
        return Err(invalid(format!("{name} = {p} is not a probability")));
    }
    Ok(())
}

/// `beta = 1 - (1 - p_high) / (1 - p_low)`: the fresh-edge probability that
/// lifts `G(p_low)` to marginal `p_high`.
pub fn sprinkle_beta(p_low: f64, p_high: f64) -> Result<f64> {
    check_probability("p_low", p_low)?;
    check_probability("p_high", p_high)?;
    if p_low >= p_high {
        return Err(invalid(format!(
            "p_low = {p_low} must be below p_high = {p_high}"
        )));
    }
    Ok(1.0 - (1.0 - p_high) / (1.0 - p_low))
}

impl<'g> PercolationCoupling<'g> {
    pub fn base(&self) -> &'g Graph {
        self.base
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Base edges in edge-index order.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Keeps every edge whose weight is strictly below `p`.
    pub fn percolate_at(&self, p: f64) -> Result<Graph> {
        check_probability("p", p)?;
        let kept: Vec<_> = self
            .edges
            .iter()
            .zip(&self.weights)
            .filter(|(_, &w)| w < p)
            .map(|(&e, _)| e)
            .collect();
        Ok(Graph::from_simple_sorted(self.base.n(), &kept))
    }

    /// `G(p_low)` united with an independent `beta`-percolation of the base
    /// keyed by `aux_seed`; each edge ends up present with probability
    /// `p_high`.
    pub fn sprinkle(&self, p_low: f64, p_high: f64, aux_seed: u64) -> Result<Graph> {
        let beta = sprinkle_beta(p_low, p_high)?;
        let fresh = keyed_uniforms(aux_seed, self.edges.len());
        let kept: Vec<_> = self
            .edges
            .iter()
            .zip(self.weights.iter().zip(&fresh))
            .filter(|&(_, (&w, &f))| w < p_low || f < beta)
            .map(|(&e, _)| e)
            .collect();
        Ok(Graph::from_simple_sorted(self.base.n(), &kept))
    }
}
