//! Two-step sprinkling construction on a concrete percolation coupling.

use std::collections::VecDeque;

use serde::Serialize;

use super::flow::{edge_disjoint_paths, edge_disjoint_paths_excluding};
use super::forest::color_forest;
use crate::error::{invalid, Error, Result};
use crate::graph::{connected_components, induced_subgraph, Graph};
use crate::oracle::two_core_mask;
use crate::percolation::draw_coupling;
use crate::rng::derive_seed;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SeedCoreReport {
    pub p_low: f64,
    pub p_high: f64,
    pub ell: usize,
    pub seed: u64,
    pub cmax_size: usize,
    pub cmax_is_tree: bool,
    pub h_size: usize,
    /// Components of `Cmax \ H` with at least `ell` vertices.
    pub f_trees: usize,
    pub f_size: usize,
    /// Edge-disjoint H–F paths in the base graph.
    pub disjoint_paths: usize,
    /// Same, without the percolated edges joining F directly to H.
    pub filtered_paths: usize,
    /// Total size of complete colored segments, when `Cmax` is a tree.
    pub colored_size: Option<usize>,
    pub pre_two_core_nonempty: bool,
    pub post_cmax_size: usize,
    pub post_two_core_nonempty: bool,
}

/// Default H size: `floor(0.1 |Cmax|)`, at least 1.
pub fn default_h_size(cmax_size: usize) -> usize {
    (cmax_size / 10).max(1)
}

pub fn seed_core_experiment(
    g: &Graph,
    p_low: f64,
    p_high: f64,
    ell: usize,
    seed: u64,
    h_size: Option<usize>,
) -> Result<SeedCoreReport> {
    if !(p_low < p_high) {
        return Err(invalid(format!(
            "p_low = {p_low} must be below p_high = {p_high}"
        )));
    }
    if ell < 2 {
        return Err(invalid("ell must be at least 2"));
    }
    if g.n() == 0 {
        return Err(invalid("empty graph"));
    }
    let coupling = draw_coupling(g, derive_seed(seed, 1));
    let low = coupling.percolate_at(p_low)?;
    let comps = connected_components(&low);
    let cmax_id = comps.largest.expect("nonempty graph");
    let cmax = comps.members(cmax_id);
    let h_size = h_size.unwrap_or_else(|| default_h_size(cmax.len()));
    if h_size == 0 || h_size > cmax.len() {
        return Err(Error::Structure(format!(
            "requested H of size {h_size}, but the largest component at p = {p_low} has {} vertices \
             ({} components)",
            cmax.len(),
            comps.count()
        )));
    }
    let (cgraph, _) = induced_subgraph(&low, &cmax)?;
    let cmax_is_tree = cgraph.m() + 1 == cgraph.n();

    // H: BFS inside Cmax from its smallest-id leaf, in local ids.
    let start = (0..cgraph.n())
        .find(|&v| cgraph.degree(v) == 1)
        .unwrap_or(0);
    let mut in_h = vec![false; cgraph.n()];
    let mut h_local = Vec::with_capacity(h_size);
    let mut queue = VecDeque::from([start]);
    in_h[start] = true;
    while let Some(u) = queue.pop_front() {
        h_local.push(u);
        if h_local.len() == h_size {
            break;
        }
        for &w in cgraph.neighbors(u) {
            if !in_h[w] && h_local.len() + queue.len() < h_size {
                in_h[w] = true;
                queue.push_back(w);
            }
        }
    }
    for &u in &queue {
        in_h[u] = false;
    }
    h_local.sort_unstable();

    // F: large components of Cmax \ H.
    let rest: Vec<usize> = (0..cgraph.n()).filter(|&v| !in_h[v]).collect();
    let (rgraph, rmap) = induced_subgraph(&cgraph, &rest)?;
    let rcomps = connected_components(&rgraph);
    let mut in_f = vec![false; cgraph.n()];
    let mut f_trees = 0;
    for c in 0..rcomps.count() {
        if rcomps.sizes[c] >= ell {
            f_trees += 1;
            for v in rcomps.members(c) {
                in_f[rmap[v]] = true;
            }
        }
    }
    let f_local: Vec<usize> = (0..cgraph.n()).filter(|&v| in_f[v]).collect();

    let h: Vec<usize> = h_local.iter().map(|&v| cmax[v]).collect();
    let f: Vec<usize> = f_local.iter().map(|&v| cmax[v]).collect();
    let (disjoint_paths, filtered_paths) = if f.is_empty() {
        (0, 0)
    } else {
        let direct: Vec<(usize, usize)> = cgraph
            .edges()
            .filter(|&(u, v)| (in_h[u] && in_f[v]) || (in_f[u] && in_h[v]))
            .map(|(u, v)| (cmax[u], cmax[v]))
            .collect();
        (
            edge_disjoint_paths(g, &h, &f)?,
            edge_disjoint_paths_excluding(g, &h, &f, &direct)?,
        )
    };

    let colored_size = if cmax_is_tree && h_size < cgraph.n() {
        let cf = color_forest(&cgraph, &h_local, ell)?;
        Some(cf.final_colored_segments().map(|s| s.vertices.len()).sum())
    } else {
        None
    };

    let high = coupling.sprinkle(p_low, p_high, derive_seed(seed, 2))?;
    let high_comps = connected_components(&high);
    let post = high_comps.members(high_comps.largest.expect("nonempty graph"));
    let (post_graph, _) = induced_subgraph(&high, &post)?;

    Ok(SeedCoreReport {
        p_low,
        p_high,
        ell,
        seed,
        cmax_size: cmax.len(),
        cmax_is_tree,
        h_size,
        f_trees,
        f_size: f.len(),
        disjoint_paths,
        filtered_paths,
        colored_size,
        pre_two_core_nonempty: two_core_mask(&cgraph).contains(&true),
        post_cmax_size: post.len(),
        post_two_core_nonempty: two_core_mask(&post_graph).contains(&true),
    })
}
