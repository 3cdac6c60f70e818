//! Exact ground truth: core numbers, the 2-core and its components, the
//! radius-ℓ local core set, and the Poisson branching-process limits.

use rayon::prelude::*;
use serde::Serialize;

use crate::ball::{protected_peel, Explorer};
use crate::error::{invalid, Result};
use crate::graph::{connected_components, induced_subgraph, ComponentLabeling, Graph};

/// Core number of every vertex, by bucket-queue peeling in O(n + m).
pub fn coreness(g: &Graph) -> Vec<usize> {
    let n = g.n();
    if n == 0 {
        return Vec::new();
    }
    let mut deg: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let max_deg = *deg.iter().max().unwrap();
    // Vertices sorted by degree, with bucket starts and per-vertex positions.
    let mut bin = vec![0usize; max_deg + 2];
    for &d in &deg {
        bin[d + 1] += 1;
    }
    for d in 1..bin.len() {
        bin[d] += bin[d - 1];
    }
    let mut pos = vec![0usize; n];
    let mut order = vec![0usize; n];
    let mut fill = bin.clone();
    for v in 0..n {
        pos[v] = fill[deg[v]];
        order[pos[v]] = v;
        fill[deg[v]] += 1;
    }
    for i in 0..n {
        let v = order[i];
        for &u in g.neighbors(v) {
            if deg[u] > deg[v] {
                // Move u to the front of its bucket, then shrink the bucket.
                let du = deg[u];
                let pu = pos[u];
                let pw = bin[du];
                let w = order[pw];
                if u != w {
                    order.swap(pu, pw);
                    pos[u] = pw;
                    pos[w] = pu;
                }
                bin[du] += 1;
                deg[u] -= 1;
            }
        }
    }
    deg
}

/// Survivors of repeatedly deleting vertices of degree at most 1.
pub fn two_core_mask(g: &Graph) -> Vec<bool> {
    let n = g.n();
    let mut deg: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut alive = vec![true; n];
    let mut stack: Vec<usize> = (0..n).filter(|&v| deg[v] <= 1).collect();
    for &v in &stack {
        alive[v] = false;
    }
    while let Some(v) = stack.pop() {
        for &u in g.neighbors(v) {
            if alive[u] {
                deg[u] -= 1;
                if deg[u] <= 1 {
                    alive[u] = false;
                    stack.push(u);
                }
            }
        }
    }
    alive
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CoreFractions {
    /// Largest connected component of the whole graph.
    pub frac_cmax: f64,
    pub frac_c2: f64,
    /// Largest connected component of the 2-core.
    pub frac_c2max: f64,
}

#[derive(Debug, Clone)]
pub struct CoreResult {
    pub coreness: Vec<usize>,
    /// 2-core vertices, ascending.
    pub two_core: Vec<usize>,
    /// Components of the 2-core, over compacted ids (`two_core[i]` is the
    /// original id of compact vertex `i`).
    pub two_core_components: ComponentLabeling,
    pub fractions: CoreFractions,
}

impl CoreResult {
    /// Original ids of the largest 2-core component; ties go to the component
    /// holding the smallest vertex id.
    pub fn largest_two_core_component(&self) -> Vec<usize> {
        match self.two_core_components.largest {
            None => Vec::new(),
            Some(c) => self
                .two_core_components
                .members(c)
                .into_iter()
                .map(|i| self.two_core[i])
                .collect(),
        }
    }
}

pub fn two_core(g: &Graph) -> CoreResult {
    let n = g.n();
    let coreness = coreness(g);
    let mask = two_core_mask(g);
    debug_assert!((0..n).all(|v| mask[v] == (coreness[v] >= 2)));
    let members: Vec<usize> = (0..n).filter(|&v| mask[v]).collect();
    let (core_graph, _) = induced_subgraph(g, &members).expect("mask ids are in range");
    let two_core_components = connected_components(&core_graph);
    let whole = connected_components(g);
    let frac = |k: usize| if n == 0 { 0.0 } else { k as f64 / n as f64 };
    let fractions = CoreFractions {
        frac_cmax: frac(whole.largest_size()),
        frac_c2: frac(members.len()),
        frac_c2max: frac(two_core_components.largest_size()),
    };
    CoreResult {
        coreness,
        two_core: members,
        two_core_components,
        fractions,
    }
}

/// Vertices whose radius-`ell` ball, with a ray planted on every vertex at
/// distance `ell`, keeps them in an infinite component of the 2-core.
///
/// A vertex qualifies iff it survives protected peeling of its ball and its
/// surviving component contains a frontier vertex. Balls that exhaust their
/// component have no frontier and never qualify.
pub fn c2_ell_set(g: &Graph, ell: usize) -> Result<Vec<bool>> {
    if ell < 1 {
        return Err(invalid("radius ell must be at least 1"));
    }
    let n = g.n();
    Ok((0..n)
        .into_par_iter()
        .map_init(
            || Explorer::new(n),
            |ex, v| {
                let ball = ex.explore_radius(g, v, ell).expect("vertex in range");
                let c = crate::ball::classify(&ball, crate::ball::Mode::Semantic);
                debug_assert_eq!(c.core, protected_peel(&ball).alive[0]);
                c.giant
            },
        )
        .collect())
}

/// Survival probabilities of a Poisson(`lambda`) Galton–Watson tree.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BranchingLimits {
    /// Probability the root's tree is infinite: largest root of
    /// `z = 1 - exp(-lambda z)`.
    pub zeta: f64,
    /// Probability the root has at least two children with infinite lines
    /// of descent: `1 - (1 + lambda zeta) exp(-lambda zeta)`.
    pub zeta2inf: f64,
}

pub fn er_branching_oracle(lambda: f64) -> Result<BranchingLimits> {
    if !(lambda >= 0.0) || !lambda.is_finite() {
        return Err(invalid(format!(
            "mean offspring must be finite and >= 0, got {lambda}"
        )));
    }
    let zeta = survival_root(lambda);
    let x = lambda * zeta;
    let zeta2inf = 1.0 - (1.0 + x) * (-x).exp();
    Ok(BranchingLimits {
        zeta,
        zeta2inf: zeta2inf.max(0.0),
    })
}

/// Bisection on `f(z) = 1 - exp(-lambda z) - z`, which is positive on
/// `(0, zeta)` and negative on `(zeta, 1]` when `lambda > 1`.
fn survival_root(lambda: f64) -> f64 {
    if lambda <= 1.0 {
        return 0.0;
    }
    let f = |z: f64| -(-lambda * z).exp_m1() - z;
    let mut lo = 0.5;
    while f(lo) <= 0.0 {
        lo *= 0.5;
        if lo < 1e-15 {
            return 0.0;
        }
    }
    let mut hi = 1.0;
    while hi - lo > 1e-13 {
        let mid = 0.5 * (lo + hi);
        if f(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}
