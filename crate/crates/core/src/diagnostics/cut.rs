//! Heuristic search for sparse balanced cuts.
//!
//! A witness refutes weak expansion at a given balance: it is an upper bound
//! on the sparsest cut with both sides of size at least `epsilon * n`, never a
//! claim of optimality.

use rand::seq::SliceRandom;
use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{invalid, Result};
use crate::graph::{connected_components, Graph};
use crate::rng::stream_rng;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CutWitness {
    pub side_a: Vec<usize>,
    pub size_a: usize,
    pub size_b: usize,
    pub crossing: usize,
    pub epsilon_level: f64,
    pub delta_level: f64,
}

impl CutWitness {
    fn from_sides(g: &Graph, in_a: &[bool]) -> Self {
        let n = g.n();
        let side_a: Vec<usize> = (0..n).filter(|&v| in_a[v]).collect();
        let size_a = side_a.len();
        let size_b = n - size_a;
        let crossing = count_crossing(g, in_a);
        CutWitness {
            side_a,
            size_a,
            size_b,
            crossing,
            epsilon_level: size_a.min(size_b) as f64 / n as f64,
            delta_level: crossing as f64 / n as f64,
        }
    }

    /// Recounts the crossing edges and checks both sides against `min_side`.
    pub fn check(&self, g: &Graph, min_side: usize) -> bool {
        let mut in_a = vec![false; g.n()];
        for &v in &self.side_a {
            in_a[v] = true;
        }
        self.size_a == self.side_a.len()
            && self.size_a + self.size_b == g.n()
            && self.size_a.min(self.size_b) >= min_side
            && count_crossing(g, &in_a) == self.crossing
    }
}

pub fn count_crossing(g: &Graph, in_a: &[bool]) -> usize {
    g.edges().filter(|&(u, v)| in_a[u] != in_a[v]).count()
}

/// Smallest side size allowed at balance `epsilon`.
pub fn min_side_size(n: usize, epsilon: f64) -> usize {
    (epsilon * n as f64).ceil() as usize
}

/// Best balanced cut found over `iters` restarts plus one component-packing
/// start. Restart `r` uses randomness keyed by `(seed, r)`; even restarts grow
/// a BFS region from a random vertex, odd restarts split a random permutation.
pub fn find_balanced_cut(g: &Graph, epsilon: f64, iters: usize, seed: u64) -> Result<CutWitness> {
    if !(epsilon > 0.0 && epsilon < 0.5) {
        return Err(invalid(format!(
            "balance epsilon = {epsilon} must lie in (0, 1/2)"
        )));
    }
    let n = g.n();
    let min_side = min_side_size(n, epsilon);
    if n < 2 || 2 * min_side > n {
        return Err(invalid(format!(
            "no bipartition of {n} vertices has both sides >= {min_side}"
        )));
    }
    let packed = pack_components(g, min_side);
    let mut candidates: Vec<(usize, usize, Vec<bool>)> = (0..iters)
        .into_par_iter()
        .map(|r| {
            let mut rng = stream_rng(seed, r as u64);
            let mut in_a = if r % 2 == 0 {
                bfs_start(g, &mut rng)
            } else {
                random_start(n, &mut rng)
            };
            local_search(g, &mut in_a, min_side);
            (count_crossing(g, &in_a), r + 1, in_a)
        })
        .collect();
    if let Some(mut in_a) = packed {
        local_search(g, &mut in_a, min_side);
        candidates.push((count_crossing(g, &in_a), 0, in_a));
    }
    let (_, _, best) = candidates
        .into_iter()
        .min_by_key(|(c, idx, _)| (*c, *idx))
        .expect("at least one start");
    Ok(CutWitness::from_sides(g, &best))
}

/// Greedy packing of whole components into side A, largest first, keeping
/// side A at most `n - min_side`. Returns `None` if it cannot reach `min_side`.
fn pack_components(g: &Graph, min_side: usize) -> Option<Vec<bool>> {
    let n = g.n();
    let comps = connected_components(g);
    if comps.count() < 2 {
        return None;
    }
    let mut order: Vec<usize> = (0..comps.count()).collect();
    order.sort_by_key(|&c| (std::cmp::Reverse(comps.sizes[c]), c));
    let mut chosen = vec![false; comps.count()];
    let mut size = 0;
    for c in order {
        if size >= min_side {
            break;
        }
        if size + comps.sizes[c] <= n - min_side {
            chosen[c] = true;
            size += comps.sizes[c];
        }
    }
    (size >= min_side).then(|| (0..n).map(|v| chosen[comps.label[v]]).collect())
}

fn random_start<R: Rng>(n: usize, rng: &mut R) -> Vec<bool> {
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut in_a = vec![false; n];
    for &v in &order[..n / 2] {
        in_a[v] = true;
    }
    in_a
}

/// Side A is a BFS region of `n / 2` vertices grown from a random vertex,
/// jumping to fresh random vertices when a component runs out.
fn bfs_start<R: Rng>(g: &Graph, rng: &mut R) -> Vec<bool> {
    let n = g.n();
    let target = n / 2;
    let mut in_a = vec![false; n];
    let mut size = 0;
    let mut queue = std::collections::VecDeque::new();
    while size < target {
        if queue.is_empty() {
            let mut s = rng.random_range(0..n);
            while in_a[s] {
                s = (s + 1) % n;
            }
            in_a[s] = true;
            size += 1;
            queue.push_back(s);
            continue;
        }
        let u = queue.pop_front().unwrap();
        for &w in g.neighbors(u) {
            if size == target {
                break;
            }
            if !in_a[w] {
                in_a[w] = true;
                size += 1;
                queue.push_back(w);
            }
        }
    }
    in_a
}

/// Single-vertex moves, then best-pair swaps, accepted only when they lower
/// the crossing count and keep both sides at least `min_side`.
fn local_search(g: &Graph, in_a: &mut [bool], min_side: usize) {
    let n = g.n();
    let mut size_a = in_a.iter().filter(|&&x| x).count();
    // gain[v]: crossing decrease if v switches sides.
    let gain_of = |in_a: &[bool], v: usize| -> i64 {
        g.neighbors(v)
            .iter()
            .map(|&w| if in_a[w] != in_a[v] { 1 } else { -1 })
            .sum()
    };
    let mut gain: Vec<i64> = (0..n).map(|v| gain_of(in_a, v)).collect();
    let flip = |in_a: &mut [bool], gain: &mut [i64], v: usize| {
        in_a[v] = !in_a[v];
        gain[v] = -gain[v];
        for &w in g.neighbors(v) {
            // v now agrees with w iff it disagreed before.
            gain[w] += if in_a[w] == in_a[v] { -2 } else { 2 };
        }
    };
    loop {
        let mut improved = false;
        for v in 0..n {
            if gain[v] <= 0 {
                continue;
            }
            let new_a = if in_a[v] { size_a - 1 } else { size_a + 1 };
            if new_a >= min_side && n - new_a >= min_side {
                flip(in_a, &mut gain, v);
                size_a = new_a;
                improved = true;
            }
        }
        if improved {
            continue;
        }
        // Swap the best vertex of each side, if the pair still gains.
        let best = |side: bool| {
            (0..n)
                .filter(|&v| in_a[v] == side)
                .max_by_key(|&v| (gain[v], std::cmp::Reverse(v)))
        };
        if let (Some(a), Some(b)) = (best(true), best(false)) {
            let adjacent = i64::from(g.has_edge(a, b));
            if gain[a] + gain[b] - 2 * adjacent > 0 {
                flip(in_a, &mut gain, a);
                flip(in_a, &mut gain, b);
                continue;
            }
        }
        break;
    }
}
