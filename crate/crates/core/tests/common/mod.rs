//! Independent reference implementations shared by the integration tests.

#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use twocore::ball::Ball;
use twocore::generators::{configuration_model, erdos_renyi, household_triangle, random_regular};
use twocore::graph::Graph;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Coreness by enumerating every vertex subset: a vertex's core number is the
/// largest minimum degree of an induced subgraph containing it.
pub fn brute_coreness(g: &Graph) -> Vec<usize> {
    let n = g.n();
    assert!(n <= 16);
    let mut best = vec![0; n];
    for mask in 1u32..(1 << n) {
        let inside = |v: usize| mask >> v & 1 == 1;
        let min_deg = (0..n)
            .filter(|&v| inside(v))
            .map(|v| g.neighbors(v).iter().filter(|&&w| inside(w)).count())
            .min()
            .unwrap();
        for v in (0..n).filter(|&v| inside(v)) {
            best[v] = best[v].max(min_deg);
        }
    }
    best
}

/// Plain 2-core by repeated full scans.
pub fn naive_two_core(n: usize, edges: &[(usize, usize)]) -> Vec<bool> {
    let mut alive = vec![true; n];
    loop {
        let mut deg = vec![0; n];
        for &(u, v) in edges {
            if alive[u] && alive[v] {
                deg[u] += 1;
                deg[v] += 1;
            }
        }
        let dead: Vec<usize> = (0..n).filter(|&v| alive[v] && deg[v] <= 1).collect();
        if dead.is_empty() {
            return alive;
        }
        for v in dead {
            alive[v] = false;
        }
    }
}

/// Classification of a ball's root by gadgets: every frontier vertex gets a
/// pendant edge into a fresh triangle, then the ordinary 2-core is taken.
/// Returns (root in the 2-core, root's 2-core component holds a triangle).
pub fn gadget_classify(ball: &Ball) -> (bool, bool) {
    let s = ball.size();
    let mut edges = Vec::new();
    for i in 0..s {
        for &j in ball.local_neighbors(i) {
            if i < j {
                edges.push((i, j));
            }
        }
    }
    let mut n = s;
    let mut triangle_vertices = Vec::new();
    for i in 0..s {
        if ball.is_frontier(i) {
            let (a, b, c) = (n, n + 1, n + 2);
            n += 3;
            edges.extend([(i, a), (a, b), (b, c), (a, c)]);
            triangle_vertices.push(a);
        }
    }
    let alive = naive_two_core(n, &edges);
    if !alive[0] {
        return (false, false);
    }
    // Connectivity inside the 2-core by union-find.
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        p[x] = r;
        r
    }
    for &(u, v) in &edges {
        if alive[u] && alive[v] {
            let (a, b) = (find(&mut parent, u), find(&mut parent, v));
            parent[a] = b;
        }
    }
    let root = find(&mut parent, 0);
    let giant = triangle_vertices
        .iter()
        .any(|&t| find(&mut parent, t) == root);
    (true, giant)
}

/// A random graph on at most `max_n` vertices from a mix of models.
pub fn mixed_graph(seed: u64, max_n: usize) -> Graph {
    let mut r = rng(seed);
    let n = r.random_range(6..=max_n.max(6));
    match seed % 4 {
        0 => erdos_renyi(n, r.random_range(0.5..4.0), seed).unwrap(),
        1 => {
            let d = r.random_range(2..=4);
            let n = if n * d % 2 == 1 { n + 1 } else { n };
            random_regular(n, d, seed).unwrap().graph
        }
        2 => {
            let mut degrees: Vec<usize> = (0..n).map(|_| r.random_range(1..=4)).collect();
            if degrees.iter().sum::<usize>() % 2 == 1 {
                degrees[0] += 1;
            }
            configuration_model(&degrees, seed).unwrap()
        }
        _ => {
            let base = erdos_renyi(n.div_ceil(3).max(4), r.random_range(1.0..3.0), seed).unwrap();
            household_triangle(&base, seed)
        }
    }
}

/// Random tree where vertex `i > 0` attaches to one of the `window` most
/// recent vertices, so small windows give deep trees.
pub fn random_tree(n: usize, window: usize, seed: u64) -> Graph {
    let mut r = rng(seed);
    let edges: Vec<(usize, usize)> = (1..n)
        .map(|i| (r.random_range(i.saturating_sub(window)..i), i))
        .collect();
    Graph::from_edges(n, edges).unwrap()
}
