//! Edge-disjoint path counts by unit-capacity max-flow.

use std::collections::VecDeque;

use crate::error::{invalid, Error, Result};
use crate::graph::Graph;

/// Residual network with paired arcs: arc `e ^ 1` is the reverse of `e`.
struct FlowNetwork {
    head: Vec<usize>,
    cap: Vec<usize>,
    first: Vec<usize>,
    next: Vec<usize>,
}

const NIL: usize = usize::MAX;

impl FlowNetwork {
    fn new(nodes: usize) -> Self {
        FlowNetwork {
            head: Vec::new(),
            cap: Vec::new(),
            first: vec![NIL; nodes],
            next: Vec::new(),
        }
    }

    fn add_arc_pair(&mut self, u: usize, v: usize, cap_uv: usize, cap_vu: usize) {
        for (from, to, c) in [(u, v, cap_uv), (v, u, cap_vu)] {
            self.head.push(to);
            self.cap.push(c);
            self.next.push(self.first[from]);
            self.first[from] = self.head.len() - 1;
        }
    }

    /// Dinic's algorithm.
    fn max_flow(&mut self, s: usize, t: usize) -> usize {
        let nodes = self.first.len();
        let mut total = 0;
        let mut level = vec![NIL; nodes];
        let mut iter = vec![NIL; nodes];
        loop {
            level.fill(NIL);
            level[s] = 0;
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                let mut e = self.first[u];
                while e != NIL {
                    let v = self.head[e];
                    if self.cap[e] > 0 && level[v] == NIL {
                        level[v] = level[u] + 1;
                        queue.push_back(v);
                    }
                    e = self.next[e];
                }
            }
            if level[t] == NIL {
                return total;
            }
            iter.copy_from_slice(&self.first);
            loop {
                let pushed = self.augment(s, t, &level, &mut iter);
                if pushed == 0 {
                    break;
                }
                total += pushed;
            }
        }
    }

    /// One augmenting path along the level graph, iteratively.
    fn augment(&mut self, s: usize, t: usize, level: &[usize], iter: &mut [usize]) -> usize {
        let mut path: Vec<usize> = Vec::new();
        let mut u = s;
        loop {
            if u == t {
                let bottleneck = path.iter().map(|&e| self.cap[e]).min().unwrap();
                for &e in &path {
                    self.cap[e] -= bottleneck;
                    self.cap[e ^ 1] += bottleneck;
                }
                return bottleneck;
            }
            let mut advanced = false;
            while iter[u] != NIL {
                let e = iter[u];
                let v = self.head[e];
                if self.cap[e] > 0 && level[v] == level[u] + 1 {
                    path.push(e);
                    u = v;
                    advanced = true;
                    break;
                }
                iter[u] = self.next[e];
            }
            if !advanced {
                // Dead end: retreat and skip the arc that led here.
                match path.pop() {
                    None => return 0,
                    Some(e) => {
                        u = self.head[e ^ 1];
                        iter[u] = self.next[iter[u]];
                    }
                }
            }
        }
    }
}

/// Maximum number of pairwise edge-disjoint paths between the vertex sets
/// `a` and `b`.
pub fn edge_disjoint_paths(g: &Graph, a: &[usize], b: &[usize]) -> Result<usize> {
    edge_disjoint_paths_excluding(g, a, b, &[])
}

/// As [`edge_disjoint_paths`], with the listed edges removed first.
pub fn edge_disjoint_paths_excluding(
    g: &Graph,
    a: &[usize],
    b: &[usize],
    removed: &[(usize, usize)],
) -> Result<usize> {
    let n = g.n();
    if a.is_empty() || b.is_empty() {
        return Err(invalid("both endpoint sets must be nonempty"));
    }
    let mut side = vec![0u8; n];
    for &v in a {
        if v >= n {
            return Err(Error::VertexOutOfRange { id: v, n });
        }
        side[v] = 1;
    }
    for &v in b {
        if v >= n {
            return Err(Error::VertexOutOfRange { id: v, n });
        }
        if side[v] == 1 {
            return Err(invalid(format!("vertex {v} is in both endpoint sets")));
        }
        side[v] = 2;
    }
    let mut removed: Vec<(usize, usize)> =
        removed.iter().map(|&(u, v)| (u.min(v), u.max(v))).collect();
    removed.sort_unstable();
    let (s, t) = (n, n + 1);
    let mut net = FlowNetwork::new(n + 2);
    for (u, v) in g.edges() {
        if removed.binary_search(&(u, v)).is_err() {
            net.add_arc_pair(u, v, 1, 1);
        }
    }
    let unbounded = g.m() + 1;
    for v in 0..n {
        match side[v] {
            1 => net.add_arc_pair(s, v, unbounded, 0),
            2 => net.add_arc_pair(v, t, unbounded, 0),
            _ => {}
        }
    }
    Ok(net.max_flow(s, t))
}
