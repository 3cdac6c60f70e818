//! Truncated breadth-first neighborhoods and protected peeling.
//!
//! A [`Ball`] is the subgraph induced by all vertices within hop distance
//! `radius` of a root. When the exploration stopped before exhausting the
//! root's component, the vertices at distance exactly `radius` form the
//! frontier: each stands for unexplored continuation and is treated as
//! carrying one extra, permanent edge (an infinite ray) during peeling.

use std::collections::VecDeque;

use serde::Serialize;

use crate::error::{invalid, Result};
use crate::graph::Graph;

/// Local vertex index inside a ball; the root is always local `0`.
pub type Local = usize;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ball {
    pub root: usize,
    pub radius: usize,
    /// Original ids in BFS order.
    pub members: Vec<usize>,
    /// Distance from the root, parallel to `members`.
    pub dist: Vec<usize>,
    offsets: Vec<usize>,
    adj: Vec<Local>,
    /// Local indices of the vertices at distance `radius`, when truncated.
    pub frontier: Vec<Local>,
    pub truncated: bool,
    /// Root degree reached the size cap; nothing was explored.
    pub degree_overflow: bool,
}

impl Ball {
    pub fn size(&self) -> usize {
        self.members.len()
    }

    pub fn local_neighbors(&self, i: Local) -> &[Local] {
        &self.adj[self.offsets[i]..self.offsets[i + 1]]
    }

    pub fn local_degree(&self, i: Local) -> usize {
        self.offsets[i + 1] - self.offsets[i]
    }

    /// Base-graph edges with both endpoints in the ball, as original ids.
    pub fn induced_edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.size()).flat_map(move |i| {
            self.local_neighbors(i)
                .iter()
                .filter(move |&&j| j > i)
                .map(move |&j| (self.members[i], self.members[j]))
        })
    }

    pub fn is_frontier(&self, i: Local) -> bool {
        self.truncated && self.dist[i] == self.radius
    }
}

/// Which reading of the giant-core indicator to use.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    /// Root survives protected peeling and its surviving component reaches
    /// the frontier.
    #[default]
    Semantic,
    /// Root survives protected peeling and the ball has a frontier at all.
    #[serde(alias = "literal")]
    PaperLiteral,
}

impl std::str::FromStr for Mode {
    type Err = crate::error::Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "semantic" => Ok(Mode::Semantic),
            "literal" | "paper_literal" => Ok(Mode::PaperLiteral),
            other => Err(invalid(format!("unknown mode {other:?}"))),
        }
    }
}

/// Per-sample indicators.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Classification {
    /// Root is potentially in the 2-core.
    pub core: bool,
    /// Root is potentially in the giant 2-core.
    pub giant: bool,
}

/// Reusable scratch space for exploring many balls in one graph.
#[derive(Debug, Clone)]
pub struct Explorer {
    stamp: Vec<u32>,
    local: Vec<u32>,
    epoch: u32,
}

impl Explorer {
    pub fn new(n: usize) -> Self {
        Explorer {
            stamp: vec![0; n],
            local: vec![0; n],
            epoch: 0,
        }
    }

    fn next_epoch(&mut self) {
        self.epoch = self.epoch.wrapping_add(1);
        if self.epoch == 0 {
            self.stamp.fill(0);
            self.epoch = 1;
        }
    }

    fn lookup(&self, v: usize) -> Option<Local> {
        (self.stamp[v] == self.epoch).then(|| self.local[v] as usize)
    }

    fn insert(&mut self, v: usize, i: Local) {
        self.stamp[v] = self.epoch;
        self.local[v] = i as u32;
    }

    /// Largest ball around `root` of at most `cap` vertices, grown one full
    /// BFS level at a time. A root of degree `>= cap` gives a degree-overflow
    /// ball containing only the root.
    pub fn explore_capped(&mut self, g: &Graph, root: usize, cap: usize) -> Result<Ball> {
        if cap < 2 {
            return Err(invalid(format!("size cap K = {cap} must be at least 2")));
        }
        check_vertex(g, root)?;
        if g.degree(root) >= cap {
            return Ok(Ball {
                root,
                radius: 0,
                members: vec![root],
                dist: vec![0],
                offsets: vec![0, 0],
                adj: Vec::new(),
                frontier: Vec::new(),
                truncated: true,
                degree_overflow: true,
            });
        }
        Ok(self.grow(g, root, Limit::Size(cap)))
    }

    /// All vertices within distance `radius` of `root`. The ball counts as
    /// truncated (and has a frontier) iff some vertex lies at distance
    /// `radius + 1`.
    pub fn explore_radius(&mut self, g: &Graph, root: usize, radius: usize) -> Result<Ball> {
        check_vertex(g, root)?;
        Ok(self.grow(g, root, Limit::Radius(radius)))
    }

    fn grow(&mut self, g: &Graph, root: usize, limit: Limit) -> Ball {
        self.next_epoch();
        let mut members = vec![root];
        let mut dist = vec![0];
        self.insert(root, 0);
        let mut level_start = 0;
        let mut radius = 0;
        let mut truncated = false;
        let mut next = Vec::new();
        loop {
            // Collect the next level without committing it.
            next.clear();
            let budget = match limit {
                Limit::Size(cap) => cap - members.len(),
                Limit::Radius(_) => usize::MAX,
            };
            let mut over = false;
            'scan: for i in level_start..members.len() {
                for &w in g.neighbors(members[i]) {
                    if self.stamp[w] != self.epoch {
                        self.insert(w, usize::MAX);
                        next.push(w);
                        if next.len() > budget {
                            over = true;
                            break 'scan;
                        }
                    }
                }
            }
            let stop_by_radius = matches!(limit, Limit::Radius(r) if radius == r);
            if next.is_empty() {
                break;
            }
            if over || stop_by_radius {
                truncated = true;
                for &w in &next {
                    self.stamp[w] = 0;
                }
                break;
            }
            level_start = members.len();
            radius += 1;
            for &w in &next {
                self.insert(w, members.len());
                members.push(w);
                dist.push(radius);
            }
        }
        let (offsets, adj) = self.local_adjacency(g, &members);
        let frontier = if truncated {
            (level_start..members.len()).collect()
        } else {
            Vec::new()
        };
        Ball {
            root,
            radius,
            members,
            dist,
            offsets,
            adj,
            frontier,
            truncated,
            degree_overflow: false,
        }
    }

    fn local_adjacency(&self, g: &Graph, members: &[usize]) -> (Vec<usize>, Vec<Local>) {
        let mut offsets = Vec::with_capacity(members.len() + 1);
        offsets.push(0);
        let mut adj = Vec::new();
        for &u in members {
            let start = adj.len();
            let nbrs = g.neighbors(u);
            if nbrs.len() > members.len() {
                // High-degree member: probe the ball instead of the list.
                adj.extend(
                    members
                        .iter()
                        .enumerate()
                        .filter(|&(_, &w)| w != u && nbrs.binary_search(&w).is_ok())
                        .map(|(j, _)| j),
                );
            } else {
                adj.extend(nbrs.iter().filter_map(|&w| self.lookup(w)));
            }
            adj[start..].sort_unstable();
            offsets.push(adj.len());
        }
        (offsets, adj)
    }
}

#[derive(Debug, Clone, Copy)]
enum Limit {
    Size(usize),
    Radius(usize),
}

fn check_vertex(g: &Graph, v: usize) -> Result<()> {
    if v >= g.n() {
        return Err(crate::error::Error::VertexOutOfRange { id: v, n: g.n() });
    }
    Ok(())
}

/// Capped exploration with fresh scratch space; see [`Explorer::explore_capped`].
pub fn explore_ball(g: &Graph, root: usize, cap: usize) -> Result<Ball> {
    Explorer::new(g.n()).explore_capped(g, root, cap)
}

/// Radius-limited exploration with fresh scratch space.
pub fn explore_radius(g: &Graph, root: usize, radius: usize) -> Result<Ball> {
    Explorer::new(g.n()).explore_radius(g, root, radius)
}

/// Outcome of peeling a ball with the frontier protected.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Peeled {
    pub alive: Vec<bool>,
}

/// Peels every vertex whose effective degree is at most 1, where frontier
/// vertices count one extra unit of degree.
pub fn protected_peel(ball: &Ball) -> Peeled {
    let s = ball.size();
    let mut eff: Vec<usize> = (0..s)
        .map(|i| ball.local_degree(i) + usize::from(ball.is_frontier(i)))
        .collect();
    let mut alive = vec![true; s];
    let mut stack: Vec<Local> = (0..s).filter(|&i| eff[i] <= 1).collect();
    for &i in &stack {
        alive[i] = false;
    }
    while let Some(i) = stack.pop() {
        for &j in ball.local_neighbors(i) {
            if alive[j] {
                eff[j] -= 1;
                if eff[j] <= 1 {
                    alive[j] = false;
                    stack.push(j);
                }
            }
        }
    }
    Peeled { alive }
}

/// Whether the surviving component of the root contains a frontier vertex.
fn root_reaches_frontier(ball: &Ball, alive: &[bool]) -> bool {
    if !alive[0] {
        return false;
    }
    let mut seen = vec![false; ball.size()];
    let mut queue = VecDeque::from([0]);
    seen[0] = true;
    while let Some(i) = queue.pop_front() {
        if ball.is_frontier(i) {
            return true;
        }
        for &j in ball.local_neighbors(i) {
            if alive[j] && !seen[j] {
                seen[j] = true;
                queue.push_back(j);
            }
        }
    }
    false
}

pub fn classify(ball: &Ball, mode: Mode) -> Classification {
    if ball.degree_overflow {
        return Classification {
            core: true,
            giant: true,
        };
    }
    let peeled = protected_peel(ball);
    let core = peeled.alive[0];
    let giant = match mode {
        Mode::Semantic => root_reaches_frontier(ball, &peeled.alive),
        Mode::PaperLiteral => core && !ball.frontier.is_empty(),
    };
    Classification { core, giant }
}

/// Result of the branch-counting exploration bookkeeping.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct BranchCount {
    pub classification: Classification,
    /// Some non-tree edge joins two different first-hop branches.
    pub branches_meet: bool,
}

/// The branch / cycle / reach bookkeeping of the explicit exploration
/// routine, replayed over an already explored ball.
///
/// Every vertex inherits the first-hop neighbor ("branch") it was discovered
/// through. A branch is marked as having a cycle when one of its vertices
/// sees an already discovered vertex over a non-tree edge, and as reaching
/// when it owns a vertex at the final radius. The root counts as potentially
/// in the core when at least two branches have a cycle (untruncated balls)
/// or a cycle or reach (truncated balls).
pub fn branch_count(ball: &Ball) -> BranchCount {
    if ball.degree_overflow {
        return BranchCount {
            classification: Classification {
                core: true,
                giant: true,
            },
            branches_meet: false,
        };
    }
    let s = ball.size();
    const NONE: usize = usize::MAX;
    let mut branch = vec![NONE; s];
    let mut parent = vec![NONE; s];
    let first_hop: Vec<Local> = ball.local_neighbors(0).to_vec();
    let slot = |b: Local| first_hop.binary_search(&b).unwrap();
    let mut cycle = vec![false; first_hop.len()];
    let mut reach = vec![0usize; first_hop.len()];
    let mut branches_meet = false;
    let mut queue = VecDeque::new();
    for &u in &first_hop {
        branch[u] = u;
        parent[u] = 0;
        reach[slot(u)] = 1;
        queue.push_back(u);
    }
    let mut discovered = vec![false; s];
    discovered[0] = true;
    for &u in &first_hop {
        discovered[u] = true;
    }
    while let Some(u) = queue.pop_front() {
        for &w in ball.local_neighbors(u) {
            if w == parent[u] {
                continue;
            }
            if !discovered[w] {
                discovered[w] = true;
                parent[w] = u;
                branch[w] = branch[u];
                let r = &mut reach[slot(branch[u])];
                *r = (*r).max(ball.dist[w]);
                queue.push_back(w);
            } else {
                cycle[slot(branch[u])] = true;
                if w != 0 && branch[w] != branch[u] {
                    branches_meet = true;
                }
            }
        }
    }
    let counted = |use_reach: bool| {
        (0..first_hop.len())
            .filter(|&b| cycle[b] || (use_reach && reach[b] == ball.radius))
            .count()
            >= 2
    };
    let classification = if ball.truncated {
        let c = counted(true);
        Classification { core: c, giant: c }
    } else {
        Classification {
            core: counted(false),
            giant: false,
        }
    };
    BranchCount {
        classification,
        branches_meet,
    }
}
