//! Orientation of the forest hanging off a seed set `H`, and the red /
//! purple / black / gray segment coloring over it.

use std::collections::VecDeque;

use serde::Serialize;

use crate::error::{invalid, Error, Result};
use crate::graph::Graph;

/// Downstream orientation of `G \ H` toward `H`.
///
/// `parent[u]` is the unique neighbor of `u` one step closer to `H` (an `H`
/// vertex for tree roots). `depth[u]` is 1 for a vertex with no upstream and
/// one more than the deepest direct upstream otherwise. Both are `None` on `H`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Orientation {
    pub in_h: Vec<bool>,
    pub parent: Vec<Option<usize>>,
    pub depth: Vec<Option<usize>>,
    /// Direct upstream neighbors of each vertex, ascending.
    pub children: Vec<Vec<usize>>,
    /// Non-`H` vertices ordered so every vertex precedes its parent.
    pub upstream_first: Vec<usize>,
}

fn h_mask(g: &Graph, h: &[usize]) -> Result<Vec<bool>> {
    let mut in_h = vec![false; g.n()];
    for &v in h {
        if v >= g.n() {
            return Err(Error::VertexOutOfRange { id: v, n: g.n() });
        }
        in_h[v] = true;
    }
    if h.is_empty() {
        return Err(invalid("seed set H is empty"));
    }
    Ok(in_h)
}

pub fn orient_forest(g: &Graph, h: &[usize]) -> Result<Orientation> {
    let n = g.n();
    let in_h = h_mask(g, h)?;
    let mut parent = vec![None; n];
    let mut seen = in_h.clone();
    let mut bfs_order = Vec::with_capacity(n);
    for s in 0..n {
        if seen[s] {
            continue;
        }
        // One tree of G \ H: collect it, then find its attachment.
        let mut tree = vec![s];
        seen[s] = true;
        let mut i = 0;
        let mut internal_degree_sum = 0;
        while i < tree.len() {
            let u = tree[i];
            i += 1;
            for &w in g.neighbors(u) {
                if in_h[w] {
                    continue;
                }
                internal_degree_sum += 1;
                if !seen[w] {
                    seen[w] = true;
                    tree.push(w);
                }
            }
        }
        if internal_degree_sum / 2 != tree.len() - 1 {
            return Err(Error::Structure(format!(
                "G \\ H contains a cycle in the piece containing vertex {s}"
            )));
        }
        let attached: Vec<usize> = tree
            .iter()
            .copied()
            .filter(|&u| g.neighbors(u).iter().any(|&w| in_h[w]))
            .collect();
        if attached.len() != 1 {
            return Err(Error::Structure(format!(
                "tree containing vertex {s} has {} vertices adjacent to H, expected 1",
                attached.len()
            )));
        }
        let root = attached[0];
        parent[root] = g.neighbors(root).iter().copied().find(|&w| in_h[w]);
        // Re-traverse from the root to orient the tree.
        let mut queue = VecDeque::from([root]);
        let start = bfs_order.len();
        bfs_order.push(root);
        while let Some(u) = queue.pop_front() {
            for &w in g.neighbors(u) {
                if !in_h[w] && Some(w) != parent[u] && parent[w].is_none() && w != root {
                    parent[w] = Some(u);
                    queue.push_back(w);
                    bfs_order.push(w);
                }
            }
        }
        debug_assert_eq!(bfs_order.len() - start, tree.len());
    }
    let mut children = vec![Vec::new(); n];
    let mut depth = vec![None; n];
    let upstream_first: Vec<usize> = bfs_order.iter().rev().copied().collect();
    for &u in &upstream_first {
        let d = 1 + children[u]
            .iter()
            .map(|&c: &usize| depth[c].unwrap())
            .max()
            .unwrap_or(0);
        depth[u] = Some(d);
        let p = parent[u].unwrap();
        if !in_h[p] {
            children[p].push(u);
        }
    }
    for c in &mut children {
        c.sort_unstable();
    }
    Ok(Orientation {
        in_h,
        parent,
        depth,
        children,
        upstream_first,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Color {
    Red,
    Purple,
    Black,
    Gray,
}

impl Color {
    pub fn is_colored(self) -> bool {
        matches!(self, Color::Red | Color::Purple)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Segment {
    /// Final color after reverting incomplete segments.
    pub color: Color,
    /// Color assigned by depth before the completeness pass.
    pub initial_color: Color,
    pub vertices: Vec<usize>,
    pub complete: bool,
    /// The unique maximally downstream vertex.
    pub top: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColoredForest {
    pub orientation: Orientation,
    pub ell: usize,
    /// `None` on `H`.
    pub color: Vec<Option<Color>>,
    pub segments: Vec<Segment>,
    /// Segment index of every red or purple-by-depth vertex.
    pub segment_of: Vec<Option<usize>>,
    /// Edges `(top, parent(top))` directly downstream of gray segments.
    pub gray_edges: Vec<(usize, usize)>,
}

/// Depth-rule color before the completeness pass.
pub fn depth_color(depth: usize, ell: usize) -> Color {
    let r = depth % (2 * ell);
    if depth <= ell {
        Color::Red
    } else if depth > 2 * ell && (1..=ell).contains(&r) {
        Color::Purple
    } else {
        Color::Black
    }
}

pub fn color_forest(g: &Graph, h: &[usize], ell: usize) -> Result<ColoredForest> {
    if ell < 1 {
        return Err(invalid("ell must be at least 1"));
    }
    let orientation = orient_forest(g, h)?;
    let n = g.n();
    let depth = |u: usize| orientation.depth[u].unwrap();
    let mut color: Vec<Option<Color>> = (0..n)
        .map(|u| orientation.depth[u].map(|d| depth_color(d, ell)))
        .collect();

    // Segments: components of the colored edges, which join a vertex to its
    // parent when both share a color and their depths are consecutive.
    let joins_parent = |u: usize, color: &[Option<Color>]| -> bool {
        let p = orientation.parent[u].unwrap();
        !orientation.in_h[p]
            && color[u].is_some_and(Color::is_colored)
            && color[u] == color[p]
            && depth(p) == depth(u) + 1
    };
    let mut segment_of = vec![None; n];
    let mut segments = Vec::new();
    // Parents are met before children in reversed upstream-first order.
    for &u in orientation.upstream_first.iter().rev() {
        if !color[u].is_some_and(Color::is_colored) {
            continue;
        }
        let id = if joins_parent(u, &color) {
            segment_of[orientation.parent[u].unwrap()].unwrap()
        } else {
            segments.push(Segment {
                color: color[u].unwrap(),
                initial_color: color[u].unwrap(),
                vertices: Vec::new(),
                complete: false,
                top: u,
            });
            segments.len() - 1
        };
        segment_of[u] = Some(id);
        let seg: &mut Segment = &mut segments[id];
        seg.vertices.push(u);
        seg.complete |= depth(u) % ell == 0;
    }

    let mut gray_edges = Vec::new();
    for seg in &mut segments {
        seg.vertices.sort_unstable();
        if seg.complete {
            continue;
        }
        let reverted = match seg.initial_color {
            Color::Purple => Color::Black,
            Color::Red => {
                gray_edges.push((seg.top, orientation.parent[seg.top].unwrap()));
                Color::Gray
            }
            _ => unreachable!("only colored segments are recorded"),
        };
        seg.color = reverted;
        for &v in &seg.vertices {
            color[v] = Some(reverted);
        }
    }
    Ok(ColoredForest {
        orientation,
        ell,
        color,
        segments,
        segment_of,
        gray_edges,
    })
}

impl ColoredForest {
    pub fn final_colored_segments(&self) -> impl Iterator<Item = &Segment> {
        self.segments.iter().filter(|s| s.color.is_colored())
    }

    /// Checks that every final red or purple segment is a tree of height
    /// exactly `ell` whose leaves all sit `ell - 1` below its top.
    pub fn check_segments(&self) -> Result<()> {
        let depth = |u: usize| self.orientation.depth[u].unwrap();
        for seg in self.final_colored_segments() {
            let top = depth(seg.top);
            let in_seg = |v: usize| self.segment_of[v] == self.segment_of[seg.top];
            for &v in &seg.vertices {
                let has_child = self.orientation.children[v].iter().any(|&c| in_seg(c));
                if !has_child && top - depth(v) != self.ell - 1 {
                    return Err(Error::Structure(format!(
                        "segment at {} has a leaf {v} at height {}",
                        seg.top,
                        top - depth(v) + 1
                    )));
                }
            }
            if seg.vertices.len() < self.ell {
                return Err(Error::Structure(format!(
                    "segment at {} is too small",
                    seg.top
                )));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct UpstreamViolation {
    pub vertex: usize,
    pub colored: usize,
    pub regular: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct UpstreamReport {
    pub checked: usize,
    pub violations: Vec<UpstreamViolation>,
    /// Smallest colored / regular ratio seen.
    pub min_ratio: Option<f64>,
}

/// Compares, at every non-gray vertex outside `H` of depth at least `ell`,
/// the colored part of its inclusive upstream (whole colored segments inside
/// it) with its regular (non-gray) part, flagging any vertex where
/// colored < regular / 3.
pub fn verify_upstream_bound(cf: &ColoredForest) -> UpstreamReport {
    let o = &cf.orientation;
    let n = o.in_h.len();
    let mut regular = vec![0usize; n];
    let mut colored = vec![0usize; n];
    let mut report = UpstreamReport {
        checked: 0,
        violations: Vec::new(),
        min_ratio: None,
    };
    for &u in &o.upstream_first {
        let c = cf.color[u].unwrap();
        regular[u] += usize::from(c != Color::Gray);
        if let Some(s) = cf.segment_of[u] {
            let seg = &cf.segments[s];
            if seg.top == u && seg.color.is_colored() {
                colored[u] += seg.vertices.len();
            }
        }
        let p = o.parent[u].unwrap();
        if !o.in_h[p] {
            regular[p] += regular[u];
            colored[p] += colored[u];
        }
        // Vertices strictly inside a red segment (depth below ell) hold no
        // whole segment in their upstream; the bound starts at depth ell.
        if c == Color::Gray || o.depth[u].unwrap() < cf.ell {
            continue;
        }
        report.checked += 1;
        let ratio = colored[u] as f64 / regular[u] as f64;
        report.min_ratio = Some(report.min_ratio.map_or(ratio, |m: f64| m.min(ratio)));
        if 3 * colored[u] < regular[u] {
            report.violations.push(UpstreamViolation {
                vertex: u,
                colored: colored[u],
                regular: regular[u],
            });
        }
    }
    report
}
