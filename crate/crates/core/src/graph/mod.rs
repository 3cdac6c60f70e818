//! Immutable undirected simple graphs in compressed adjacency form.
//!
//! Vertex ids are `0..n`. Neighbor lists are sorted and free of self-loops and
//! duplicates; every constructor normalizes its input to that form.

mod io;

pub use io::{parse_edge_list, write_edge_list, LoadStats};

use std::collections::VecDeque;

use serde::Serialize;

use crate::error::{Error, Result};

/// Counts of input entries discarded while normalizing to a simple graph.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct Normalization {
    pub duplicates: usize,
    pub self_loops: usize,
}

/// An undirected simple graph stored as CSR.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    offsets: Vec<usize>,
    targets: Vec<usize>,
}

impl Default for Graph {
    fn default() -> Self {
        Graph::empty(0)
    }
}

impl Graph {
    /// `n` isolated vertices.
    pub fn empty(n: usize) -> Self {
        Graph {
            offsets: vec![0; n + 1],
            targets: Vec::new(),
        }
    }

    /// Builds a graph on `n` vertices, dropping self-loops and repeated edges.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        Self::from_edges_normalized(n, edges).map(|(g, _)| g)
    }

    /// Like [`Graph::from_edges`], also reporting what normalization removed.
    pub fn from_edges_normalized<I>(n: usize, edges: I) -> Result<(Self, Normalization)>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut stats = Normalization::default();
        let mut pairs = Vec::new();
        for (u, v) in edges {
            for id in [u, v] {
                if id >= n {
                    return Err(Error::VertexOutOfRange { id, n });
                }
            }
            if u == v {
                stats.self_loops += 1;
                continue;
            }
            pairs.push((u.min(v), u.max(v)));
        }
        pairs.sort_unstable();
        let before = pairs.len();
        pairs.dedup();
        stats.duplicates = before - pairs.len();
        Ok((Self::from_simple_sorted(n, &pairs), stats))
    }

    /// `pairs` must be sorted, deduplicated, with `u < v < n` in each pair.
    pub(crate) fn from_simple_sorted(n: usize, pairs: &[(usize, usize)]) -> Self {
        let mut degree = vec![0usize; n];
        for &(u, v) in pairs {
            degree[u] += 1;
            degree[v] += 1;
        }
        let mut offsets = Vec::with_capacity(n + 1);
        offsets.push(0);
        for d in &degree {
            offsets.push(offsets.last().unwrap() + d);
        }
        let mut cursor = offsets[..n].to_vec();
        let mut targets = vec![0usize; 2 * pairs.len()];
        // First pass writes each list's lower neighbors, second pass the
        // higher ones; both arrive in ascending order since pairs are sorted.
        for &(u, v) in pairs {
            targets[cursor[v]] = u;
            cursor[v] += 1;
        }
        for &(u, v) in pairs {
            targets[cursor[u]] = v;
            cursor[u] += 1;
        }
        let g = Graph { offsets, targets };
        debug_assert!(g.check_invariants().is_ok());
        g
    }

    pub fn n(&self) -> usize {
        self.offsets.len() - 1
    }

    pub fn m(&self) -> usize {
        self.targets.len() / 2
    }

    pub fn degree(&self, v: usize) -> usize {
        self.offsets[v + 1] - self.offsets[v]
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.targets[self.offsets[v]..self.offsets[v + 1]]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.neighbors(u).binary_search(&v).is_ok()
    }

    /// Edges as `(u, v)` with `u < v`, in ascending order.
    ///
    /// The position of an edge in this sequence is its edge index.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n()).flat_map(move |u| {
            self.neighbors(u)
                .iter()
                .copied()
                .filter(move |&v| v > u)
                .map(move |v| (u, v))
        })
    }

    pub fn average_degree(&self) -> f64 {
        if self.n() == 0 {
            0.0
        } else {
            2.0 * self.m() as f64 / self.n() as f64
        }
    }

    /// Full scan of the representation invariants.
    pub fn check_invariants(&self) -> Result<()> {
        let n = self.n();
        for u in 0..n {
            let nbrs = self.neighbors(u);
            for (i, &v) in nbrs.iter().enumerate() {
                if v >= n {
                    return Err(Error::VertexOutOfRange { id: v, n });
                }
                if v == u {
                    return Err(Error::Structure(format!("self-loop at {u}")));
                }
                if i > 0 && nbrs[i - 1] >= v {
                    return Err(Error::Structure(format!(
                        "neighbor list of {u} not strictly increasing"
                    )));
                }
                if !self.has_edge(v, u) {
                    return Err(Error::Structure(format!("edge {u}-{v} not symmetric")));
                }
            }
        }
        if self.targets.len() % 2 != 0 {
            return Err(Error::Structure("odd adjacency total".into()));
        }
        Ok(())
    }
}

/// Connected-component labels.
///
/// Component ids are assigned in increasing order of the smallest vertex each
/// component contains, so id `k` is the `k`-th component met scanning `0..n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentLabeling {
    pub label: Vec<usize>,
    pub sizes: Vec<usize>,
    /// Smallest vertex id in each component.
    pub representative: Vec<usize>,
    /// A maximum-size component; ties go to the smallest id. `None` iff `n = 0`.
    pub largest: Option<usize>,
}

impl ComponentLabeling {
    pub fn count(&self) -> usize {
        self.sizes.len()
    }

    pub fn largest_size(&self) -> usize {
        self.largest.map_or(0, |c| self.sizes[c])
    }

    /// Vertices of component `c`, ascending.
    pub fn members(&self, c: usize) -> Vec<usize> {
        (0..self.label.len())
            .filter(|&v| self.label[v] == c)
            .collect()
    }
}

pub fn connected_components(g: &Graph) -> ComponentLabeling {
    let n = g.n();
    let mut label = vec![usize::MAX; n];
    let mut sizes = Vec::new();
    let mut representative = Vec::new();
    let mut queue = VecDeque::new();
    for s in 0..n {
        if label[s] != usize::MAX {
            continue;
        }
        let id = sizes.len();
        label[s] = id;
        queue.push_back(s);
        let mut size = 0;
        while let Some(u) = queue.pop_front() {
            size += 1;
            for &w in g.neighbors(u) {
                if label[w] == usize::MAX {
                    label[w] = id;
                    queue.push_back(w);
                }
            }
        }
        sizes.push(size);
        representative.push(s);
    }
    let mut largest = None;
    for (c, &s) in sizes.iter().enumerate() {
        if largest.is_none_or(|b: usize| s > sizes[b]) {
            largest = Some(c);
        }
    }
    ComponentLabeling {
        label,
        sizes,
        representative,
        largest,
    }
}

/// Hop distance from the nearest source; `None` marks unreachable vertices.
pub fn bfs_distances(g: &Graph, sources: &[usize]) -> Result<Vec<Option<usize>>> {
    if sources.is_empty() {
        return Err(Error::InvalidArgument("empty source set".into()));
    }
    let n = g.n();
    let mut dist = vec![None; n];
    let mut queue = VecDeque::new();
    for &s in sources {
        if s >= n {
            return Err(Error::VertexOutOfRange { id: s, n });
        }
        if dist[s].is_none() {
            dist[s] = Some(0);
            queue.push_back(s);
        }
    }
    while let Some(u) = queue.pop_front() {
        let d = dist[u].unwrap() + 1;
        for &w in g.neighbors(u) {
            if dist[w].is_none() {
                dist[w] = Some(d);
                queue.push_back(w);
            }
        }
    }
    Ok(dist)
}

/// Subgraph induced by `keep`, with ids compacted in ascending original order.
///
/// Returns the subgraph and the map from new ids to original ids.
pub fn induced_subgraph(g: &Graph, keep: &[usize]) -> Result<(Graph, Vec<usize>)> {
    let n = g.n();
    let mut ids: Vec<usize> = keep.to_vec();
    ids.sort_unstable();
    ids.dedup();
    if let Some(&bad) = ids.iter().find(|&&v| v >= n) {
        return Err(Error::VertexOutOfRange { id: bad, n });
    }
    let mut new_id = vec![usize::MAX; n];
    for (i, &v) in ids.iter().enumerate() {
        new_id[v] = i;
    }
    let mut pairs = Vec::new();
    for (i, &v) in ids.iter().enumerate() {
        for &w in g.neighbors(v) {
            let j = new_id[w];
            if j != usize::MAX && j > i {
                pairs.push((i, j));
            }
        }
    }
    Ok((Graph::from_simple_sorted(ids.len(), &pairs), ids))
}

/// Places the parts side by side, offsetting the ids of part `k` by the total
/// size of parts `0..k`.
pub fn disjoint_union(parts: &[Graph]) -> Graph {
    let n = parts.iter().map(Graph::n).sum();
    let mut pairs = Vec::with_capacity(parts.iter().map(Graph::m).sum());
    let mut offset = 0;
    for g in parts {
        pairs.extend(g.edges().map(|(u, v)| (u + offset, v + offset)));
        offset += g.n();
    }
    Graph::from_simple_sorted(n, &pairs)
}

/// Small named graphs used throughout the tests and examples.
pub mod named {
    use super::Graph;

    pub fn path(n: usize) -> Graph {
        let pairs: Vec<_> = (1..n).map(|v| (v - 1, v)).collect();
        Graph::from_simple_sorted(n, &pairs)
    }

    pub fn cycle(n: usize) -> Graph {
        assert!(n >= 3, "cycle needs at least 3 vertices");
        Graph::from_edges(n, (0..n).map(|v| (v, (v + 1) % n))).unwrap()
    }

    pub fn complete(n: usize) -> Graph {
        let pairs: Vec<_> = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .collect();
        Graph::from_simple_sorted(n, &pairs)
    }

    /// Star with center 0 and `leaves` leaves.
    pub fn star(leaves: usize) -> Graph {
        let pairs: Vec<_> = (1..=leaves).map(|v| (0, v)).collect();
        Graph::from_simple_sorted(leaves + 1, &pairs)
    }
}

#[cfg(test)]
mod tests {
    use super::named::*;
    use super::*;

    #[test]
    fn normalization_drops_loops_and_duplicates() {
        let (g, stats) = Graph::from_edges_normalized(2, [(0, 1), (1, 0), (0, 0)]).unwrap();
        assert_eq!((g.n(), g.m()), (2, 1));
        assert_eq!(
            stats,
            Normalization {
                duplicates: 1,
                self_loops: 1
            }
        );
        assert!(g.check_invariants().is_ok());
    }

    #[test]
    fn out_of_range_endpoint_is_rejected() {
        assert!(matches!(
            Graph::from_edges(3, [(0, 3)]),
            Err(Error::VertexOutOfRange { id: 3, n: 3 })
        ));
    }

    #[test]
    fn components_of_cycle_and_edgeless() {
        let c = connected_components(&cycle(6));
        assert_eq!(c.sizes, vec![6]);
        let e = connected_components(&Graph::empty(5));
        assert_eq!(e.sizes, vec![1; 5]);
        assert_eq!(e.largest, Some(0));
        assert_eq!(connected_components(&Graph::empty(0)).largest, None);
    }

    #[test]
    fn components_tie_break_prefers_vertex_zero() {
        let g = disjoint_union(&[complete(3), complete(3)]);
        let c = connected_components(&g);
        assert_eq!(c.sizes, vec![3, 3]);
        assert_eq!(c.largest, Some(c.label[0]));
        assert_eq!(c.representative, vec![0, 3]);
    }

    #[test]
    fn bfs_examples() {
        let d = bfs_distances(&path(5), &[0]).unwrap();
        assert_eq!(d, (0..5).map(Some).collect::<Vec<_>>());
        let d = bfs_distances(&cycle(6), &[0]).unwrap();
        assert_eq!(d, [0, 1, 2, 3, 2, 1].map(Some).to_vec());
        let g = disjoint_union(&[path(3), path(2)]);
        let d = bfs_distances(&g, &[1]).unwrap();
        assert_eq!(d, vec![Some(1), Some(0), Some(1), None, None]);
        assert!(bfs_distances(&g, &[]).is_err());
    }

    #[test]
    fn induced_subgraph_examples() {
        let (t, map) = induced_subgraph(&complete(4), &[3, 0, 2]).unwrap();
        assert_eq!((t.n(), t.m()), (3, 3));
        assert_eq!(map, vec![0, 2, 3]);
        let g = cycle(5);
        let all: Vec<_> = (0..5).collect();
        let (h, map) = induced_subgraph(&g, &all).unwrap();
        assert_eq!(h, g);
        assert_eq!(map, all);
        let (e, map) = induced_subgraph(&g, &[]).unwrap();
        assert_eq!((e.n(), e.m(), map.len()), (0, 0, 0));
    }

    #[test]
    fn disjoint_union_examples() {
        let g = disjoint_union(&[cycle(3), cycle(3)]);
        assert_eq!((g.n(), g.m(), connected_components(&g).count()), (6, 6, 2));
        let c = cycle(7);
        assert_eq!(disjoint_union(std::slice::from_ref(&c)), c);
        assert_eq!(disjoint_union(&[]), Graph::empty(0));
    }

    #[test]
    fn edges_are_ascending_with_u_less_than_v() {
        let g = complete(4);
        let e: Vec<_> = g.edges().collect();
        assert_eq!(e, vec![(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]);
    }
}
