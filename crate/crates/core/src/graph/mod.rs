//! Undirected, unweighted graphs in compressed adjacency form.

mod clique;
mod generate;
mod io;

pub use clique::{brute_force_max_clique, is_clique, CliqueResult, DEFAULT_NODE_LIMIT};
pub use generate::{gnp, planted_clique};
pub use io::{
    load_dimacs_clq, load_edge_list, read_dimacs_clq, read_edge_list, write_dimacs_clq,
    write_edge_list, LoadDiagnostics,
};

use crate::error::{Error, Result};
use serde::Serialize;

/// Immutable simple graph. Neighbor lists are sorted and free of self-loops
/// and duplicates; every edge is stored in both directions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    offsets: Vec<usize>,
    targets: Vec<usize>,
    labels: Vec<u64>,
}

impl Graph {
    /// Builds a graph on `n` nodes labeled `0..n`. Duplicate and reversed
    /// edges collapse; self-loops and out-of-range endpoints are rejected.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Graph>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let labels = (0..n as u64).collect();
        Self::from_labeled_edges(labels, edges).map(|(g, _)| g)
    }

    /// Like [`Graph::from_edges`] but with explicit original ids. Returns the
    /// graph and the number of duplicate edge entries dropped.
    pub(crate) fn from_labeled_edges<I>(labels: Vec<u64>, edges: I) -> Result<(Graph, usize)>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let n = labels.len();
        let mut pairs = Vec::new();
        for (u, v) in edges {
            for x in [u, v] {
                if x >= n {
                    return Err(Error::NodeOutOfRange { index: x, node_count: n });
                }
            }
            if u == v {
                return Err(Error::invalid(format!("self-loop on node {u}")));
            }
            pairs.push((u.min(v), u.max(v)));
        }
        let raw = pairs.len();
        pairs.sort_unstable();
        pairs.dedup();
        let duplicates = raw - pairs.len();

        let mut degree = vec![0usize; n];
        for &(u, v) in &pairs {
            degree[u] += 1;
            degree[v] += 1;
        }
        let mut offsets = vec![0usize; n + 1];
        for i in 0..n {
            offsets[i + 1] = offsets[i] + degree[i];
        }
        let mut fill = offsets[..n].to_vec();
        let mut targets = vec![0usize; offsets[n]];
        for &(u, v) in &pairs {
            targets[fill[u]] = v;
            fill[u] += 1;
            targets[fill[v]] = u;
            fill[v] += 1;
        }
        for i in 0..n {
            targets[offsets[i]..offsets[i + 1]].sort_unstable();
        }
        Ok((Graph { offsets, targets, labels }, duplicates))
    }

    /// Complete graph on `n` nodes.
    pub fn complete(n: usize) -> Graph {
        let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
        Graph::from_edges(n, edges).expect("complete graph edges are valid")
    }

    /// Path `0 - 1 - ... - (n-1)`.
    pub fn path(n: usize) -> Graph {
        Graph::from_edges(n, (1..n).map(|v| (v - 1, v))).expect("path edges are valid")
    }

    /// Cycle on `n >= 3` nodes.
    pub fn cycle(n: usize) -> Graph {
        let edges = (0..n).map(|v| (v, (v + 1) % n));
        Graph::from_edges(n, edges).expect("cycle edges are valid")
    }

    /// Star with center 0 and `n - 1` leaves.
    pub fn star(n: usize) -> Graph {
        Graph::from_edges(n, (1..n).map(|v| (0, v))).expect("star edges are valid")
    }

    pub fn petersen() -> Graph {
        let outer = (0..5).map(|i| (i, (i + 1) % 5));
        let spokes = (0..5).map(|i| (i, i + 5));
        let inner = (0..5).map(|i| (5 + i, 5 + (i + 2) % 5));
        Graph::from_edges(10, outer.chain(spokes).chain(inner)).expect("petersen edges are valid")
    }

    /// Returns a copy carrying the given original ids.
    pub fn with_labels(mut self, labels: Vec<u64>) -> Result<Graph> {
        if labels.len() != self.node_count() {
            return Err(Error::DimensionMismatch {
                expected: self.node_count(),
                actual: labels.len(),
            });
        }
        self.labels = labels;
        Ok(self)
    }

    #[inline]
    pub fn node_count(&self) -> usize {
        self.labels.len()
    }

    #[inline]
    pub fn edge_count(&self) -> usize {
        self.targets.len() / 2
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.targets[self.offsets[v]..self.offsets[v + 1]]
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.offsets[v + 1] - self.offsets[v]
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.node_count()).map(|v| self.degree(v)).collect()
    }

    pub fn max_degree(&self) -> usize {
        (0..self.node_count()).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.neighbors(u).binary_search(&v).is_ok()
    }

    /// Original id of node `v` (the id in the input file, or `v` itself).
    #[inline]
    pub fn label(&self, v: usize) -> u64 {
        self.labels[v]
    }

    pub fn labels(&self) -> &[u64] {
        &self.labels
    }

    /// Each undirected edge once, as `(u, v)` with `u < v`, in ascending order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.node_count())
            .flat_map(move |u| self.neighbors(u).iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    /// Graph obtained by renaming node `v` to `perm[v]`.
    pub fn permuted(&self, perm: &[usize]) -> Result<Graph> {
        let n = self.node_count();
        if perm.len() != n {
            return Err(Error::DimensionMismatch { expected: n, actual: perm.len() });
        }
        let mut labels = vec![0u64; n];
        for v in 0..n {
            labels[perm[v]] = self.labels[v];
        }
        let edges = self.edges().map(|(u, v)| (perm[u], perm[v]));
        Graph::from_labeled_edges(labels, edges).map(|(g, _)| g)
    }

    pub fn stats(&self) -> GraphStats {
        stats(self)
    }
}

/// Size and density summary.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct GraphStats {
    pub node_count: usize,
    pub edge_count: usize,
    pub density: f64,
}

/// Edge density `2m / (n(n-1))`, defined as 0 for graphs with fewer than two nodes.
pub fn stats(g: &Graph) -> GraphStats {
    let n = g.node_count();
    let m = g.edge_count();
    let density = if n < 2 { 0.0 } else { 2.0 * m as f64 / (n as f64 * (n as f64 - 1.0)) };
    GraphStats { node_count: n, edge_count: m, density }
}
