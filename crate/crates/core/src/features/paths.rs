//! Shortest-path features: eccentricity, closeness and betweenness.

use crate::graph::Graph;
use crate::par;
use std::collections::VecDeque;

pub(crate) const UNREACHED: u32 = u32::MAX;

/// Hop distances from `source`; unreachable nodes hold [`UNREACHED`].
pub fn bfs_distances(g: &Graph, source: usize) -> Vec<u32> {
    let mut dist = vec![UNREACHED; g.node_count()];
    let mut queue = VecDeque::new();
    dist[source] = 0;
    queue.push_back(source);
    while let Some(v) = queue.pop_front() {
        for &w in g.neighbors(v) {
            if dist[w] == UNREACHED {
                dist[w] = dist[v] + 1;
                queue.push_back(w);
            }
        }
    }
    dist
}

/// Largest hop distance to any node in the same connected component.
pub fn eccentricity(g: &Graph) -> Vec<f64> {
    par::map_indices(g.node_count(), |v| {
        bfs_distances(g, v).into_iter().filter(|&d| d != UNREACHED).max().unwrap_or(0) as f64
    })
}

/// Closeness scaled by the reachable fraction:
/// `(r / (n - 1)) * (r / sum_of_distances)`, 0 for nodes that reach nothing.
pub fn closeness_centrality(g: &Graph) -> Vec<f64> {
    let n = g.node_count();
    par::map_indices(n, |v| {
        let (reached, total) = bfs_distances(g, v)
            .into_iter()
            .filter(|&d| d != UNREACHED && d > 0)
            .fold((0u64, 0u64), |(r, s), d| (r + 1, s + d as u64));
        if reached == 0 {
            return 0.0;
        }
        let r = reached as f64;
        (r / (n - 1) as f64) * (r / total as f64)
    })
}

/// Brandes betweenness, endpoints excluded, normalized by
/// `2 / ((n - 1)(n - 2))`; all zeros for `n < 3`.
pub fn betweenness_centrality(g: &Graph) -> Vec<f64> {
    let n = g.node_count();
    if n < 3 {
        return vec![0.0; n];
    }
    let raw = par::chunked_sum(n, n, |s, acc| accumulate_dependencies(g, s, acc));
    // each unordered pair is visited from both ends
    let scale = 1.0 / ((n - 1) as f64 * (n - 2) as f64);
    raw.into_iter().map(|b| b * scale).collect()
}

fn accumulate_dependencies(g: &Graph, source: usize, acc: &mut [f64]) {
    let n = g.node_count();
    let mut dist = vec![UNREACHED; n];
    let mut sigma = vec![0.0f64; n];
    let mut delta = vec![0.0f64; n];
    let mut order = Vec::with_capacity(n);
    let mut queue = VecDeque::new();

    dist[source] = 0;
    sigma[source] = 1.0;
    queue.push_back(source);
    while let Some(v) = queue.pop_front() {
        order.push(v);
        for &w in g.neighbors(v) {
            if dist[w] == UNREACHED {
                dist[w] = dist[v] + 1;
                queue.push_back(w);
            }
            if dist[w] == dist[v] + 1 {
                sigma[w] += sigma[v];
            }
        }
    }
    for &w in order.iter().rev() {
        for &v in g.neighbors(w) {
            if dist[v] != UNREACHED && dist[v] + 1 == dist[w] {
                delta[v] += sigma[v] / sigma[w] * (1.0 + delta[w]);
            }
        }
        if w != source {
            acc[w] += delta[w];
        }
    }
}
