use super::Graph;
use crate::error::{Error, Result};
use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Erdős–Rényi `G(n, edge_prob)`, seeded.
pub fn gnp(n: usize, edge_prob: f64, seed: u64) -> Result<Graph> {
    planted_clique(n, edge_prob, 0, seed).map(|(g, _)| g)
}

/// `G(n, edge_prob)` with a clique forced on `k` nodes chosen uniformly at
/// random. Returns the graph and the sorted planted node set. The same
/// parameters and seed always give the same graph.
pub fn planted_clique(n: usize, edge_prob: f64, k: usize, seed: u64) -> Result<(Graph, Vec<usize>)> {
    if !(0.0..=1.0).contains(&edge_prob) {
        return Err(Error::invalid(format!("edge probability {edge_prob} outside [0, 1]")));
    }
    if k > n {
        return Err(Error::invalid(format!("clique size {k} exceeds node count {n}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut planted: Vec<usize> = sample(&mut rng, n, k).into_vec();
    planted.sort_unstable();
    let mut in_clique = vec![false; n];
    for &v in &planted {
        in_clique[v] = true;
    }
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            let coin = rng.random_bool(edge_prob);
            if coin || (in_clique[u] && in_clique[v]) {
                edges.push((u, v));
            }
        }
    }
    Ok((Graph::from_edges(n, edges)?, planted))
}
