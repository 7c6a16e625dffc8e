use crate::graph::Graph;

pub const DEFAULT_MAX_ITER: usize = 1000;
pub const DEFAULT_TOL: f64 = 1e-10;

/// Result of power iteration for eigenvector centrality.
#[derive(Clone, Debug, PartialEq)]
pub struct EigenvectorCentrality {
    /// Unit-L2, non-negative.
    pub values: Vec<f64>,
    pub iterations: usize,
    pub converged: bool,
    /// Set when the graph has no edges; `values` is then uniform.
    pub degenerate: bool,
}

/// Leading eigenvector of the adjacency matrix by power iteration from the
/// uniform vector.
///
/// Iterates with `A + I`, which has the same leading eigenvector as `A` but
/// no `-lambda` partner on bipartite graphs, so the iteration settles instead
/// of oscillating.
pub fn eigenvector_centrality(g: &Graph, max_iter: usize, tol: f64) -> EigenvectorCentrality {
    let n = g.node_count();
    if n == 0 {
        return EigenvectorCentrality { values: vec![], iterations: 0, converged: true, degenerate: true };
    }
    let mut x = vec![1.0 / (n as f64).sqrt(); n];
    if g.edge_count() == 0 {
        return EigenvectorCentrality { values: x, iterations: 0, converged: true, degenerate: true };
    }
    let mut next = vec![0.0; n];
    for it in 1..=max_iter.max(1) {
        for v in 0..n {
            next[v] = x[v] + g.neighbors(v).iter().map(|&u| x[u]).sum::<f64>();
        }
        let norm = next.iter().map(|a| a * a).sum::<f64>().sqrt();
        let mut change = 0.0;
        for v in 0..n {
            let y = next[v] / norm;
            change += (y - x[v]) * (y - x[v]);
            x[v] = y;
        }
        if change.sqrt() < tol {
            return EigenvectorCentrality { values: x, iterations: it, converged: true, degenerate: false };
        }
    }
    EigenvectorCentrality { values: x, iterations: max_iter.max(1), converged: false, degenerate: false }
}
