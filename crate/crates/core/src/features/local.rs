//! Features computable from a node's immediate neighborhood.

use crate::graph::Graph;
use crate::par;

/// `ln(deg + 1)`.
pub fn log_degree(g: &Graph) -> Vec<f64> {
    (0..g.node_count()).map(|v| ((g.degree(v) + 1) as f64).ln()).collect()
}

/// Triangles through each node, by intersecting sorted neighbor lists along
/// every incident edge (each triangle at `v` is seen from both of its edges
/// at `v`).
pub fn triangle_counts(g: &Graph) -> Vec<u64> {
    par::map_indices(g.node_count(), |v| {
        let nv = g.neighbors(v);
        let twice: u64 = nv.iter().map(|&u| sorted_intersection_len(nv, g.neighbors(u))).sum();
        twice / 2
    })
}

fn sorted_intersection_len(a: &[usize], b: &[usize]) -> u64 {
    let (mut i, mut j, mut count) = (0, 0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                count += 1;
                i += 1;
                j += 1;
            }
        }
    }
    count
}

/// `ln(t + 1)` where `t` is the triangle count of the node.
pub fn log_triangles(g: &Graph) -> Vec<f64> {
    triangle_counts(g).into_iter().map(|t| ((t + 1) as f64).ln()).collect()
}

/// Local clustering coefficient; 0 for nodes of degree below 2.
pub fn clustering_coefficient(g: &Graph) -> Vec<f64> {
    clustering_from_triangles(g, &triangle_counts(g))
}

pub(crate) fn clustering_from_triangles(g: &Graph, triangles: &[u64]) -> Vec<f64> {
    triangles
        .iter()
        .enumerate()
        .map(|(v, &t)| {
            let d = g.degree(v) as f64;
            if d < 2.0 {
                0.0
            } else {
                2.0 * t as f64 / (d * (d - 1.0))
            }
        })
        .collect()
}

/// `deg / (n - 1)`; all zeros when `n <= 1`.
pub fn degree_centrality(g: &Graph) -> Vec<f64> {
    let n = g.node_count();
    if n <= 1 {
        return vec![0.0; n];
    }
    (0..n).map(|v| g.degree(v) as f64 / (n - 1) as f64).collect()
}

/// Per node, `(ln(median + 1), ln(std + 1))` of the neighbors' degrees, using
/// the lower median and the population standard deviation. Isolated nodes
/// get `(0, 0)`.
pub fn neighbor_degree_stats(g: &Graph) -> (Vec<f64>, Vec<f64>) {
    let n = g.node_count();
    let mut medians = Vec::with_capacity(n);
    let mut stds = Vec::with_capacity(n);
    let mut buf = Vec::new();
    for v in 0..n {
        buf.clear();
        buf.extend(g.neighbors(v).iter().map(|&u| g.degree(u) as f64));
        if buf.is_empty() {
            medians.push(0.0);
            stds.push(0.0);
            continue;
        }
        buf.sort_by(f64::total_cmp);
        let median = buf[(buf.len() - 1) / 2];
        let mean = buf.iter().sum::<f64>() / buf.len() as f64;
        let var = buf.iter().map(|d| (d - mean) * (d - mean)).sum::<f64>() / buf.len() as f64;
        medians.push((median + 1.0).ln());
        stds.push((var.sqrt() + 1.0).ln());
    }
    (medians, stds)
}
