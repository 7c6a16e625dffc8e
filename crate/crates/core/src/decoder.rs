//! Greedy clique construction from node scores.

use crate::error::{Error, Result};
use crate::graph::{CliqueResult, Graph};
use crate::par;
use serde::Serialize;

pub const DEFAULT_NUM_STARTS: usize = 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct DecoderConfig {
    /// How many leading positions of the score order are tried as seeds.
    pub num_starts: usize,
}

impl Default for DecoderConfig {
    fn default() -> Self {
        DecoderConfig { num_starts: DEFAULT_NUM_STARTS }
    }
}

/// Nodes by descending score, ties by ascending index.
pub fn score_order(p: &[f64]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..p.len()).collect();
    order.sort_by(|&a, &b| p[b].total_cmp(&p[a]).then(a.cmp(&b)));
    order
}

/// For each of the first `num_starts` nodes in score order: start a clique
/// with that node, then walk the whole order once and admit every node
/// adjacent to all current members. Returns the largest clique found; on
/// equal sizes the earliest start wins.
pub fn decode_clique(g: &Graph, p: &[f64], cfg: &DecoderConfig) -> Result<CliqueResult> {
    let n = g.node_count();
    if n == 0 {
        return Err(Error::EmptyGraph);
    }
    if p.len() != n {
        return Err(Error::DimensionMismatch { expected: n, actual: p.len() });
    }
    if cfg.num_starts == 0 {
        return Err(Error::invalid("num_starts must be at least 1"));
    }
    let order = score_order(p);
    let starts = cfg.num_starts.min(n);
    let found = par::map_indices(starts, |s| grow(g, &order, order[s]));
    let best = found
        .into_iter()
        .enumerate()
        .max_by(|(ia, a), (ib, b)| a.len().cmp(&b.len()).then(ib.cmp(ia)))
        .map(|(_, c)| c)
        .expect("at least one start");
    Ok(CliqueResult::new(best))
}

fn grow(g: &Graph, order: &[usize], seed: usize) -> Vec<usize> {
    // hits[v] = number of current members adjacent to v
    let mut hits = vec![0u32; g.node_count()];
    let mut clique = Vec::new();
    let admit = |v: usize, clique: &mut Vec<usize>, hits: &mut [u32]| {
        clique.push(v);
        for &u in g.neighbors(v) {
            hits[u] += 1;
        }
    };
    admit(seed, &mut clique, &mut hits);
    for &v in order {
        if v != seed && hits[v] as usize == clique.len() {
            admit(v, &mut clique, &mut hits);
        }
    }
    clique
}

/// JSON-ready clique with original node ids.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CliqueReport {
    pub size: usize,
    pub nodes: Vec<u64>,
}

impl CliqueReport {
    pub fn new(g: &Graph, clique: &CliqueResult) -> Self {
        CliqueReport { size: clique.size, nodes: clique.labels(g) }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{is_clique, planted_clique};

    #[test]
    fn complete_graph_gives_everything() {
        let g = Graph::complete(7);
        let p = [0.1, 0.9, 0.3, 0.3, 0.0, 1.0, 0.5];
        let c = decode_clique(&g, &p, &DecoderConfig::default()).unwrap();
        assert_eq!(c.nodes, (0..7).collect::<Vec<_>>());
    }

    #[test]
    fn edgeless_graph_gives_argmax() {
        let g = Graph::from_edges(4, []).unwrap();
        let c = decode_clique(&g, &[0.2, 0.8, 0.8, 0.1], &DecoderConfig::default()).unwrap();
        assert_eq!(c.nodes, vec![1]);
    }

    #[test]
    fn oracle_scores_recover_planted_set() {
        let (g, planted) = planted_clique(40, 0.2, 7, 11).unwrap();
        let mut p = vec![0.0; 40];
        for &v in &planted {
            p[v] = 1.0;
        }
        let c = decode_clique(&g, &p, &DecoderConfig { num_starts: 1 }).unwrap();
        assert_eq!(c.nodes, planted);
    }

    #[test]
    fn later_starts_can_win() {
        // path 0-1-2 plus triangle 3-4-5; scores favour the path end
        let g = Graph::from_edges(6, [(0, 1), (1, 2), (3, 4), (4, 5), (3, 5)]).unwrap();
        let p = [1.0, 0.9, 0.8, 0.7, 0.6, 0.5];
        let one = decode_clique(&g, &p, &DecoderConfig { num_starts: 1 }).unwrap();
        assert_eq!(one.nodes, vec![0, 1]);
        let four = decode_clique(&g, &p, &DecoderConfig { num_starts: 4 }).unwrap();
        assert_eq!(four.nodes, vec![3, 4, 5]);
        assert!(is_clique(&g, &four.nodes).unwrap());
    }

    #[test]
    fn validation() {
        let g = Graph::path(3);
        assert!(decode_clique(&g, &[0.0; 2], &DecoderConfig::default()).is_err());
        assert!(decode_clique(&g, &[0.0; 3], &DecoderConfig { num_starts: 0 }).is_err());
        assert!(matches!(
            decode_clique(&Graph::complete(0), &[], &DecoderConfig::default()),
            Err(Error::EmptyGraph)
        ));
    }

    #[test]
    fn report_uses_original_ids() {
        let g = Graph::complete(2).with_labels(vec![7, 3]).unwrap();
        let c = decode_clique(&g, &[0.5, 0.5], &DecoderConfig::default()).unwrap();
        let json = serde_json::to_string(&CliqueReport::new(&g, &c)).unwrap();
        assert_eq!(json, r#"{"size":2,"nodes":[7,3]}"#);
    }
}
