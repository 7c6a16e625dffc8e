use super::Graph;
use crate::error::{Error, Result};
use serde::Serialize;

/// Default node limit for the exhaustive solver.
pub const DEFAULT_NODE_LIMIT: usize = 60;

/// A clique as sorted node indices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CliqueResult {
    pub nodes: Vec<usize>,
    pub size: usize,
}

impl CliqueResult {
    pub fn new(mut nodes: Vec<usize>) -> Self {
        nodes.sort_unstable();
        let size = nodes.len();
        CliqueResult { nodes, size }
    }

    /// Original ids of the member nodes.
    pub fn labels(&self, g: &Graph) -> Vec<u64> {
        self.nodes.iter().map(|&v| g.label(v)).collect()
    }
}

/// True iff every unordered pair of `nodes` is an edge. Empty sets and
/// singletons are cliques.
pub fn is_clique(g: &Graph, nodes: &[usize]) -> Result<bool> {
    let n = g.node_count();
    if let Some(&bad) = nodes.iter().find(|&&v| v >= n) {
        return Err(Error::NodeOutOfRange { index: bad, node_count: n });
    }
    for (i, &u) in nodes.iter().enumerate() {
        for &v in &nodes[i + 1..] {
            if u == v || !g.has_edge(u, v) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Exact maximum clique by branch and bound with a greedy-coloring bound.
///
/// Candidates are expanded in ascending index order, so the first maximum
/// clique reached is the lexicographically smallest one; later cliques only
/// replace it when strictly larger.
pub fn brute_force_max_clique(g: &Graph, node_limit: usize) -> Result<CliqueResult> {
    let n = g.node_count();
    if n > node_limit {
        return Err(Error::NodeLimitExceeded { node_count: n, limit: node_limit });
    }
    let words = n.div_ceil(64);
    let adj: Vec<Bits> = (0..n)
        .map(|u| {
            let mut b = Bits::empty(words);
            for &v in g.neighbors(u) {
                b.insert(v);
            }
            b
        })
        .collect();
    let mut all = Bits::empty(words);
    for v in 0..n {
        all.insert(v);
    }
    let mut search = Search { adj, best: Vec::new(), current: Vec::new() };
    search.expand(all);
    Ok(CliqueResult::new(search.best))
}

#[derive(Clone)]
struct Bits(Vec<u64>);

impl Bits {
    fn empty(words: usize) -> Self {
        Bits(vec![0; words])
    }

    fn insert(&mut self, v: usize) {
        self.0[v / 64] |= 1 << (v % 64);
    }

    fn is_empty(&self) -> bool {
        self.0.iter().all(|&w| w == 0)
    }

    fn and(&self, other: &Bits) -> Bits {
        Bits(self.0.iter().zip(&other.0).map(|(a, b)| a & b).collect())
    }

    fn and_not(&mut self, other: &Bits) {
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            *a &= !b;
        }
    }

    /// Elements strictly greater than `v`.
    fn above(&self, v: usize) -> Bits {
        let mut out = self.clone();
        let word = v / 64;
        for w in &mut out.0[..word] {
            *w = 0;
        }
        let bit = v % 64;
        out.0[word] &= if bit == 63 { 0 } else { !0u64 << (bit + 1) };
        out
    }

    fn first(&self) -> Option<usize> {
        self.0.iter().enumerate().find(|(_, &w)| w != 0).map(|(i, &w)| i * 64 + w.trailing_zeros() as usize)
    }

    fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().flat_map(|(i, &w)| {
            let mut word = w;
            std::iter::from_fn(move || {
                if word == 0 {
                    return None;
                }
                let t = word.trailing_zeros() as usize;
                word &= word - 1;
                Some(i * 64 + t)
            })
        })
    }
}

struct Search {
    adj: Vec<Bits>,
    best: Vec<usize>,
    current: Vec<usize>,
}

impl Search {
    fn expand(&mut self, candidates: Bits) {
        if self.current.len() > self.best.len() {
            self.best = self.current.clone();
        }
        if candidates.is_empty() {
            return;
        }
        if self.current.len() + self.color_bound(&candidates) <= self.best.len() {
            return;
        }
        let members: Vec<usize> = candidates.iter().collect();
        for (i, &v) in members.iter().enumerate() {
            if self.current.len() + (members.len() - i) <= self.best.len() {
                break;
            }
            let next = candidates.above(v).and(&self.adj[v]);
            self.current.push(v);
            self.expand(next);
            self.current.pop();
        }
    }

    /// Number of color classes in a greedy coloring of `candidates`; an upper
    /// bound on the clique number of the induced subgraph.
    fn color_bound(&self, candidates: &Bits) -> usize {
        let mut uncolored = candidates.clone();
        let mut colors = 0;
        while !uncolored.is_empty() {
            colors += 1;
            let mut available = uncolored.clone();
            while let Some(v) = available.first() {
                let mut single = Bits::empty(available.0.len());
                single.insert(v);
                uncolored.and_not(&single);
                available.and_not(&single);
                available.and_not(&self.adj[v]);
            }
        }
        colors
    }
}
