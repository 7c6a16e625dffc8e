//! Five-way percentile binning of per-node values within one graph.

use super::FeatureMatrix;
use serde::Serialize;
use std::fmt;

/// One of the quintile intervals `[0,20)`, `[20,40)`, `[40,60)`, `[60,80)`, `[80,100]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum PercentileBin {
    P0To20,
    P20To40,
    P40To60,
    P60To80,
    P80To100,
}

impl PercentileBin {
    pub const ALL: [PercentileBin; 5] = [
        PercentileBin::P0To20,
        PercentileBin::P20To40,
        PercentileBin::P40To60,
        PercentileBin::P60To80,
        PercentileBin::P80To100,
    ];

    /// Bin containing a percentile rank in `[0, 100]`.
    pub fn from_rank(rank: f64) -> PercentileBin {
        let idx = ((rank / 20.0).floor().max(0.0) as usize).min(4);
        Self::ALL[idx]
    }

    pub fn index(self) -> usize {
        self as usize
    }

    /// Percent bounds `(lo, hi)`.
    pub fn bounds(self) -> (f64, f64) {
        let lo = 20.0 * self.index() as f64;
        (lo, lo + 20.0)
    }

    /// Rendered as `[lo%, hi%]`.
    pub fn label(self) -> &'static str {
        match self {
            PercentileBin::P0To20 => "[0%, 20%]",
            PercentileBin::P20To40 => "[20%, 40%]",
            PercentileBin::P40To60 => "[40%, 60%]",
            PercentileBin::P60To80 => "[60%, 80%]",
            PercentileBin::P80To100 => "[80%, 100%]",
        }
    }
}

impl fmt::Display for PercentileBin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// Mean-rank percentile of each value: `100 * (below + equal / 2) / n`, where
/// `equal` counts every value tied with it (itself included).
pub fn percentile_ranks(values: &[f64]) -> Vec<f64> {
    let n = values.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
    let mut ranks = vec![0.0; n];
    let mut start = 0;
    while start < n {
        let mut end = start + 1;
        while end < n && values[order[end]] == values[order[start]] {
            end += 1;
        }
        let tied = (end - start) as f64;
        let rank = 100.0 * (start as f64 + 0.5 * tied) / n as f64;
        for &i in &order[start..end] {
            ranks[i] = rank;
        }
        start = end;
    }
    ranks
}

/// Quintile bin of every value.
pub fn percentile_bin(values: &[f64]) -> Vec<PercentileBin> {
    percentile_ranks(values).into_iter().map(PercentileBin::from_rank).collect()
}

/// Per-feature quintile labels for one graph.
#[derive(Clone, Debug, PartialEq)]
pub struct PercentileBins {
    pub node_count: usize,
    pub columns: Vec<(String, Vec<PercentileBin>)>,
}

impl PercentileBins {
    pub fn from_matrix(features: &FeatureMatrix) -> Self {
        let columns = features
            .columns()
            .iter()
            .map(|c| (c.name.clone(), percentile_bin(&c.values)))
            .collect();
        PercentileBins { node_count: features.node_count(), columns }
    }

    /// Number of nodes in each of the five bins for column `col`.
    pub fn counts(&self, col: usize) -> [usize; 5] {
        let mut counts = [0; 5];
        for b in &self.columns[col].1 {
            counts[b.index()] += 1;
        }
        counts
    }
}
