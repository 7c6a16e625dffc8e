//! Per-node structural features and their quintile binning.

mod binning;
mod local;
mod paths;
mod spectral;

pub use binning::{percentile_bin, percentile_ranks, PercentileBin, PercentileBins};
pub use local::{
    clustering_coefficient, degree_centrality, log_degree, log_triangles, neighbor_degree_stats,
    triangle_counts,
};
pub use paths::{betweenness_centrality, bfs_distances, closeness_centrality, eccentricity};
pub use spectral::{eigenvector_centrality, EigenvectorCentrality, DEFAULT_MAX_ITER, DEFAULT_TOL};

use crate::error::{Error, Result};
use crate::fmt::sig17;
use crate::graph::Graph;
use serde::Serialize;
use std::fmt;
use std::io::Write;
use std::str::FromStr;

/// The ten supported node features.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum FeatureName {
    LogDegree,
    LogTriangles,
    ClusteringCoeff,
    Eccentricity,
    BetweennessCentrality,
    ClosenessCentrality,
    DegreeCentrality,
    EigenvectorCentrality,
    LogMedianNeighborDegree,
    LogStdNeighborDegree,
}

impl FeatureName {
    pub const ALL: [FeatureName; 10] = [
        FeatureName::LogDegree,
        FeatureName::LogTriangles,
        FeatureName::ClusteringCoeff,
        FeatureName::Eccentricity,
        FeatureName::BetweennessCentrality,
        FeatureName::ClosenessCentrality,
        FeatureName::DegreeCentrality,
        FeatureName::EigenvectorCentrality,
        FeatureName::LogMedianNeighborDegree,
        FeatureName::LogStdNeighborDegree,
    ];

    /// Human-readable name used in column headers and rule items.
    pub fn display_name(self) -> &'static str {
        match self {
            FeatureName::LogDegree => "Log Degree",
            FeatureName::LogTriangles => "Log Number of Triangles",
            FeatureName::ClusteringCoeff => "Clustering Coefficient",
            FeatureName::Eccentricity => "Eccentricity",
            FeatureName::BetweennessCentrality => "Betweenness Centrality",
            FeatureName::ClosenessCentrality => "Closeness Centrality",
            FeatureName::DegreeCentrality => "Degree Centrality",
            FeatureName::EigenvectorCentrality => "Eigenvector Centrality",
            FeatureName::LogMedianNeighborDegree => "Log Median Neighbor Degree",
            FeatureName::LogStdNeighborDegree => "Log Std Neighbor Degree",
        }
    }

    fn aliases(self) -> &'static [&'static str] {
        match self {
            FeatureName::LogTriangles => &["logtriangles"],
            FeatureName::ClusteringCoeff => &["clusteringcoeff"],
            _ => &[],
        }
    }
}

impl fmt::Display for FeatureName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.display_name())
    }
}

fn squash(s: &str) -> String {
    s.chars().filter(|c| c.is_ascii_alphanumeric()).map(|c| c.to_ascii_lowercase()).collect()
}

impl FromStr for FeatureName {
    type Err = Error;

    /// Accepts the display name or the variant name, ignoring case, spaces
    /// and punctuation.
    fn from_str(s: &str) -> Result<Self> {
        let key = squash(s);
        FeatureName::ALL
            .into_iter()
            .find(|f| {
                squash(f.display_name()) == key
                    || squash(&format!("{f:?}")) == key
                    || f.aliases().contains(&key.as_str())
            })
            .ok_or_else(|| Error::UnknownFeature(s.to_string()))
    }
}

/// Named feature presets.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum FeatureSet {
    /// Clustering coefficient and log degree.
    Two,
    /// Eccentricity, clustering coefficient and log degree.
    Three,
    /// All ten features except eccentricity.
    Nine,
    Ten,
}

impl FeatureSet {
    pub fn names(self) -> Vec<FeatureName> {
        use FeatureName::*;
        match self {
            FeatureSet::Two => vec![ClusteringCoeff, LogDegree],
            FeatureSet::Three => vec![Eccentricity, ClusteringCoeff, LogDegree],
            FeatureSet::Nine => FeatureName::ALL.into_iter().filter(|&f| f != Eccentricity).collect(),
            FeatureSet::Ten => FeatureName::ALL.to_vec(),
        }
    }

    pub fn len(self) -> usize {
        self.names().len()
    }

    pub fn is_empty(self) -> bool {
        false
    }
}

impl FromStr for FeatureSet {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "two" | "2" => Ok(FeatureSet::Two),
            "three" | "3" => Ok(FeatureSet::Three),
            "nine" | "9" => Ok(FeatureSet::Nine),
            "ten" | "10" => Ok(FeatureSet::Ten),
            other => Err(Error::invalid(format!("unknown feature set `{other}`"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct FeatureColumn {
    pub name: String,
    pub values: Vec<f64>,
}

/// Column-labeled per-node feature values. All columns have one finite value
/// per node and names are unique.
#[derive(Clone, Debug, PartialEq)]
pub struct FeatureMatrix {
    node_count: usize,
    columns: Vec<FeatureColumn>,
}

impl FeatureMatrix {
    pub fn new(node_count: usize) -> Self {
        FeatureMatrix { node_count, columns: Vec::new() }
    }

    pub fn push(&mut self, name: impl Into<String>, values: Vec<f64>) -> Result<()> {
        let name = name.into();
        if values.len() != self.node_count {
            return Err(Error::DimensionMismatch { expected: self.node_count, actual: values.len() });
        }
        if self.columns.iter().any(|c| c.name == name) {
            return Err(Error::DuplicateColumn(name));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite(name));
        }
        self.columns.push(FeatureColumn { name, values });
        Ok(())
    }

    pub fn node_count(&self) -> usize {
        self.node_count
    }

    pub fn columns(&self) -> &[FeatureColumn] {
        &self.columns
    }

    pub fn names(&self) -> Vec<&str> {
        self.columns.iter().map(|c| c.name.as_str()).collect()
    }

    pub fn column(&self, name: &str) -> Option<&[f64]> {
        self.columns.iter().find(|c| c.name == name).map(|c| c.values.as_slice())
    }

    /// CSV with header `node_id,<names>` and values at 17 significant digits.
    /// `labels` supplies the node ids; `0..n` is used when absent.
    pub fn write_csv<W: Write>(&self, out: W, labels: Option<&[u64]>) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        let mut header = vec!["node_id".to_string()];
        header.extend(self.columns.iter().map(|c| c.name.clone()));
        w.write_record(&header)?;
        for v in 0..self.node_count {
            let id = labels.map_or(v as u64, |l| l[v]);
            let mut row = vec![id.to_string()];
            row.extend(self.columns.iter().map(|c| sig17(c.values[v])));
            w.write_record(&row)?;
        }
        w.flush()?;
        Ok(())
    }
}

/// Computes the requested features, in the requested order.
pub fn compute_features(g: &Graph, names: &[FeatureName]) -> Result<FeatureMatrix> {
    if names.is_empty() {
        return Err(Error::invalid("no features requested"));
    }
    for (i, a) in names.iter().enumerate() {
        if names[..i].contains(a) {
            return Err(Error::DuplicateColumn(a.display_name().to_string()));
        }
    }
    let wants = |f: FeatureName| names.contains(&f);
    let triangles = (wants(FeatureName::LogTriangles) || wants(FeatureName::ClusteringCoeff))
        .then(|| triangle_counts(g));
    let neighbor = (wants(FeatureName::LogMedianNeighborDegree)
        || wants(FeatureName::LogStdNeighborDegree))
    .then(|| neighbor_degree_stats(g));

    let mut matrix = FeatureMatrix::new(g.node_count());
    for &name in names {
        let values = match name {
            FeatureName::LogDegree => log_degree(g),
            FeatureName::LogTriangles => triangles
                .as_ref()
                .expect("computed above")
                .iter()
                .map(|&t| ((t + 1) as f64).ln())
                .collect(),
            FeatureName::ClusteringCoeff => {
                local::clustering_from_triangles(g, triangles.as_ref().expect("computed above"))
            }
            FeatureName::Eccentricity => eccentricity(g),
            FeatureName::BetweennessCentrality => betweenness_centrality(g),
            FeatureName::ClosenessCentrality => closeness_centrality(g),
            FeatureName::DegreeCentrality => degree_centrality(g),
            FeatureName::EigenvectorCentrality => {
                eigenvector_centrality(g, DEFAULT_MAX_ITER, DEFAULT_TOL).values
            }
            FeatureName::LogMedianNeighborDegree => neighbor.as_ref().expect("computed above").0.clone(),
            FeatureName::LogStdNeighborDegree => neighbor.as_ref().expect("computed above").1.clone(),
        };
        matrix.push(name.display_name(), values)?;
    }
    Ok(matrix)
}
