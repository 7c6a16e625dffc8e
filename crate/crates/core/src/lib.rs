//! Maximum-clique node scoring, greedy clique decoding, and association-rule
//! explanations of the scores in terms of binned structural node features.
//!
//! Built with the `parallel` feature (default), per-node and per-graph loops
//! run on rayon. Floating-point reductions use a fixed chunking, so results
//! are bit-identical with or without the feature.

pub mod decoder;
pub mod error;
pub mod explainer;
pub mod features;
pub mod fmt;
pub mod fpgrowth;
pub mod graph;
pub mod par;
pub mod scattering;
pub mod scorer;

pub use decoder::{decode_clique, DecoderConfig};
pub use error::{Error, Result};
pub use explainer::{explain, ExplainerConfig, ExplanationReport, NamedGraph};
pub use features::{compute_features, FeatureMatrix, FeatureName, FeatureSet};
pub use graph::{CliqueResult, Graph, GraphStats};
pub use scorer::{optimize_probabilities, ProbabilityVector, ScorerConfig};
