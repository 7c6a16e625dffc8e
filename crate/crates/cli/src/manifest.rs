use anyhow::{Context, Result};
use serde::{Deserialize, Serialize};
use std::path::Path;
use std::time::Instant;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct InputRecord {
    pub path: String,
    pub nodes: usize,
    pub edges: usize,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Stage {
    pub name: String,
    pub millis: f64,
}

/// Everything needed to repeat a run, plus what it produced and how long the
/// stages took.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Manifest {
    pub tool: String,
    pub version: String,
    pub command: String,
    /// Command-line arguments after the program name.
    pub args: Vec<String>,
    pub seed: u64,
    pub jobs: usize,
    pub parallel_build: bool,
    pub config: serde_json::Value,
    pub inputs: Vec<InputRecord>,
    pub outputs: Vec<String>,
    pub stages: Vec<Stage>,
}

impl Manifest {
    pub fn new(command: &str, args: &[String], seed: u64, jobs: usize) -> Self {
        Manifest {
            tool: env!("CARGO_PKG_NAME").to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            command: command.to_string(),
            args: args.to_vec(),
            seed,
            jobs,
            parallel_build: clique_explain::par::is_parallel(),
            config: serde_json::Value::Null,
            inputs: Vec::new(),
            outputs: Vec::new(),
            stages: Vec::new(),
        }
    }

    pub fn load(path: &Path) -> Result<Manifest> {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading manifest {}", path.display()))?;
        serde_json::from_str(&text)
            .map_err(|e| crate::commands::ConfigError(format!("manifest {}: {e}", path.display())).into())
    }

    /// Records the wall time since `start` under `name`.
    pub fn stage(&mut self, name: &str, start: Instant) {
        self.stages.push(Stage { name: name.to_string(), millis: start.elapsed().as_secs_f64() * 1e3 });
    }
}
