//! Node scores for maximum-clique membership, obtained by projected gradient
//! descent on the quadratic objective
//!
//! ```text
//! L(p) = -p^T W p + beta * p^T W' p
//! ```
//!
//! where `W'` is the complement adjacency, followed by min-max scaling.
//! Nothing here materializes `W'`: `p^T W' p = (sum p)^2 - sum p^2 - p^T W p`.

use crate::error::{Error, Result};
use crate::features::FeatureMatrix;
use crate::fmt::sig17;
use crate::graph::Graph;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::fmt;
use std::io::Write;
use std::str::FromStr;

pub const DEFAULT_BETA: f64 = 0.06;
/// Longer runs push most scores on sparse graphs to the upper bound, and the
/// resulting ties leave the top quintile empty.
pub const DEFAULT_ITERATIONS: usize = 1;

/// Starting point of the descent.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Init {
    /// `deg / max_deg`.
    DegreeProportional,
    /// Independent uniform draws from `[0, 1]`, seeded.
    Uniform,
    /// Mean of the min-max scaled feature columns.
    FeatureLinear,
}

impl fmt::Display for Init {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Init::DegreeProportional => "degree-proportional",
            Init::Uniform => "uniform",
            Init::FeatureLinear => "feature-linear",
        })
    }
}

impl FromStr for Init {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "degree-proportional" | "degree" => Ok(Init::DegreeProportional),
            "uniform" => Ok(Init::Uniform),
            "feature-linear" | "features" => Ok(Init::FeatureLinear),
            other => Err(Error::invalid(format!("unknown init `{other}`"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ScorerConfig {
    pub beta: f64,
    /// `None` selects `1 / (2 (d_max + beta n))`.
    pub step_size: Option<f64>,
    pub iterations: usize,
    pub seed: u64,
    pub init: Init,
}

impl Default for ScorerConfig {
    fn default() -> Self {
        ScorerConfig {
            beta: DEFAULT_BETA,
            step_size: None,
            iterations: DEFAULT_ITERATIONS,
            seed: 0,
            init: Init::DegreeProportional,
        }
    }
}

impl ScorerConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.beta > 0.0 && self.beta.is_finite()) {
            return Err(Error::invalid(format!("beta must be positive, got {}", self.beta)));
        }
        if let Some(step) = self.step_size {
            if !(step > 0.0 && step.is_finite()) {
                return Err(Error::invalid(format!("step_size must be positive, got {step}")));
            }
        }
        if self.iterations == 0 {
            return Err(Error::invalid("iterations must be at least 1"));
        }
        Ok(())
    }

    /// Step used on `g`: the configured value or the descent-safe default.
    pub fn step_for(&self, g: &Graph) -> f64 {
        self.step_size.unwrap_or_else(|| auto_step(g, self.beta))
    }

    /// Parses `key = value` lines (`#` comments). Keys: `beta`, `step_size`
    /// (a number or `auto`), `iterations`, `seed`, `init`. Missing keys keep
    /// their defaults.
    pub fn parse(text: &str) -> Result<ScorerConfig> {
        let mut cfg = ScorerConfig::default();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .or_else(|| line.split_once(':'))
                .ok_or_else(|| Error::parse(line_no, "expected `key = value`"))?;
            let (key, value) = (key.trim(), value.trim());
            let bad = |what: &str| Error::parse(line_no, format!("invalid {what} `{value}`"));
            match key {
                "beta" => cfg.beta = value.parse().map_err(|_| bad("beta"))?,
                "step_size" => {
                    cfg.step_size = if value == "auto" {
                        None
                    } else {
                        Some(value.parse().map_err(|_| bad("step_size"))?)
                    }
                }
                "iterations" => cfg.iterations = value.parse().map_err(|_| bad("iterations"))?,
                "seed" => cfg.seed = value.parse().map_err(|_| bad("seed"))?,
                "init" => cfg.init = value.parse().map_err(|_| bad("init"))?,
                other => return Err(Error::parse(line_no, format!("unknown key `{other}`"))),
            }
        }
        cfg.validate()?;
        Ok(cfg)
    }

    /// Inverse of [`ScorerConfig::parse`].
    pub fn to_text(&self) -> String {
        let step = self.step_size.map_or("auto".to_string(), sig17);
        format!(
            "beta = {}\nstep_size = {}\niterations = {}\nseed = {}\ninit = {}\n",
            sig17(self.beta),
            step,
            self.iterations,
            self.seed,
            self.init
        )
    }
}

/// `1 / (2 (d_max + beta n))`, the reciprocal of a bound on the Hessian norm.
pub fn auto_step(g: &Graph, beta: f64) -> f64 {
    1.0 / (2.0 * (g.max_degree() as f64 + beta * g.node_count() as f64))
}

/// The three parts of the objective.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Loss {
    pub total: f64,
    /// `-p^T W p`.
    pub connectivity: f64,
    /// `p^T W' p`.
    pub violation: f64,
}

fn check_probabilities(g: &Graph, p: &[f64]) -> Result<()> {
    if p.len() != g.node_count() {
        return Err(Error::DimensionMismatch { expected: g.node_count(), actual: p.len() });
    }
    if let Some(bad) = p.iter().find(|v| !(0.0..=1.0).contains(*v)) {
        return Err(Error::invalid(format!("probability {bad} outside [0, 1]")));
    }
    Ok(())
}

fn adjacency_product(g: &Graph, p: &[f64]) -> Vec<f64> {
    (0..g.node_count()).map(|v| g.neighbors(v).iter().map(|&u| p[u]).sum()).collect()
}

pub fn mcp_loss(g: &Graph, p: &[f64], beta: f64) -> Result<Loss> {
    check_probabilities(g, p)?;
    Ok(loss_unchecked(g, p, beta))
}

fn loss_unchecked(g: &Graph, p: &[f64], beta: f64) -> Loss {
    let wp = adjacency_product(g, p);
    let quad: f64 = p.iter().zip(&wp).map(|(a, b)| a * b).sum();
    let sum: f64 = p.iter().sum();
    let sq: f64 = p.iter().map(|a| a * a).sum();
    let violation = sum * sum - sq - quad;
    Loss { total: -quad + beta * violation, connectivity: -quad, violation }
}

/// `grad L = -2 W p + 2 beta (sum(p) 1 - p - W p)`.
pub fn mcp_loss_gradient(g: &Graph, p: &[f64], beta: f64) -> Result<Vec<f64>> {
    check_probabilities(g, p)?;
    Ok(gradient_unchecked(g, p, beta))
}

fn gradient_unchecked(g: &Graph, p: &[f64], beta: f64) -> Vec<f64> {
    let wp = adjacency_product(g, p);
    let sum: f64 = p.iter().sum();
    p.iter()
        .zip(&wp)
        .map(|(&pi, &wpi)| -2.0 * wpi + 2.0 * beta * (sum - pi - wpi))
        .collect()
}

/// Min-max scaled scores in `[0, 1]`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ProbabilityVector {
    pub values: Vec<f64>,
    /// Input was constant; every value is 0.5.
    pub degenerate: bool,
}

impl ProbabilityVector {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// CSV `node_id,probability`.
    pub fn write_csv<W: Write>(&self, out: W, labels: &[u64]) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["node_id", "probability"])?;
        for (v, p) in self.values.iter().enumerate() {
            w.write_record([labels[v].to_string(), p.to_string()])?;
        }
        w.flush()?;
        Ok(())
    }
}

/// `(h - min) / (max - min)`, or all 0.5 when `h` is constant.
pub fn minmax_scale(h: &[f64]) -> ProbabilityVector {
    let min = h.iter().copied().fold(f64::INFINITY, f64::min);
    let max = h.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if h.is_empty() || max == min {
        return ProbabilityVector { values: vec![0.5; h.len()], degenerate: true };
    }
    let span = max - min;
    ProbabilityVector { values: h.iter().map(|v| (v - min) / span).collect(), degenerate: false }
}

fn initial_scores(g: &Graph, f: Option<&FeatureMatrix>, cfg: &ScorerConfig) -> Result<Vec<f64>> {
    let n = g.node_count();
    Ok(match cfg.init {
        Init::DegreeProportional => {
            let max = g.max_degree();
            if max == 0 {
                vec![0.0; n]
            } else {
                (0..n).map(|v| g.degree(v) as f64 / max as f64).collect()
            }
        }
        Init::Uniform => {
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
            (0..n).map(|_| rng.random::<f64>()).collect()
        }
        Init::FeatureLinear => {
            let f = f.ok_or_else(|| Error::invalid("feature-linear init needs a feature matrix"))?;
            if f.node_count() != n {
                return Err(Error::DimensionMismatch { expected: n, actual: f.node_count() });
            }
            if f.columns().is_empty() {
                return Err(Error::invalid("feature-linear init needs at least one column"));
            }
            let mut h = vec![0.0; n];
            for col in f.columns() {
                let scaled = minmax_scale(&col.values);
                for (acc, v) in h.iter_mut().zip(scaled.values) {
                    *acc += v;
                }
            }
            let k = f.columns().len() as f64;
            h.into_iter().map(|v| v / k).collect()
        }
    })
}

/// Runs `cfg.iterations` steps of projected gradient descent from the
/// configured start and returns the raw iterates' losses alongside the final
/// iterate (before scaling).
pub fn descend(g: &Graph, f: Option<&FeatureMatrix>, cfg: &ScorerConfig) -> Result<(Vec<f64>, Vec<f64>)> {
    cfg.validate()?;
    if g.node_count() == 0 {
        return Err(Error::EmptyGraph);
    }
    let step = cfg.step_for(g);
    let mut p = initial_scores(g, f, cfg)?;
    let mut losses = Vec::with_capacity(cfg.iterations + 1);
    losses.push(loss_unchecked(g, &p, cfg.beta).total);
    for _ in 0..cfg.iterations {
        let grad = gradient_unchecked(g, &p, cfg.beta);
        for (pi, gi) in p.iter_mut().zip(grad) {
            *pi = (*pi - step * gi).clamp(0.0, 1.0);
        }
        losses.push(loss_unchecked(g, &p, cfg.beta).total);
    }
    Ok((p, losses))
}

/// Scores every node: projected gradient descent on the objective, then
/// min-max scaling. Deterministic for a fixed graph and configuration.
pub fn optimize_probabilities(
    g: &Graph,
    f: Option<&FeatureMatrix>,
    cfg: &ScorerConfig,
) -> Result<ProbabilityVector> {
    let (h, _) = descend(g, f, cfg)?;
    Ok(minmax_scale(&h))
}
