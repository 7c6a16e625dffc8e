//! `clique-explain`: features, clique scores, decoded cliques, exact
//! cliques and rule explanations for graph files.

mod commands;
mod manifest;

use anyhow::Result;
use clap::{Args, Parser, Subcommand, ValueEnum};
use clique_explain::explainer::SortMetric;
use clique_explain::features::FeatureSet;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser, Debug)]
#[command(name = "clique-explain", version, about, args_override_self = true)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Global {
    /// Worker threads; 0 uses every core.
    #[arg(long, global = true, default_value_t = 0)]
    pub jobs: usize,
    /// Seed for every random choice; overrides a config file's seed.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Output directory. Without it results go to stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Input format; `auto` picks DIMACS for `.clq`/`.col`, edge list otherwise.
    #[arg(long, global = true, value_enum, default_value_t = InputFormat::Auto)]
    pub format: InputFormat,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum InputFormat {
    Auto,
    Dimacs,
    Edges,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SetArg {
    Two,
    Three,
    Nine,
    Ten,
}

impl From<SetArg> for FeatureSet {
    fn from(s: SetArg) -> Self {
        match s {
            SetArg::Two => FeatureSet::Two,
            SetArg::Three => FeatureSet::Three,
            SetArg::Nine => FeatureSet::Nine,
            SetArg::Ten => FeatureSet::Ten,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum MetricArg {
    Support,
    Confidence,
    Lift,
}

impl From<MetricArg> for SortMetric {
    fn from(m: MetricArg) -> Self {
        match m {
            MetricArg::Support => SortMetric::Support,
            MetricArg::Confidence => SortMetric::Confidence,
            MetricArg::Lift => SortMetric::Lift,
        }
    }
}

#[derive(Args, Debug, Clone)]
pub struct ScorerArgs {
    /// Scorer config file with `key = value` lines; flags override it.
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long, allow_negative_numbers = true)]
    pub beta: Option<f64>,
    #[arg(long)]
    pub iterations: Option<usize>,
    /// Fixed step size; default is the descent-safe step per graph.
    #[arg(long, allow_negative_numbers = true)]
    pub step_size: Option<f64>,
    /// degree-proportional, uniform or feature-linear.
    #[arg(long)]
    pub init: Option<String>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Per-node feature table.
    Features {
        #[arg(long, value_enum, default_value_t = SetArg::Ten)]
        set: SetArg,
        #[arg(required = true)]
        inputs: Vec<PathBuf>,
    },
    /// Score nodes, decode a clique, and print the instance summary.
    Solve {
        #[command(flatten)]
        scorer: ScorerArgs,
        #[arg(long, default_value_t = clique_explain::decoder::DEFAULT_NUM_STARTS)]
        num_starts: usize,
        /// Feature set used by the feature-linear init.
        #[arg(long, value_enum, default_value_t = SetArg::Ten)]
        set: SetArg,
        #[arg(required = true)]
        inputs: Vec<PathBuf>,
    },
    /// Mine and select rules explaining the scores.
    Explain {
        #[command(flatten)]
        scorer: ScorerArgs,
        #[arg(long, value_enum, default_value_t = SetArg::Ten)]
        set: SetArg,
        #[arg(long, default_value_t = 0.05, allow_negative_numbers = true)]
        min_support: f64,
        #[arg(long, default_value_t = 0.1, allow_negative_numbers = true)]
        min_confidence: f64,
        #[arg(long, default_value_t = 0.01, allow_negative_numbers = true)]
        epsilon: f64,
        #[arg(long, value_enum, default_value_t = MetricArg::Support)]
        metric: MetricArg,
        /// Mine each graph separately instead of pooling.
        #[arg(long)]
        per_graph: bool,
        /// Dataset label in the report.
        #[arg(long)]
        dataset: Option<String>,
        #[arg(required = true)]
        inputs: Vec<PathBuf>,
    },
    /// Exact maximum clique by branch and bound.
    Oracle {
        #[arg(long, default_value_t = clique_explain::graph::DEFAULT_NODE_LIMIT)]
        node_limit: usize,
        #[arg(required = true)]
        inputs: Vec<PathBuf>,
    },
    /// Write planted-clique graphs in DIMACS format.
    Generate {
        #[arg(long, default_value_t = 60)]
        nodes: usize,
        #[arg(long, default_value_t = 0.2)]
        edge_prob: f64,
        #[arg(long, default_value_t = 10)]
        clique: usize,
        #[arg(long, default_value_t = 1)]
        count: usize,
    },
    /// Repeat a run recorded in a manifest.
    Rerun {
        #[arg(long)]
        manifest: PathBuf,
    },
}

/// Exit codes by failure class.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Failure {
    Internal = 1,
    Io = 3,
    Input = 4,
    Config = 5,
    Limit = 6,
}

fn classify(err: &anyhow::Error) -> Failure {
    use clique_explain::Error as E;
    for cause in err.chain() {
        if let Some(e) = cause.downcast_ref::<E>() {
            let mut e = e;
            while let E::InGraph { source, .. } = e {
                e = source;
            }
            return match e {
                E::Io(_) => Failure::Io,
                E::Parse { .. } | E::NodeOutOfRange { .. } | E::Csv(_) | E::Json(_) | E::EmptyGraph => Failure::Input,
                E::NodeLimitExceeded { .. } => Failure::Limit,
                _ => Failure::Config,
            };
        }
        if cause.downcast_ref::<std::io::Error>().is_some() {
            return Failure::Io;
        }
        if cause.downcast_ref::<commands::ConfigError>().is_some() {
            return Failure::Config;
        }
    }
    Failure::Internal
}

fn parse(argv: &[String]) -> std::result::Result<Cli, clap::Error> {
    Cli::try_parse_from(std::iter::once("clique-explain").chain(argv.iter().map(String::as_str)))
}

fn run(cli: Cli, argv: Vec<String>) -> Result<()> {
    let global = cli.global.clone();
    match cli.command {
        Command::Rerun { manifest } => {
            let mut argv = manifest::Manifest::load(&manifest)?.args;
            if let Some(out) = &global.out {
                argv.push("--out".into());
                argv.push(out.display().to_string());
            }
            let cli = parse(&argv).map_err(|e| commands::ConfigError(format!("manifest arguments: {e}")))?;
            if matches!(cli.command, Command::Rerun { .. }) {
                return Err(commands::ConfigError("a manifest cannot record another rerun".into()).into());
            }
            run(cli, argv)
        }
        command => clique_explain::par::with_threads(global.jobs, || dispatch(command, &global, argv)),
    }
}

fn dispatch(command: Command, global: &Global, argv: Vec<String>) -> Result<()> {
    match command {
        Command::Features { set, inputs } => commands::features(global, &argv, set.into(), &inputs),
        Command::Solve { scorer, num_starts, set, inputs } => {
            commands::solve(global, &argv, &scorer, num_starts, set.into(), &inputs)
        }
        Command::Explain {
            scorer,
            set,
            min_support,
            min_confidence,
            epsilon,
            metric,
            per_graph,
            dataset,
            inputs,
        } => {
            let cfg = clique_explain::ExplainerConfig {
                min_support,
                min_confidence,
                epsilon,
                sort_metric: metric.into(),
                scope: if per_graph {
                    clique_explain::explainer::MiningScope::PerGraph
                } else {
                    clique_explain::explainer::MiningScope::Pooled
                },
                ..Default::default()
            };
            commands::explain(global, &argv, &scorer, set.into(), cfg, dataset, &inputs)
        }
        Command::Oracle { node_limit, inputs } => commands::oracle(global, &argv, node_limit, &inputs),
        Command::Generate { nodes, edge_prob, clique, count } => {
            commands::generate(global, &argv, nodes, edge_prob, clique, count)
        }
        Command::Rerun { .. } => unreachable!("handled by run"),
    }
}

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().skip(1).collect();
    let cli = match parse(&argv) {
        Ok(cli) => cli,
        Err(e) => e.exit(),
    };
    match run(cli, argv) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            let class = classify(&err);
            eprintln!("error: {err:#}");
            ExitCode::from(class as u8)
        }
    }
}
