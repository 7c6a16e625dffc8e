use crate::manifest::{InputRecord, Manifest};
use crate::{Global, InputFormat, ScorerArgs};
use anyhow::{Context, Result};
use clique_explain::decoder::{decode_clique, CliqueReport, DecoderConfig};
use clique_explain::explainer::{explain as run_explain, ExplainerConfig, MiningScope, NamedGraph};
use clique_explain::features::{compute_features, FeatureSet};
use clique_explain::fpgrowth::write_rules_csv;
use clique_explain::graph::{brute_force_max_clique, load_dimacs_clq, load_edge_list, planted_clique, write_dimacs_clq};
use clique_explain::par;
use clique_explain::scorer::{optimize_probabilities, Init, ScorerConfig};
use clique_explain::Graph;
use serde::Serialize;
use std::fmt;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

/// Bad flag values or configuration files.
#[derive(Debug)]
pub struct ConfigError(pub String);

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for ConfigError {}

const GRAPH_EXTENSIONS: [&str; 5] = ["clq", "col", "txt", "edges", "el"];

/// Finds an input: as given, then under `CLIQUE_EXPLAIN_DATA`.
fn resolve(path: &Path) -> Result<PathBuf> {
    if path.exists() {
        return Ok(path.to_path_buf());
    }
    if let Some(root) = std::env::var_os("CLIQUE_EXPLAIN_DATA") {
        let candidate = Path::new(&root).join(path);
        if candidate.exists() {
            return Ok(candidate);
        }
    }
    Err(std::io::Error::new(std::io::ErrorKind::NotFound, format!("input {} not found", path.display())).into())
}

/// Expands directories into their graph files, sorted by name.
fn expand(inputs: &[PathBuf]) -> Result<Vec<PathBuf>> {
    let mut files = Vec::new();
    for input in inputs {
        let path = resolve(input)?;
        if path.is_dir() {
            let mut found: Vec<PathBuf> = std::fs::read_dir(&path)
                .with_context(|| format!("listing {}", path.display()))?
                .filter_map(|e| e.ok().map(|e| e.path()))
                .filter(|p| {
                    p.is_file()
                        && p.extension().and_then(|e| e.to_str()).is_some_and(|e| GRAPH_EXTENSIONS.contains(&e))
                })
                .collect();
            found.sort();
            files.extend(found);
        } else {
            files.push(path);
        }
    }
    Ok(files)
}

pub struct Loaded {
    pub name: String,
    pub path: PathBuf,
    pub graph: Graph,
}

fn load(global: &Global, inputs: &[PathBuf], manifest: &mut Manifest) -> Result<Vec<Loaded>> {
    let files = expand(inputs)?;
    if files.is_empty() {
        return Err(ConfigError("no graph files found in the inputs".into()).into());
    }
    let mut loaded = Vec::with_capacity(files.len());
    let mut used = std::collections::HashSet::new();
    for path in files {
        let text = std::fs::read_to_string(&path).with_context(|| format!("reading {}", path.display()))?;
        let ext = path.extension().and_then(|e| e.to_str()).unwrap_or("");
        let dimacs = match global.format {
            InputFormat::Dimacs => true,
            InputFormat::Edges => false,
            InputFormat::Auto => ext == "clq" || ext == "col",
        };
        let graph = if dimacs { load_dimacs_clq(&text) } else { load_edge_list(&text) }
            .with_context(|| format!("loading {}", path.display()))?;
        let stem = path.file_stem().and_then(|s| s.to_str()).unwrap_or("graph").to_string();
        let mut name = stem.clone();
        let mut k = 2;
        while !used.insert(name.clone()) {
            name = format!("{stem}-{k}");
            k += 1;
        }
        manifest.inputs.push(InputRecord {
            path: path.display().to_string(),
            nodes: graph.node_count(),
            edges: graph.edge_count(),
        });
        loaded.push(Loaded { name, path, graph });
    }
    Ok(loaded)
}

/// Collects output files under `--out`, or nothing when writing to stdout.
struct Sink {
    dir: Option<PathBuf>,
}

impl Sink {
    fn new(global: &Global) -> Result<Sink> {
        if let Some(dir) = &global.out {
            std::fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
        }
        Ok(Sink { dir: global.out.clone() })
    }

    fn write(&self, manifest: &mut Manifest, name: &str, bytes: &[u8]) -> Result<()> {
        let dir = self.dir.as_ref().expect("file output needs --out");
        let path = dir.join(name);
        std::fs::write(&path, bytes).with_context(|| format!("writing {}", path.display()))?;
        manifest.outputs.push(name.to_string());
        Ok(())
    }

    fn finish(&self, mut manifest: Manifest) -> Result<()> {
        if self.dir.is_some() {
            manifest.outputs.sort();
            let mut text = serde_json::to_string_pretty(&manifest)?;
            text.push('\n');
            self.write(&mut manifest, "manifest.json", text.as_bytes())?;
        }
        Ok(())
    }
}

fn scorer_config(args: &ScorerArgs, global: &Global) -> Result<ScorerConfig> {
    let mut cfg = match &args.config {
        Some(path) => {
            let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            ScorerConfig::parse(&text).with_context(|| format!("scorer config {}", path.display()))?
        }
        None => ScorerConfig::default(),
    };
    if let Some(beta) = args.beta {
        cfg.beta = beta;
    }
    if let Some(it) = args.iterations {
        cfg.iterations = it;
    }
    if args.step_size.is_some() {
        cfg.step_size = args.step_size;
    }
    if let Some(init) = &args.init {
        cfg.init = init.parse::<Init>()?;
    }
    if let Some(seed) = global.seed {
        cfg.seed = seed;
    }
    cfg.validate()?;
    Ok(cfg)
}

fn stdout_write(bytes: &[u8]) -> Result<()> {
    let mut out = std::io::stdout().lock();
    out.write_all(bytes)?;
    out.flush()?;
    Ok(())
}

pub fn features(global: &Global, argv: &[String], set: FeatureSet, inputs: &[PathBuf]) -> Result<()> {
    let sink = Sink::new(global)?;
    let mut manifest = Manifest::new("features", argv, global.seed.unwrap_or(0), global.jobs);
    manifest.config = serde_json::json!({ "set": set });
    let start = Instant::now();
    let graphs = load(global, inputs, &mut manifest)?;
    manifest.stage("load", start);
    if sink.dir.is_none() && graphs.len() > 1 {
        return Err(ConfigError("several inputs need --out".into()).into());
    }
    let names = set.names();
    let start = Instant::now();
    let tables = par::map_slice(&graphs, |l| -> Result<Vec<u8>> {
        let m = compute_features(&l.graph, &names).with_context(|| format!("features of {}", l.name))?;
        let mut buf = Vec::new();
        m.write_csv(&mut buf, Some(l.graph.labels()))?;
        Ok(buf)
    });
    manifest.stage("features", start);
    for (l, table) in graphs.iter().zip(tables) {
        let table = table?;
        match sink.dir {
            Some(_) => sink.write(&mut manifest, &format!("{}.features.csv", l.name), &table)?,
            None => stdout_write(&table)?,
        }
    }
    sink.finish(manifest)
}

#[derive(Serialize)]
struct InstanceClique<'a> {
    instance: &'a str,
    size: usize,
    nodes: &'a [u64],
}

/// Rows of the instance table.
struct SummaryRow {
    instance: String,
    nodes: usize,
    edges: usize,
    density: f64,
    clique: usize,
}

const SUMMARY_HEADER: [&str; 5] = ["Instance", "Number of Nodes", "Number of Edges", "Density", "Clique Size"];

fn summary_cells(rows: &[SummaryRow]) -> Vec<[String; 5]> {
    rows.iter()
        .map(|r| {
            [
                r.instance.clone(),
                r.nodes.to_string(),
                r.edges.to_string(),
                format!("{:.4}", r.density),
                r.clique.to_string(),
            ]
        })
        .collect()
}

fn summary_table(rows: &[SummaryRow]) -> String {
    let cells = summary_cells(rows);
    let mut widths = SUMMARY_HEADER.map(str::len);
    for row in &cells {
        for (w, c) in widths.iter_mut().zip(row) {
            *w = (*w).max(c.len());
        }
    }
    let line = |row: &[String]| {
        let parts: Vec<String> = row
            .iter()
            .enumerate()
            .map(|(i, c)| if i == 0 { format!("{c:<w$}", w = widths[i]) } else { format!("{c:>w$}", w = widths[i]) })
            .collect();
        parts.join("  ").trim_end().to_string() + "\n"
    };
    let mut out = line(&SUMMARY_HEADER.map(String::from));
    for row in &cells {
        out += &line(row);
    }
    out
}

fn summary_csv(rows: &[SummaryRow]) -> Result<Vec<u8>> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(SUMMARY_HEADER)?;
    for row in summary_cells(rows) {
        w.write_record(&row)?;
    }
    w.into_inner().map_err(|e| anyhow::anyhow!("{e}"))
}

pub fn solve(
    global: &Global,
    argv: &[String],
    scorer: &ScorerArgs,
    num_starts: usize,
    set: FeatureSet,
    inputs: &[PathBuf],
) -> Result<()> {
    let sink = Sink::new(global)?;
    let cfg = scorer_config(scorer, global)?;
    let decoder = DecoderConfig { num_starts };
    let mut manifest = Manifest::new("solve", argv, cfg.seed, global.jobs);
    manifest.config = serde_json::json!({ "scorer": cfg, "num_starts": num_starts, "set": set });
    let start = Instant::now();
    let graphs = load(global, inputs, &mut manifest)?;
    manifest.stage("load", start);
    let names = set.names();
    let start = Instant::now();
    let results = par::map_slice(&graphs, |l| -> Result<_> {
        let features = match cfg.init {
            Init::FeatureLinear => Some(compute_features(&l.graph, &names)?),
            _ => None,
        };
        let p = optimize_probabilities(&l.graph, features.as_ref(), &cfg)?;
        let clique = decode_clique(&l.graph, &p.values, &decoder)?;
        Ok((p, clique))
    });
    manifest.stage("score-and-decode", start);
    let mut rows = Vec::new();
    let mut lines = String::new();
    for (l, result) in graphs.iter().zip(results) {
        let (p, clique) = result.with_context(|| format!("solving {}", l.path.display()))?;
        let report = CliqueReport::new(&l.graph, &clique);
        if sink.dir.is_some() {
            let mut csv = Vec::new();
            p.write_csv(&mut csv, l.graph.labels())?;
            sink.write(&mut manifest, &format!("{}.probabilities.csv", l.name), &csv)?;
            let json = serde_json::to_string(&report)? + "\n";
            sink.write(&mut manifest, &format!("{}.clique.json", l.name), json.as_bytes())?;
        } else {
            let line = InstanceClique { instance: &l.name, size: report.size, nodes: &report.nodes };
            lines += &(serde_json::to_string(&line)? + "\n");
        }
        let stats = l.graph.stats();
        rows.push(SummaryRow {
            instance: l.name.clone(),
            nodes: stats.node_count,
            edges: stats.edge_count,
            density: stats.density,
            clique: clique.size,
        });
    }
    if sink.dir.is_some() {
        sink.write(&mut manifest, "summary.csv", &summary_csv(&rows)?)?;
    }
    stdout_write((summary_table(&rows) + &lines).as_bytes())?;
    sink.finish(manifest)
}

pub fn explain(
    global: &Global,
    argv: &[String],
    scorer: &ScorerArgs,
    set: FeatureSet,
    cfg: ExplainerConfig,
    dataset: Option<String>,
    inputs: &[PathBuf],
) -> Result<()> {
    let sink = Sink::new(global)?;
    let scorer_cfg = scorer_config(scorer, global)?;
    cfg.validate()?;
    let mut manifest = Manifest::new("explain", argv, scorer_cfg.seed, global.jobs);
    manifest.config = serde_json::json!({ "scorer": scorer_cfg, "explainer": cfg, "set": set });
    let start = Instant::now();
    let graphs = load(global, inputs, &mut manifest)?;
    manifest.stage("load", start);
    let dataset = dataset.unwrap_or_else(|| default_dataset(inputs));
    let named: Vec<NamedGraph> = graphs.into_iter().map(|l| NamedGraph::new(l.name, l.graph)).collect();
    let start = Instant::now();
    let report = run_explain(&dataset, &named, &set.names(), &scorer_cfg, &cfg)?;
    manifest.stage("explain", start);

    let mut csv = Vec::new();
    report.write_csv(&mut csv)?;
    match sink.dir {
        Some(_) => {
            sink.write(&mut manifest, "report.json", report.to_json()?.as_bytes())?;
            sink.write(&mut manifest, "report.csv", &csv)?;
            for section in &report.sections {
                let mut rules = Vec::new();
                write_rules_csv(&section.mined_rules, &mut rules)?;
                let name = match cfg.scope {
                    MiningScope::Pooled => "rules.csv".to_string(),
                    MiningScope::PerGraph => format!("{}.rules.csv", section.scope),
                };
                sink.write(&mut manifest, &name, &rules)?;
            }
            let mined: usize = report.sections.iter().map(|s| s.mined_rule_count).sum();
            let selected: usize = report.sections.iter().map(|s| s.selected_rule_count).sum();
            eprintln!(
                "{} graphs, {} transactions, {mined} rules mined, {selected} selected",
                report.graph_count, report.transaction_count
            );
        }
        None => stdout_write(&csv)?,
    }
    sink.finish(manifest)
}

fn default_dataset(inputs: &[PathBuf]) -> String {
    match inputs {
        [single] => single
            .file_stem()
            .or_else(|| single.file_name())
            .and_then(|s| s.to_str())
            .unwrap_or("dataset")
            .to_string(),
        _ => "dataset".to_string(),
    }
}

pub fn oracle(global: &Global, argv: &[String], node_limit: usize, inputs: &[PathBuf]) -> Result<()> {
    let sink = Sink::new(global)?;
    let mut manifest = Manifest::new("oracle", argv, global.seed.unwrap_or(0), global.jobs);
    manifest.config = serde_json::json!({ "node_limit": node_limit });
    let start = Instant::now();
    let graphs = load(global, inputs, &mut manifest)?;
    manifest.stage("load", start);
    let start = Instant::now();
    let results = par::map_slice(&graphs, |l| brute_force_max_clique(&l.graph, node_limit));
    manifest.stage("search", start);
    let mut lines = String::new();
    for (l, result) in graphs.iter().zip(results) {
        let clique = result.with_context(|| format!("exact clique of {}", l.path.display()))?;
        let report = CliqueReport::new(&l.graph, &clique);
        match sink.dir {
            Some(_) => {
                let json = serde_json::to_string(&report)? + "\n";
                sink.write(&mut manifest, &format!("{}.oracle.json", l.name), json.as_bytes())?;
            }
            None => {
                let line = InstanceClique { instance: &l.name, size: report.size, nodes: &report.nodes };
                lines += &(serde_json::to_string(&line)? + "\n");
            }
        }
    }
    stdout_write(lines.as_bytes())?;
    sink.finish(manifest)
}

pub fn generate(
    global: &Global,
    argv: &[String],
    nodes: usize,
    edge_prob: f64,
    clique: usize,
    count: usize,
) -> Result<()> {
    let sink = Sink::new(global)?;
    if sink.dir.is_none() {
        return Err(ConfigError("generate needs --out".into()).into());
    }
    let seed = global.seed.unwrap_or(0);
    let mut manifest = Manifest::new("generate", argv, seed, global.jobs);
    manifest.config = serde_json::json!({ "nodes": nodes, "edge_prob": edge_prob, "clique": clique, "count": count });
    let width = count.saturating_sub(1).to_string().len();
    for i in 0..count {
        let (g, planted) = planted_clique(nodes, edge_prob, clique, seed.wrapping_add(i as u64))?;
        let name = format!("planted-{i:0width$}");
        sink.write(&mut manifest, &format!("{name}.clq"), write_dimacs_clq(&g).as_bytes())?;
        // DIMACS ids are one-based
        let ids: Vec<usize> = planted.iter().map(|v| v + 1).collect();
        let json = serde_json::to_string(&serde_json::json!({ "planted": ids }))? + "\n";
        sink.write(&mut manifest, &format!("{name}.planted.json"), json.as_bytes())?;
    }
    sink.finish(manifest)
}
