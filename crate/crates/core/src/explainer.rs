//! Rule-based explanations of node scores.
//!
//! Per graph: compute node features, score the nodes, bin features and
//! scores into quintiles, and turn every node whose score lands in the top
//! or bottom quintile into a transaction of feature-bin items plus one score
//! item. Transactions are pooled across graphs, mined with FP-Growth, and a
//! greedy pass keeps the best rules whose antecedent intervals do not
//! overlap.

use crate::error::{Error, Result};
use crate::features::{compute_features, percentile_bin, FeatureName, PercentileBin, PercentileBins};
use crate::fpgrowth::{self, generate_rules, AssociationRule, TransactionDB};
use crate::graph::Graph;
use crate::par;
use crate::scorer::{optimize_probabilities, ScorerConfig};
use serde::Serialize;
use std::cmp::Ordering;
use std::fmt;
use std::io::Write;
use std::str::FromStr;

/// Score item for nodes in the top quintile of their graph.
pub const TOP_ITEM: &str = "MC_Prob_Top_20P";
/// Score item for nodes in the bottom quintile of their graph.
pub const BOTTOM_ITEM: &str = "MC_Prob_Bottom_20P";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SortMetric {
    Support,
    Confidence,
    Lift,
}

impl SortMetric {
    pub fn of(self, rule: &AssociationRule) -> f64 {
        match self {
            SortMetric::Support => rule.support,
            SortMetric::Confidence => rule.confidence,
            SortMetric::Lift => rule.lift,
        }
    }
}

impl fmt::Display for SortMetric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SortMetric::Support => "support",
            SortMetric::Confidence => "confidence",
            SortMetric::Lift => "lift",
        })
    }
}

impl FromStr for SortMetric {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "support" => Ok(SortMetric::Support),
            "confidence" => Ok(SortMetric::Confidence),
            "lift" => Ok(SortMetric::Lift),
            other => Err(Error::invalid(format!("unknown metric `{other}`"))),
        }
    }
}

/// Whether transactions from all graphs are mined together or each graph alone.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum MiningScope {
    Pooled,
    PerGraph,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExplainerConfig {
    pub min_support: f64,
    pub min_confidence: f64,
    /// Overlap, in percent units, still treated as disjoint.
    pub epsilon: f64,
    pub sort_metric: SortMetric,
    pub targets: Vec<String>,
    pub scope: MiningScope,
}

impl Default for ExplainerConfig {
    fn default() -> Self {
        ExplainerConfig {
            min_support: 0.05,
            min_confidence: 0.1,
            epsilon: 0.01,
            sort_metric: SortMetric::Support,
            targets: vec![TOP_ITEM.to_string(), BOTTOM_ITEM.to_string()],
            scope: MiningScope::Pooled,
        }
    }
}

impl ExplainerConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.min_support > 0.0 && self.min_support <= 1.0) {
            return Err(Error::invalid(format!("min_support must be in (0, 1], got {}", self.min_support)));
        }
        if !(self.min_confidence > 0.0 && self.min_confidence <= 1.0) {
            return Err(Error::invalid(format!(
                "min_confidence must be in (0, 1], got {}",
                self.min_confidence
            )));
        }
        if self.epsilon.is_nan() || self.epsilon < 0.0 {
            return Err(Error::invalid(format!("epsilon must be non-negative, got {}", self.epsilon)));
        }
        if self.targets.is_empty() {
            return Err(Error::invalid("at least one target consequent is required"));
        }
        Ok(())
    }
}

/// Item text for a feature bin, e.g. `Log Degree in [0%, 20%]`.
pub fn feature_item(feature: &str, bin: PercentileBin) -> String {
    format!("{feature} in {}", bin.label())
}

/// Appends one transaction per node whose score bin is the top or bottom
/// quintile. Returns how many were added.
pub fn append_transactions(
    db: &mut TransactionDB,
    bins: &PercentileBins,
    prob_bins: &[PercentileBin],
) -> Result<usize> {
    if prob_bins.len() != bins.node_count {
        return Err(Error::DimensionMismatch { expected: bins.node_count, actual: prob_bins.len() });
    }
    if let Some((name, col)) = bins.columns.iter().find(|(_, c)| c.len() != bins.node_count) {
        return Err(Error::invalid(format!(
            "bin column `{name}` has {} entries for {} nodes",
            col.len(),
            bins.node_count
        )));
    }
    let mut added = 0;
    for (v, pb) in prob_bins.iter().enumerate() {
        let target = match pb {
            PercentileBin::P80To100 => TOP_ITEM,
            PercentileBin::P0To20 => BOTTOM_ITEM,
            _ => continue,
        };
        let mut items: Vec<String> = bins.columns.iter().map(|(name, col)| feature_item(name, col[v])).collect();
        items.push(target.to_string());
        db.push(items);
        added += 1;
    }
    Ok(added)
}

/// Transactions for a single graph.
pub fn build_transactions(bins: &PercentileBins, prob_bins: &[PercentileBin]) -> Result<TransactionDB> {
    let mut db = TransactionDB::new();
    append_transactions(&mut db, bins, prob_bins)?;
    Ok(db)
}

/// One `(feature, lo, hi)` percent interval of an antecedent.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FeatureInterval {
    pub feature: String,
    pub lo: f64,
    pub hi: f64,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct ParsedAntecedent {
    pub intervals: Vec<FeatureInterval>,
}

impl ParsedAntecedent {
    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    /// Resolves every feature label to a known [`FeatureName`].
    pub fn feature_names(&self) -> Result<Vec<FeatureName>> {
        self.intervals.iter().map(|i| i.feature.parse()).collect()
    }
}

/// Parses `<feature> in [lo%, hi%]` items joined by ` AND `. An empty string
/// gives an empty list.
pub fn parse_antecedents(text: &str) -> Result<ParsedAntecedent> {
    let text = text.trim();
    if text.is_empty() {
        return Ok(ParsedAntecedent::default());
    }
    let intervals = text.split(" AND ").map(parse_item).collect::<Result<Vec<_>>>()?;
    Ok(ParsedAntecedent { intervals })
}

fn parse_item(fragment: &str) -> Result<FeatureInterval> {
    let malformed = || Error::MalformedAntecedent(fragment.to_string());
    let (feature, range) = fragment.trim().rsplit_once(" in ").ok_or_else(malformed)?;
    let inner = range
        .trim()
        .strip_prefix('[')
        .and_then(|r| r.strip_suffix(']'))
        .ok_or_else(malformed)?;
    let (lo, hi) = inner.split_once(',').ok_or_else(malformed)?;
    let percent = |s: &str| -> Result<f64> {
        let s = s.trim();
        s.strip_suffix('%').unwrap_or(s).trim().parse::<f64>().map_err(|_| malformed())
    };
    let (lo, hi) = (percent(lo)?, percent(hi)?);
    let feature = feature.trim();
    if feature.is_empty() || !(0.0 <= lo && lo < hi && hi <= 100.0) {
        return Err(malformed());
    }
    Ok(FeatureInterval { feature: feature.to_string(), lo, hi })
}

/// True iff, for every feature present in both lists, the intervals overlap
/// by at most `epsilon` percent.
pub fn is_disjoint(a: &ParsedAntecedent, b: &ParsedAntecedent, epsilon: f64) -> bool {
    a.intervals.iter().all(|x| {
        b.intervals
            .iter()
            .filter(|y| y.feature == x.feature)
            .all(|y| x.hi.min(y.hi) - x.lo.max(y.lo) <= epsilon)
    })
}

/// Greedy non-overlapping selection for one target consequent: keep rules
/// whose consequent is exactly `target`, order them by `metric` (descending;
/// ties by antecedent text, then input order), and keep each rule whose
/// parsed antecedent is disjoint from every rule kept so far. Rules with an
/// empty antecedent are skipped.
pub fn select_for_target(
    rules: &[AssociationRule],
    target: &str,
    metric: SortMetric,
    epsilon: f64,
) -> Result<Vec<AssociationRule>> {
    let mut candidates: Vec<(&AssociationRule, String)> = rules
        .iter()
        .filter(|r| r.consequents.len() == 1 && r.consequents[0] == target)
        .map(|r| (r, r.antecedent_text()))
        .collect();
    candidates.sort_by(|(a, ta), (b, tb)| {
        metric.of(b).partial_cmp(&metric.of(a)).unwrap_or(Ordering::Equal).then_with(|| ta.cmp(tb))
    });

    let mut selected = Vec::new();
    let mut kept: Vec<ParsedAntecedent> = Vec::new();
    for (rule, text) in candidates {
        let parsed = parse_antecedents(&text)?;
        if parsed.is_empty() {
            continue;
        }
        if kept.iter().all(|k| is_disjoint(&parsed, k, epsilon)) {
            selected.push(rule.clone());
            kept.push(parsed);
        }
    }
    Ok(selected)
}

/// [`select_for_target`] for each configured target, concatenated in target order.
pub fn greedy_select(rules: &[AssociationRule], cfg: &ExplainerConfig) -> Result<Vec<AssociationRule>> {
    cfg.validate()?;
    let mut out = Vec::new();
    for target in &cfg.targets {
        out.extend(select_for_target(rules, target, cfg.sort_metric, cfg.epsilon)?);
    }
    Ok(out)
}

/// A graph with a display name.
#[derive(Clone, Debug)]
pub struct NamedGraph {
    pub name: String,
    pub graph: Graph,
}

impl NamedGraph {
    pub fn new(name: impl Into<String>, graph: Graph) -> Self {
        NamedGraph { name: name.into(), graph }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TargetSelection {
    pub target: String,
    pub rules: Vec<AssociationRule>,
}

/// Mining outcome for one transaction pool.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RuleSection {
    /// `pooled`, or the graph name when mining per graph.
    pub scope: String,
    pub transaction_count: usize,
    pub frequent_itemset_count: usize,
    pub mined_rule_count: usize,
    pub selected_rule_count: usize,
    pub selections: Vec<TargetSelection>,
    #[serde(skip)]
    pub mined_rules: Vec<AssociationRule>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExplanationReport {
    pub dataset: String,
    pub features: Vec<String>,
    pub graph_count: usize,
    pub transaction_count: usize,
    /// Rule supports are fractions of the selected (top/bottom quintile) transactions.
    pub support_denominator: &'static str,
    pub scorer: ScorerConfig,
    pub config: ExplainerConfig,
    pub sections: Vec<RuleSection>,
}

impl ExplanationReport {
    pub fn selected_rules(&self) -> impl Iterator<Item = (&RuleSection, &AssociationRule)> {
        self.sections
            .iter()
            .flat_map(|s| s.selections.iter().flat_map(move |t| t.rules.iter().map(move |r| (s, r))))
    }

    pub fn to_json(&self) -> Result<String> {
        let mut s = serde_json::to_string_pretty(self)?;
        s.push('\n');
        Ok(s)
    }

    /// CSV `Dataset,Features,Antecedents,Consequents,Support,Confidence,Lift`,
    /// one row per selected rule.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["Dataset", "Features", "Antecedents", "Consequents", "Support", "Confidence", "Lift"])?;
        for (section, rule) in self.selected_rules() {
            let dataset = match self.config.scope {
                MiningScope::Pooled => self.dataset.clone(),
                MiningScope::PerGraph => format!("{}/{}", self.dataset, section.scope),
            };
            w.write_record([
                dataset,
                self.features.len().to_string(),
                rule.antecedent_text(),
                rule.consequent_text(),
                rule.support.to_string(),
                rule.confidence.to_string(),
                rule.lift.to_string(),
            ])?;
        }
        w.flush()?;
        Ok(())
    }
}

/// Per-graph transactions: features, scores and their quintile bins.
pub fn graph_transactions(
    g: &Graph,
    feature_set: &[FeatureName],
    scorer_cfg: &ScorerConfig,
) -> Result<TransactionDB> {
    let features = compute_features(g, feature_set)?;
    let probs = optimize_probabilities(g, Some(&features), scorer_cfg)?;
    let bins = PercentileBins::from_matrix(&features);
    build_transactions(&bins, &percentile_bin(&probs.values))
}

fn mine_section(scope: String, pools: &[&TransactionDB], cfg: &ExplainerConfig) -> Result<RuleSection> {
    // re-intern into one table so item ids agree across graphs
    let mut db = TransactionDB::new();
    for pool in pools {
        for i in 0..pool.len() {
            db.push(pool.symbols(i));
        }
    }
    let itemsets = fpgrowth::frequent_itemsets(&db, cfg.min_support)?;
    let filter: Vec<_> = cfg.targets.iter().filter_map(|t| db.items.get(t)).collect();
    let mined = generate_rules(&itemsets, &db.items, db.len(), cfg.min_confidence, &filter)?;
    let mut selections = Vec::new();
    for target in &cfg.targets {
        let rules = select_for_target(&mined, target, cfg.sort_metric, cfg.epsilon)?;
        selections.push(TargetSelection { target: target.clone(), rules });
    }
    Ok(RuleSection {
        scope,
        transaction_count: db.len(),
        frequent_itemset_count: itemsets.len(),
        mined_rule_count: mined.len(),
        selected_rule_count: selections.iter().map(|s| s.rules.len()).sum(),
        selections,
        mined_rules: mined,
    })
}

/// Runs the whole pipeline over `graphs`. Per-graph work may run
/// concurrently; pooling follows input order, so the report is identical
/// for identical inputs.
pub fn explain(
    dataset: &str,
    graphs: &[NamedGraph],
    feature_set: &[FeatureName],
    scorer_cfg: &ScorerConfig,
    cfg: &ExplainerConfig,
) -> Result<ExplanationReport> {
    if graphs.is_empty() {
        return Err(Error::invalid("no graphs to explain"));
    }
    cfg.validate()?;
    scorer_cfg.validate()?;
    let per_graph = par::map_slice(graphs, |ng| {
        graph_transactions(&ng.graph, feature_set, scorer_cfg).map_err(|e| e.in_graph(&ng.name))
    });
    let pools = per_graph.into_iter().collect::<Result<Vec<_>>>()?;

    let sections = match cfg.scope {
        MiningScope::Pooled => vec![mine_section("pooled".to_string(), &pools.iter().collect::<Vec<_>>(), cfg)?],
        MiningScope::PerGraph => graphs
            .iter()
            .zip(&pools)
            .map(|(ng, db)| mine_section(ng.name.clone(), &[db], cfg).map_err(|e| e.in_graph(&ng.name)))
            .collect::<Result<Vec<_>>>()?,
    };

    Ok(ExplanationReport {
        dataset: dataset.to_string(),
        features: feature_set.iter().map(|f| f.display_name().to_string()).collect(),
        graph_count: graphs.len(),
        transaction_count: pools.iter().map(|p| p.len()).sum(),
        support_denominator: "selected-transactions",
        scorer: scorer_cfg.clone(),
        config: cfg.clone(),
        sections,
    })
}
