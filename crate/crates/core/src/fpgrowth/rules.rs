use super::items::{ItemId, ItemTable};
use super::tree::FrequentItemset;
use crate::error::{Error, Result};
use serde::Serialize;
use std::collections::{HashMap, HashSet};
use std::io::Write;

/// `antecedents -> consequents` with its metrics:
/// support `P(X and Y)`, confidence `P(Y | X)`, lift `P(Y | X) / P(Y)`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AssociationRule {
    pub antecedents: Vec<String>,
    pub consequents: Vec<String>,
    pub support: f64,
    pub confidence: f64,
    pub lift: f64,
    pub antecedent_support: f64,
    pub consequent_support: f64,
}

impl AssociationRule {
    /// Antecedent items joined by ` AND `.
    pub fn antecedent_text(&self) -> String {
        self.antecedents.join(" AND ")
    }

    pub fn consequent_text(&self) -> String {
        self.consequents.join(" AND ")
    }
}

/// Rules `Z \ {y} -> {y}` for every frequent itemset `Z` and every `y` in `Z`
/// that belongs to `consequent_filter`, provided the antecedent is non-empty
/// and holds no filter item. Rules below `min_confidence` are dropped.
///
/// `itemsets` must be closed under taking subsets, which the miner guarantees.
pub fn generate_rules(
    itemsets: &[FrequentItemset],
    items: &ItemTable,
    db_size: usize,
    min_confidence: f64,
    consequent_filter: &[ItemId],
) -> Result<Vec<AssociationRule>> {
    let counts: HashMap<&[ItemId], u64> = itemsets.iter().map(|s| (s.items.as_slice(), s.count)).collect();
    let filter: HashSet<ItemId> = consequent_filter.iter().copied().collect();
    let total = db_size as f64;
    let lookup = |set: &[ItemId]| -> Result<u64> {
        counts.get(set).copied().ok_or_else(|| {
            let names: Vec<&str> = set.iter().map(|&i| items.symbol(i)).collect();
            Error::invalid(format!("itemset {names:?} missing from the frequent itemsets"))
        })
    };

    let mut rules = Vec::new();
    for set in itemsets {
        if set.items.len() < 2 {
            continue;
        }
        let in_filter = set.items.iter().filter(|i| filter.contains(i)).count();
        if in_filter != 1 {
            continue;
        }
        let y = *set.items.iter().find(|i| filter.contains(i)).expect("one filter item");
        let antecedent: Vec<ItemId> = set.items.iter().copied().filter(|&i| i != y).collect();
        let x_count = lookup(&antecedent)?;
        let y_count = lookup(&[y])?;
        if y_count == 0 {
            return Err(Error::invalid(format!("consequent `{}` has zero support", items.symbol(y))));
        }
        let support = set.count as f64 / total;
        let confidence = set.count as f64 / x_count as f64;
        if confidence < min_confidence {
            continue;
        }
        let consequent_support = y_count as f64 / total;
        rules.push(AssociationRule {
            antecedents: antecedent.iter().map(|&i| items.symbol(i).to_string()).collect(),
            consequents: vec![items.symbol(y).to_string()],
            support,
            confidence,
            lift: confidence / consequent_support,
            antecedent_support: x_count as f64 / total,
            consequent_support,
        });
    }
    Ok(rules)
}

/// CSV `antecedents,consequents,support,confidence,lift`.
pub fn write_rules_csv<W: Write>(rules: &[AssociationRule], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["antecedents", "consequents", "support", "confidence", "lift"])?;
    for r in rules {
        w.write_record([
            r.antecedent_text(),
            r.consequent_text(),
            r.support.to_string(),
            r.confidence.to_string(),
            r.lift.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}
