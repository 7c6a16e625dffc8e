//! Frequent-itemset mining with FP-Growth and single-consequent association
//! rules.
//!
//! Transactions are compressed into a prefix tree whose paths follow one
//! global item order (descending support, ties by item text). Mining walks
//! the header table from the least frequent item upwards, building a
//! conditional tree from each item's prefix paths and recursing.

mod items;
mod rules;
mod tree;

pub use items::{ItemId, ItemTable, TransactionDB};
pub use rules::{generate_rules, write_rules_csv, AssociationRule};
pub use tree::{build_fptree, mine_frequent_itemsets, min_support_count, FPTree, FrequentItemset, TreeNode};

use crate::error::{Error, Result};

pub(crate) fn check_min_support(min_support: f64) -> Result<()> {
    if min_support > 0.0 && min_support <= 1.0 {
        Ok(())
    } else {
        Err(Error::invalid(format!("min_support must be in (0, 1], got {min_support}")))
    }
}

/// Builds the tree and mines it in one call.
pub fn frequent_itemsets(db: &TransactionDB, min_support: f64) -> Result<Vec<FrequentItemset>> {
    let tree = build_fptree(db, min_support)?;
    mine_frequent_itemsets(&tree, min_support)
}
