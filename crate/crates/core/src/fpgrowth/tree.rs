use super::items::{ItemId, TransactionDB};
use super::check_min_support;
use crate::error::{Error, Result};
use crate::par;
use std::collections::HashMap;
use std::sync::Arc;

pub const ROOT: usize = 0;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreeNode {
    /// `None` only for the root.
    pub item: Option<ItemId>,
    pub count: u64,
    pub parent: usize,
    pub children: Vec<usize>,
    /// Next node carrying the same item (header chain).
    pub next: Option<usize>,
}

#[derive(Clone, Debug)]
struct HeaderEntry {
    item: ItemId,
    count: u64,
    head: Option<usize>,
    tail: Option<usize>,
}

/// Prefix tree of frequent items. Every root-to-node path follows the header
/// order: descending count, ties by item text.
#[derive(Clone, Debug)]
pub struct FPTree {
    nodes: Vec<TreeNode>,
    header: Vec<HeaderEntry>,
    transaction_count: usize,
    min_count: u64,
    min_support: f64,
    lex_rank: Arc<[u32]>,
}

/// Smallest count `c` with `c / total >= min_support`.
pub fn min_support_count(total: usize, min_support: f64) -> u64 {
    if total == 0 {
        return 1;
    }
    let mut c = (min_support * total as f64).floor().max(0.0) as u64;
    while (c as f64 / total as f64) < min_support {
        c += 1;
    }
    c.max(1)
}

/// Two passes over `db`: count items and drop those below the support
/// threshold, then insert each transaction's surviving items in header order,
/// merging shared prefixes.
pub fn build_fptree(db: &TransactionDB, min_support: f64) -> Result<FPTree> {
    check_min_support(min_support)?;
    let lex_rank: Arc<[u32]> = db.items.lexicographic_ranks().into();
    let min_count = min_support_count(db.len(), min_support);
    let paths = db.transactions().iter().map(|t| (t.as_slice(), 1u64));
    let mut tree = FPTree::from_weighted_paths(paths, min_count, lex_rank);
    tree.transaction_count = db.len();
    tree.min_support = min_support;
    Ok(tree)
}

impl FPTree {
    fn from_weighted_paths<'a, I>(paths: I, min_count: u64, lex_rank: Arc<[u32]>) -> FPTree
    where
        I: IntoIterator<Item = (&'a [ItemId], u64)> + Clone,
    {
        let mut counts: HashMap<ItemId, u64> = HashMap::new();
        for (path, weight) in paths.clone() {
            for &item in path {
                *counts.entry(item).or_insert(0) += weight;
            }
        }
        let mut header: Vec<HeaderEntry> = counts
            .into_iter()
            .filter(|&(_, c)| c >= min_count)
            .map(|(item, count)| HeaderEntry { item, count, head: None, tail: None })
            .collect();
        header.sort_by(|a, b| {
            b.count.cmp(&a.count).then(lex_rank[a.item.0 as usize].cmp(&lex_rank[b.item.0 as usize]))
        });
        let position: HashMap<ItemId, usize> =
            header.iter().enumerate().map(|(i, h)| (h.item, i)).collect();

        let mut tree = FPTree {
            nodes: vec![TreeNode { item: None, count: 0, parent: ROOT, children: vec![], next: None }],
            header,
            transaction_count: 0,
            min_count,
            min_support: 0.0,
            lex_rank,
        };
        let mut ordered: Vec<usize> = Vec::new();
        for (path, weight) in paths {
            ordered.clear();
            ordered.extend(path.iter().filter_map(|item| position.get(item).copied()));
            ordered.sort_unstable();
            tree.insert(&ordered, weight);
        }
        tree
    }

    fn insert(&mut self, header_positions: &[usize], weight: u64) {
        let mut at = ROOT;
        self.nodes[ROOT].count += weight;
        for &pos in header_positions {
            let item = self.header[pos].item;
            let existing = self.nodes[at].children.iter().copied().find(|&c| self.nodes[c].item == Some(item));
            at = match existing {
                Some(child) => {
                    self.nodes[child].count += weight;
                    child
                }
                None => {
                    let idx = self.nodes.len();
                    self.nodes.push(TreeNode { item: Some(item), count: weight, parent: at, children: vec![], next: None });
                    self.nodes[at].children.push(idx);
                    let entry = &mut self.header[pos];
                    match entry.tail {
                        Some(tail) => self.nodes[tail].next = Some(idx),
                        None => entry.head = Some(idx),
                    }
                    entry.tail = Some(idx);
                    idx
                }
            };
        }
    }

    pub fn is_empty(&self) -> bool {
        self.header.is_empty()
    }

    pub fn node(&self, idx: usize) -> &TreeNode {
        &self.nodes[idx]
    }

    /// Number of item nodes (root excluded).
    pub fn node_count(&self) -> usize {
        self.nodes.len() - 1
    }

    pub fn transaction_count(&self) -> usize {
        self.transaction_count
    }

    pub fn min_count(&self) -> u64 {
        self.min_count
    }

    /// Frequent items with their counts, in header order.
    pub fn header_items(&self) -> Vec<(ItemId, u64)> {
        self.header.iter().map(|h| (h.item, h.count)).collect()
    }

    /// Nodes of `item`'s header chain in insertion order.
    pub fn chain(&self, item: ItemId) -> Vec<usize> {
        let mut out = Vec::new();
        let mut cur = self.header.iter().find(|h| h.item == item).and_then(|h| h.head);
        while let Some(idx) = cur {
            out.push(idx);
            cur = self.nodes[idx].next;
        }
        out
    }

    /// Items from the root down to (excluding) `idx`.
    fn prefix(&self, idx: usize) -> Vec<ItemId> {
        let mut items = Vec::new();
        let mut at = self.nodes[idx].parent;
        while at != ROOT {
            items.push(self.nodes[at].item.expect("non-root node has an item"));
            at = self.nodes[at].parent;
        }
        items.reverse();
        items
    }

    fn conditional(&self, header_pos: usize) -> FPTree {
        let base: Vec<(Vec<ItemId>, u64)> = self
            .chain(self.header[header_pos].item)
            .into_iter()
            .map(|idx| (self.prefix(idx), self.nodes[idx].count))
            .filter(|(p, _)| !p.is_empty())
            .collect();
        FPTree::from_weighted_paths(
            base.iter().map(|(p, c)| (p.as_slice(), *c)),
            self.min_count,
            Arc::clone(&self.lex_rank),
        )
    }

    fn grow(&self, suffix: &[ItemId], out: &mut Vec<(Vec<ItemId>, u64)>) {
        for pos in (0..self.header.len()).rev() {
            self.grow_from(pos, suffix, out);
        }
    }

    fn grow_from(&self, pos: usize, suffix: &[ItemId], out: &mut Vec<(Vec<ItemId>, u64)>) {
        let mut pattern = suffix.to_vec();
        pattern.push(self.header[pos].item);
        out.push((pattern.clone(), self.header[pos].count));
        let cond = self.conditional(pos);
        if !cond.is_empty() {
            cond.grow(&pattern, out);
        }
    }
}

/// A frequent itemset; items are in lexicographic order of their text.
#[derive(Clone, Debug, PartialEq)]
pub struct FrequentItemset {
    pub items: Vec<ItemId>,
    pub count: u64,
    pub support: f64,
}

/// Every itemset whose support reaches the tree's threshold, ordered by size
/// and then lexicographically by item text. Conditional trees for distinct
/// header items are mined independently.
pub fn mine_frequent_itemsets(tree: &FPTree, min_support: f64) -> Result<Vec<FrequentItemset>> {
    check_min_support(min_support)?;
    if tree.transaction_count > 0 && min_support != tree.min_support {
        return Err(Error::invalid(format!(
            "tree was built with min_support {} but mined with {min_support}",
            tree.min_support
        )));
    }
    let per_item = par::map_indices(tree.header.len(), |pos| {
        let mut out = Vec::new();
        tree.grow_from(pos, &[], &mut out);
        out
    });
    let total = tree.transaction_count as f64;
    let rank = &tree.lex_rank;
    let mut sets: Vec<FrequentItemset> = per_item
        .into_iter()
        .flatten()
        .map(|(mut items, count)| {
            items.sort_by_key(|i| rank[i.0 as usize]);
            FrequentItemset { items, count, support: count as f64 / total }
        })
        .collect();
    sets.sort_by(|a, b| {
        a.items.len().cmp(&b.items.len()).then_with(|| {
            let ka = a.items.iter().map(|i| rank[i.0 as usize]);
            let kb = b.items.iter().map(|i| rank[i.0 as usize]);
            ka.cmp(kb)
        })
    });
    Ok(sets)
}
