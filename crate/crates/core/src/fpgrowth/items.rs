use serde::Serialize;
use std::collections::HashMap;

/// Interned item.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct ItemId(pub u32);

/// Two-way map between item text and [`ItemId`].
#[derive(Clone, Debug, Default)]
pub struct ItemTable {
    symbols: Vec<String>,
    index: HashMap<String, ItemId>,
}

impl ItemTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn intern(&mut self, symbol: &str) -> ItemId {
        if let Some(&id) = self.index.get(symbol) {
            return id;
        }
        let id = ItemId(self.symbols.len() as u32);
        self.symbols.push(symbol.to_string());
        self.index.insert(symbol.to_string(), id);
        id
    }

    pub fn get(&self, symbol: &str) -> Option<ItemId> {
        self.index.get(symbol).copied()
    }

    pub fn symbol(&self, id: ItemId) -> &str {
        &self.symbols[id.0 as usize]
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    /// Position of each item in lexicographic order of its text, indexed by id.
    pub(crate) fn lexicographic_ranks(&self) -> Vec<u32> {
        let mut ids: Vec<usize> = (0..self.symbols.len()).collect();
        ids.sort_by(|&a, &b| self.symbols[a].cmp(&self.symbols[b]));
        let mut ranks = vec![0u32; ids.len()];
        for (rank, id) in ids.into_iter().enumerate() {
            ranks[id] = rank as u32;
        }
        ranks
    }
}

/// Transactions over interned items. Items within a transaction are unique
/// and kept in ascending id order.
#[derive(Clone, Debug, Default)]
pub struct TransactionDB {
    pub items: ItemTable,
    transactions: Vec<Vec<ItemId>>,
}

impl TransactionDB {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds one transaction; repeated items collapse.
    pub fn push<S: AsRef<str>>(&mut self, items: impl IntoIterator<Item = S>) {
        let mut t: Vec<ItemId> = items.into_iter().map(|s| self.items.intern(s.as_ref())).collect();
        t.sort_unstable();
        t.dedup();
        self.transactions.push(t);
    }

    pub fn transactions(&self) -> &[Vec<ItemId>] {
        &self.transactions
    }

    pub fn len(&self) -> usize {
        self.transactions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.transactions.is_empty()
    }

    /// Occurrence count of every item, indexed by id.
    pub fn item_counts(&self) -> Vec<u64> {
        let mut counts = vec![0u64; self.items.len()];
        for t in &self.transactions {
            for id in t {
                counts[id.0 as usize] += 1;
            }
        }
        counts
    }

    /// Transactions as item text, for display and debugging.
    pub fn symbols(&self, index: usize) -> Vec<&str> {
        self.transactions[index].iter().map(|&id| self.items.symbol(id)).collect()
    }
}
