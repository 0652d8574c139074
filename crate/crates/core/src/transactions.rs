//! Transaction databases in basket format and exact support queries.

use std::collections::HashMap;
use std::fmt;
use std::io::BufRead;

use thiserror::Error;

use crate::bitset::BitSet;

#[derive(Debug, Error)]
pub enum DataError {
    #[error("line {line}: input is not valid UTF-8")]
    Encoding { line: usize },
    #[error("read failed: {0}")]
    Io(#[from] std::io::Error),
    #[error("support is undefined on an empty database")]
    EmptyDatabase,
    #[error("pattern {0} occurs in no transaction")]
    NoOccurrence(String),
    #[error("unknown item `{0}`")]
    UnknownItem(String),
}

/// Dense item identifier, assigned in order of first appearance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ItemId(pub u32);

impl ItemId {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// A set of items kept as a strictly ascending id sequence.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Pattern {
    items: Vec<ItemId>,
}

impl Pattern {
    pub fn new(items: impl IntoIterator<Item = ItemId>) -> Self {
        let mut items: Vec<ItemId> = items.into_iter().collect();
        items.sort_unstable();
        items.dedup();
        Pattern { items }
    }

    pub fn empty() -> Self {
        Pattern { items: Vec::new() }
    }

    pub fn singleton(item: ItemId) -> Self {
        Pattern { items: vec![item] }
    }

    pub(crate) fn from_sorted(items: Vec<ItemId>) -> Self {
        debug_assert!(items.windows(2).all(|w| w[0] < w[1]));
        Pattern { items }
    }

    pub fn items(&self) -> &[ItemId] {
        &self.items
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn contains(&self, item: ItemId) -> bool {
        self.items.binary_search(&item).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = ItemId> + '_ {
        self.items.iter().copied()
    }

    pub fn is_subset_of(&self, other: &Pattern) -> bool {
        let mut rest = other.items.iter();
        self.items.iter().all(|item| rest.any(|o| o == item))
    }

    pub fn is_disjoint(&self, other: &Pattern) -> bool {
        !self.items.iter().any(|&item| other.contains(item))
    }

    pub fn union(&self, other: &Pattern) -> Pattern {
        Pattern::new(self.iter().chain(other.iter()))
    }

    pub fn with(&self, item: ItemId) -> Pattern {
        let mut items = self.items.clone();
        if let Err(pos) = items.binary_search(&item) {
            items.insert(pos, item);
        }
        Pattern { items }
    }

    pub fn without(&self, item: ItemId) -> Pattern {
        Pattern {
            items: self.items.iter().copied().filter(|&i| i != item).collect(),
        }
    }

    /// Ordering by length first, then lexicographically by id.
    pub fn levelwise_cmp(&self, other: &Pattern) -> std::cmp::Ordering {
        self.len().cmp(&other.len()).then_with(|| self.items.cmp(&other.items))
    }

    /// Every non-empty subset selected by a bit mask over the item positions.
    pub(crate) fn subset_by_mask(&self, mask: u64) -> Pattern {
        Pattern {
            items: self
                .items
                .iter()
                .enumerate()
                .filter(|(i, _)| mask & (1u64 << i) != 0)
                .map(|(_, &item)| item)
                .collect(),
        }
    }
}

impl FromIterator<ItemId> for Pattern {
    fn from_iter<T: IntoIterator<Item = ItemId>>(iter: T) -> Self {
        Pattern::new(iter)
    }
}

/// Transactions containing some pattern, over a universe of `n` transactions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tidset {
    bits: BitSet,
}

impl Tidset {
    pub fn universe(n: usize) -> Self {
        Tidset { bits: BitSet::full(n) }
    }

    pub fn none(n: usize) -> Self {
        Tidset { bits: BitSet::empty(n) }
    }

    pub fn insert(&mut self, tid: usize) {
        self.bits.insert(tid);
    }

    pub fn contains(&self, tid: usize) -> bool {
        self.bits.contains(tid)
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn transaction_count(&self) -> usize {
        self.bits.universe()
    }

    pub fn intersect_with(&mut self, other: &Tidset) {
        self.bits.intersect_with(&other.bits);
    }

    pub fn union_with(&mut self, other: &Tidset) {
        self.bits.union_with(&other.bits);
    }

    pub fn intersection(&self, other: &Tidset) -> Tidset {
        Tidset { bits: self.bits.intersection(&other.bits) }
    }

    pub fn intersection_len(&self, other: &Tidset) -> usize {
        self.bits.intersection_len(&other.bits)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.bits.iter()
    }
}

/// An exact support value: `count` of `total` transactions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Support {
    pub count: usize,
    pub total: usize,
}

impl Support {
    /// `None` on an empty database.
    pub fn ratio(&self) -> Option<f64> {
        (self.total > 0).then(|| self.count as f64 / self.total as f64)
    }

    pub fn fraction(&self) -> String {
        format!("{}/{}", self.count, self.total)
    }
}

impl fmt::Display for Support {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.count, self.total)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Item {
    pub id: ItemId,
    pub label: String,
}

/// An immutable transaction database with per-item tidsets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransactionDatabase {
    labels: Vec<String>,
    index: HashMap<String, ItemId>,
    transactions: Vec<Pattern>,
    item_tidsets: Vec<Tidset>,
}

impl TransactionDatabase {
    /// Builds a database from label lists. Items get ids in order of first
    /// appearance; duplicate labels within a transaction collapse.
    pub fn from_transactions<T, S>(transactions: impl IntoIterator<Item = T>) -> Self
    where
        T: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let mut labels: Vec<String> = Vec::new();
        let mut index: HashMap<String, ItemId> = HashMap::new();
        let mut rows = Vec::new();
        for transaction in transactions {
            let ids = transaction.into_iter().map(|label| {
                let label = label.as_ref();
                *index.entry(label.to_string()).or_insert_with(|| {
                    labels.push(label.to_string());
                    ItemId((labels.len() - 1) as u32)
                })
            });
            rows.push(Pattern::new(ids.collect::<Vec<_>>()));
        }
        Self::assemble(labels, index, rows)
    }

    fn assemble(labels: Vec<String>, index: HashMap<String, ItemId>, transactions: Vec<Pattern>) -> Self {
        let n = transactions.len();
        let mut item_tidsets = vec![Tidset::none(n); labels.len()];
        for (tid, transaction) in transactions.iter().enumerate() {
            for item in transaction.iter() {
                item_tidsets[item.index()].insert(tid);
            }
        }
        TransactionDatabase {
            labels,
            index,
            transactions,
            item_tidsets,
        }
    }

    /// Reads basket format: one transaction per line, whitespace-separated
    /// labels, `#` comment lines and blank lines skipped.
    pub fn load_basket<R: BufRead>(reader: R) -> Result<Self, DataError> {
        let mut rows = Vec::new();
        for (lineno, raw) in reader.split(b'\n').enumerate() {
            let raw = raw?;
            let line = std::str::from_utf8(&raw).map_err(|_| DataError::Encoding { line: lineno + 1 })?;
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            rows.push(line.split_whitespace().map(str::to_string).collect::<Vec<_>>());
        }
        Ok(Self::from_transactions(rows))
    }

    pub fn parse_basket(text: &str) -> Result<Self, DataError> {
        Self::load_basket(text.as_bytes())
    }

    /// Writes the database back in basket format. Loading the output yields
    /// an identical database as long as every item occurs somewhere and no
    /// transaction is empty.
    pub fn to_basket_string(&self) -> String {
        let mut out = String::new();
        for transaction in &self.transactions {
            let line: Vec<&str> = transaction.iter().map(|i| self.label(i)).collect();
            out.push_str(&line.join(" "));
            out.push('\n');
        }
        out
    }

    /// A copy with extra labels registered as items that occur nowhere.
    /// Labels already present are left untouched.
    pub fn with_items<S: AsRef<str>>(&self, labels: impl IntoIterator<Item = S>) -> Self {
        let mut db = self.clone();
        let n = db.transaction_count();
        for label in labels {
            let label = label.as_ref();
            if !db.index.contains_key(label) {
                let id = ItemId(db.labels.len() as u32);
                db.labels.push(label.to_string());
                db.index.insert(label.to_string(), id);
                db.item_tidsets.push(Tidset::none(n));
            }
        }
        db
    }

    pub fn transaction_count(&self) -> usize {
        self.transactions.len()
    }

    pub fn item_count(&self) -> usize {
        self.labels.len()
    }

    pub fn transactions(&self) -> &[Pattern] {
        &self.transactions
    }

    pub fn item_ids(&self) -> impl Iterator<Item = ItemId> {
        (0..self.labels.len() as u32).map(ItemId)
    }

    pub fn items(&self) -> impl Iterator<Item = Item> + '_ {
        self.labels.iter().enumerate().map(|(i, label)| Item {
            id: ItemId(i as u32),
            label: label.clone(),
        })
    }

    pub fn label(&self, item: ItemId) -> &str {
        &self.labels[item.index()]
    }

    pub fn item_id(&self, label: &str) -> Option<ItemId> {
        self.index.get(label).copied()
    }

    pub fn item_tidset(&self, item: ItemId) -> &Tidset {
        &self.item_tidsets[item.index()]
    }

    /// Resolves labels to a pattern, failing on the first unknown label.
    pub fn pattern<S: AsRef<str>>(&self, labels: impl IntoIterator<Item = S>) -> Result<Pattern, DataError> {
        labels
            .into_iter()
            .map(|l| self.item_id(l.as_ref()).ok_or_else(|| DataError::UnknownItem(l.as_ref().to_string())))
            .collect()
    }

    /// Labels of a pattern in ascending label order.
    pub fn sorted_labels(&self, pattern: &Pattern) -> Vec<String> {
        let mut labels: Vec<String> = pattern.iter().map(|i| self.label(i).to_string()).collect();
        labels.sort();
        labels
    }

    pub fn display(&self, pattern: &Pattern) -> String {
        format!("{{{}}}", self.sorted_labels(pattern).join(","))
    }

    /// Intersection of the per-item tidsets; the empty pattern maps to every
    /// transaction.
    pub fn tidset(&self, pattern: &Pattern) -> Tidset {
        let mut items = pattern.iter();
        let Some(first) = items.next() else {
            return Tidset::universe(self.transaction_count());
        };
        let mut tids = self.item_tidset(first).clone();
        for item in items {
            if tids.is_empty() {
                break;
            }
            tids.intersect_with(self.item_tidset(item));
        }
        tids
    }

    pub fn support_count(&self, pattern: &Pattern) -> usize {
        match pattern.items() {
            [] => self.transaction_count(),
            [single] => self.item_tidset(*single).len(),
            [a, b] => self.item_tidset(*a).intersection_len(self.item_tidset(*b)),
            _ => self.tidset(pattern).len(),
        }
    }

    pub fn exact_support(&self, pattern: &Pattern) -> Support {
        Support {
            count: self.support_count(pattern),
            total: self.transaction_count(),
        }
    }

    /// Fraction of transactions containing `pattern`.
    pub fn support(&self, pattern: &Pattern) -> Result<f64, DataError> {
        self.exact_support(pattern).ratio().ok_or(DataError::EmptyDatabase)
    }

    /// Intersection of every transaction that contains `pattern`.
    pub fn closure(&self, pattern: &Pattern) -> Result<Pattern, DataError> {
        let tids = self.tidset(pattern);
        let mut tids_iter = tids.iter();
        let Some(first) = tids_iter.next() else {
            return Err(DataError::NoOccurrence(self.display(pattern)));
        };
        let mut closed: Vec<ItemId> = self.transactions[first].items().to_vec();
        for tid in tids_iter {
            let transaction = &self.transactions[tid];
            closed.retain(|&item| transaction.contains(item));
        }
        Ok(Pattern::from_sorted(closed))
    }
}
