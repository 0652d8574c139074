use std::collections::HashSet;

use crate::threshold::Threshold;
use crate::transactions::{ItemId, Pattern, Tidset, TransactionDatabase};

use super::{FoundPattern, PatternKind};

/// One level of the itemset lattice: patterns of equal length in ascending
/// order, each with its tidset.
pub(crate) type Level = Vec<(Pattern, Tidset)>;

/// Candidate generation shared by the levelwise miners: joins members of
/// `level` that agree on everything but their last item, and keeps a
/// candidate only if `admit` accepts every one of its `k`-subsets.
pub(crate) fn join_level(level: &Level, admit: impl Fn(&Pattern) -> bool) -> Vec<(Pattern, Tidset)> {
    let mut out = Vec::new();
    for (i, (p, tp)) in level.iter().enumerate() {
        let prefix = &p.items()[..p.len() - 1];
        for (q, tq) in &level[i + 1..] {
            if &q.items()[..q.len() - 1] != prefix {
                break;
            }
            let last = *q.items().last().expect("non-empty");
            let candidate = p.with(last);
            // The two generating subsets are known members; check the rest.
            let all_admitted = candidate
                .iter()
                .filter(|&drop| drop != last && drop != *p.items().last().expect("non-empty"))
                .all(|drop| admit(&candidate.without(drop)));
            if all_admitted {
                out.push((candidate, tp.intersection(tq)));
            }
        }
    }
    out
}

/// Levelwise (Apriori) enumeration with tidset intersection.
pub(crate) fn frequent_levels(db: &TransactionDatabase, minsup: Threshold, max_len: Option<usize>) -> Vec<Level> {
    let n = db.transaction_count();
    if n == 0 || max_len == Some(0) {
        return Vec::new();
    }
    let mut levels: Vec<Level> = Vec::new();
    let mut current: Level = db
        .item_ids()
        .filter(|&i| minsup.met_by_count(db.item_tidset(i).len(), n))
        .map(|i| (Pattern::singleton(i), db.item_tidset(i).clone()))
        .collect();
    while !current.is_empty() {
        let len = current[0].0.len();
        let members: HashSet<&Pattern> = current.iter().map(|(p, _)| p).collect();
        let next: Level = if max_len.is_some_and(|m| len >= m) {
            Vec::new()
        } else {
            join_level(&current, |sub| members.contains(sub))
                .into_iter()
                .filter(|(_, tids)| minsup.met_by_count(tids.len(), n))
                .collect()
        };
        drop(members);
        levels.push(current);
        current = next;
    }
    levels
}

fn found(db: &TransactionDatabase, kind: PatternKind, pattern: Pattern, tids_len: usize) -> FoundPattern {
    FoundPattern {
        kind,
        pattern,
        support: crate::transactions::Support {
            count: tids_len,
            total: db.transaction_count(),
        },
        lift: None,
    }
}

/// Every itemset of length at most `max_len` whose support reaches
/// `minsup`, ordered by length and then by items.
pub fn mine_frequent(db: &TransactionDatabase, minsup: Threshold, max_len: Option<usize>) -> Vec<FoundPattern> {
    frequent_levels(db, minsup, max_len)
        .into_iter()
        .flatten()
        .map(|(p, tids)| found(db, PatternKind::Frequent, p, tids.len()))
        .collect()
}

/// Frequent itemsets equal to their own closure.
pub fn mine_closed(db: &TransactionDatabase, minsup: Threshold) -> Vec<FoundPattern> {
    frequent_levels(db, minsup, None)
        .into_iter()
        .flatten()
        .filter(|(p, _)| db.closure(p).is_ok_and(|c| &c == p))
        .map(|(p, tids)| found(db, PatternKind::Closed, p, tids.len()))
        .collect()
}

/// Frequent itemsets with no frequent proper superset.
pub fn mine_maximal(db: &TransactionDatabase, minsup: Threshold) -> Vec<FoundPattern> {
    let levels = frequent_levels(db, minsup, None);
    let frequent: HashSet<&Pattern> = levels.iter().flatten().map(|(p, _)| p).collect();
    let items: Vec<ItemId> = levels
        .first()
        .map(|l| l.iter().map(|(p, _)| p.items()[0]).collect())
        .unwrap_or_default();
    levels
        .iter()
        .flatten()
        // Any frequent proper superset implies a frequent one-item extension.
        .filter(|(p, _)| !items.iter().any(|&i| !p.contains(i) && frequent.contains(&p.with(i))))
        .map(|(p, tids)| found(db, PatternKind::Maximal, p.clone(), tids.len()))
        .collect()
}
