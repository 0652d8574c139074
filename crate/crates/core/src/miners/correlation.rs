//! Lift-based pattern families. Correlation is undefined on singletons, so
//! the sub-pattern conditions range over sub-patterns of two or more items.

use std::collections::HashSet;

use crate::measures::{lift_unchecked, MeasureValue};
use crate::threshold::{CmpOp, Threshold};
use crate::transactions::{Pattern, Support, TransactionDatabase};

use super::frequent::{join_level, Level};
use super::{FoundPattern, PatternKind};

fn found(db: &TransactionDatabase, kind: PatternKind, pattern: Pattern, count: usize, lift: MeasureValue) -> FoundPattern {
    FoundPattern {
        kind,
        pattern,
        support: Support {
            count,
            total: db.transaction_count(),
        },
        lift: Some(lift),
    }
}

/// Items occurring at least once, as a first level.
fn occurring_items(db: &TransactionDatabase) -> Level {
    db.item_ids()
        .filter(|&i| !db.item_tidset(i).is_empty())
        .map(|i| (Pattern::singleton(i), db.item_tidset(i).clone()))
        .collect()
}

fn all_pairs(level: &Level) -> Level {
    join_level(level, |_| true)
}

/// Patterns `X` with `2 <= |X| <= max_len` whose every sub-pattern of two
/// or more items (including `X`) has lift at least `min_correlation`.
/// The condition is anti-monotone, so the search is levelwise.
pub fn mine_all_correlation(db: &TransactionDatabase, min_correlation: Threshold, max_len: Option<usize>) -> Vec<FoundPattern> {
    let threshold = MeasureValue::Exact(min_correlation.ratio());
    let mut out = Vec::new();
    if max_len.is_some_and(|m| m < 2) {
        return out;
    }
    let mut current: Level = all_pairs(&occurring_items(db));
    let mut len = 2;
    loop {
        let mut kept: Level = Vec::new();
        for (pattern, tids) in current {
            let lift = lift_unchecked(db, &pattern, tids.len());
            if lift.compare(CmpOp::Ge, &threshold) {
                out.push(found(db, PatternKind::AllCorrelation, pattern.clone(), tids.len(), lift));
                kept.push((pattern, tids));
            }
        }
        if kept.is_empty() || max_len.is_some_and(|m| len >= m) {
            break;
        }
        let members: HashSet<&Pattern> = kept.iter().map(|(p, _)| p).collect();
        current = join_level(&kept, |sub| members.contains(sub));
        len += 1;
    }
    out
}

/// Patterns `X` with `min_len <= |X| <= max_len` where `lift(X)` reaches
/// `min_correlation` but no proper sub-pattern of two or more items does.
/// `min_len` is 3 unless `include_pairs` is set, in which case it is 2.
///
/// The search keeps, per level, the patterns that occur and are
/// uncorrelated together with all their sub-patterns; an unexpected pattern
/// must extend only such patterns, so nothing else needs to be visited.
pub fn mine_unexpected_correlation(
    db: &TransactionDatabase,
    min_correlation: Threshold,
    max_len: usize,
    include_pairs: bool,
) -> Vec<FoundPattern> {
    let threshold = MeasureValue::Exact(min_correlation.ratio());
    let min_len = if include_pairs { 2 } else { 3 };
    let mut out = Vec::new();
    if max_len < 2 {
        return out;
    }
    let mut current: Level = all_pairs(&occurring_items(db));
    let mut len = 2;
    loop {
        let mut uncorrelated: Level = Vec::new();
        for (pattern, tids) in current {
            if tids.is_empty() {
                continue;
            }
            let lift = lift_unchecked(db, &pattern, tids.len());
            if lift.compare(CmpOp::Ge, &threshold) {
                if len >= min_len {
                    out.push(found(db, PatternKind::UnexpectedCorrelation, pattern, tids.len(), lift));
                }
            } else if lift.compare(CmpOp::Lt, &threshold) {
                uncorrelated.push((pattern, tids));
            }
        }
        if uncorrelated.is_empty() || len >= max_len {
            break;
        }
        let members: HashSet<&Pattern> = uncorrelated.iter().map(|(p, _)| p).collect();
        current = join_level(&uncorrelated, |sub| members.contains(sub));
        len += 1;
    }
    out
}
