//! Indirect association and its multi-item generalization, the star pattern.

use std::collections::HashMap;

use crate::measures::{self, MeasureId, MeasureValue};
use crate::threshold::CmpOp;
use crate::transactions::{ItemId, Pattern, Support, TransactionDatabase};

use super::frequent::frequent_levels;
use super::graph::Graph;
use super::{IndirectAssociation, MiningParams, StarPattern};

/// `d(P, Q)` under the configured measure. Lift and the dependence both use
/// `support(P ∪ Q) / (support(P) support(Q))`; the single-argument measures
/// are applied to `P ∪ Q`.
pub(crate) fn dependence_value(db: &TransactionDatabase, measure: MeasureId, p: &Pattern, q: &Pattern) -> MeasureValue {
    match measure {
        MeasureId::Dependence | MeasureId::Lift => {
            measures::dependence(db, p, q).unwrap_or(MeasureValue::Undefined)
        }
        other => other.evaluate_total(db, &[p.union(q)]),
    }
}

struct Candidate {
    item: ItemId,
    support: Support,
    dependence: MeasureValue,
}

/// For every mediator `M` with `1 <= |M| <= max_mediator_len`, the items
/// `x ∉ M` meeting both mediator conditions with `M`, in item order.
fn mediator_candidates(db: &TransactionDatabase, params: &MiningParams) -> Vec<(Pattern, Vec<Candidate>)> {
    let n = db.transaction_count();
    if n == 0 || params.max_mediator_len == 0 {
        return Vec::new();
    }
    let levels = frequent_levels(db, params.t_f, Some(params.max_mediator_len + 1));
    let counts: HashMap<&Pattern, usize> = levels.iter().flatten().map(|(p, tids)| (p, tids.len())).collect();
    let threshold = MeasureValue::Exact(params.t_d.ratio());
    let items: Vec<ItemId> = levels
        .first()
        .map(|l| l.iter().map(|(p, _)| p.items()[0]).collect())
        .unwrap_or_default();

    let mut out = Vec::new();
    for (mediator, _) in levels.iter().take(params.max_mediator_len).flatten() {
        let candidates: Vec<Candidate> = items
            .iter()
            .filter(|&&x| !mediator.contains(x))
            .filter_map(|&x| {
                let joint = mediator.with(x);
                let &count = counts.get(&joint)?;
                let dependence = dependence_value(db, params.dependence_measure, &Pattern::singleton(x), mediator);
                dependence.compare(CmpOp::Ge, &threshold).then_some(Candidate {
                    item: x,
                    support: Support { count, total: n },
                    dependence,
                })
            })
            .collect();
        if candidates.len() >= 2 {
            out.push((mediator.clone(), candidates));
        }
    }
    out
}

fn pair_is_rare(db: &TransactionDatabase, params: &MiningParams, a: ItemId, b: ItemId) -> Option<Support> {
    let count = db.item_tidset(a).intersection_len(db.item_tidset(b));
    let n = db.transaction_count();
    params.t_s.exceeds_count(count, n).then_some(Support { count, total: n })
}

/// All `(a, b, M)` with a rare pair `{a, b}` whose items are each frequent
/// together with `M` and dependent on it. Sorted by `a`, `b`, then `M`
/// levelwise.
pub fn mine_indirect(db: &TransactionDatabase, params: &MiningParams) -> Vec<IndirectAssociation> {
    let mut out = Vec::new();
    for (mediator, candidates) in mediator_candidates(db, params) {
        for (i, ca) in candidates.iter().enumerate() {
            for cb in &candidates[i + 1..] {
                let Some(pair_support) = pair_is_rare(db, params, ca.item, cb.item) else {
                    continue;
                };
                out.push(IndirectAssociation {
                    a: ca.item,
                    b: cb.item,
                    mediator: mediator.clone(),
                    pair_support,
                    mediator_supports: (ca.support, cb.support),
                    dependences: (ca.dependence, cb.dependence),
                });
            }
        }
    }
    out.sort_by(|x, y| {
        (x.a, x.b)
            .cmp(&(y.a, y.b))
            .then_with(|| x.mediator.levelwise_cmp(&y.mediator))
    });
    out
}

/// For every mediator that takes part in an indirect association, the
/// maximal leaf sets of two or more items that are pairwise rare and each
/// tied to the mediator.
pub fn mine_star(db: &TransactionDatabase, params: &MiningParams) -> Vec<StarPattern> {
    let mut out = Vec::new();
    for (center, candidates) in mediator_candidates(db, params) {
        let mut rare = Graph::new(candidates.len());
        for i in 0..candidates.len() {
            for j in i + 1..candidates.len() {
                if pair_is_rare(db, params, candidates[i].item, candidates[j].item).is_some() {
                    rare.add_edge(i, j);
                }
            }
        }
        for clique in rare.maximal_cliques() {
            if clique.len() >= 2 {
                out.push(StarPattern {
                    center: center.clone(),
                    leaves: Pattern::new(clique.into_iter().map(|i| candidates[i].item)),
                });
            }
        }
    }
    out.sort_by(|x, y| x.center.levelwise_cmp(&y.center).then_with(|| x.leaves.cmp(&y.leaves)));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::threshold::Threshold;

    fn db(text: &str) -> TransactionDatabase {
        TransactionDatabase::parse_basket(text).unwrap()
    }

    fn params(ts: &str, tf: &str, td: &str) -> MiningParams {
        MiningParams {
            t_s: ts.parse().unwrap(),
            t_f: tf.parse().unwrap(),
            t_d: td.parse().unwrap(),
            ..MiningParams::default()
        }
    }

    fn indirect(db: &TransactionDatabase, p: &MiningParams) -> Vec<String> {
        mine_indirect(db, p)
            .into_iter()
            .map(|r| format!("{}{}|{}", db.label(r.a), db.label(r.b), db.sorted_labels(&r.mediator).join("")))
            .collect()
    }

    #[test]
    fn indirect_on_db2() {
        let d2 = db("a c\na c\na c\nb c\nb c\nb c\n");
        let p = params("0.1", "0.4", "1.0");
        assert_eq!(indirect(&d2, &p), ["ab|c"]);
        let found = &mine_indirect(&d2, &p)[0];
        assert_eq!(found.pair_support.count, 0);
        assert_eq!(found.mediator_supports.0.fraction(), "3/6");
        assert!((found.dependences.0.value().unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn indirect_needs_a_rare_pair() {
        let d1 = db("a b\na b c\nb c\na c\n");
        assert!(indirect(&d1, &params("0.1", "0.4", "1.0")).is_empty());
        let d2 = db("a c\na c\na c\nb c\nb c\nb c\n");
        let mut p = params("0", "0.4", "1.0");
        p.t_s = Threshold::ZERO;
        assert!(indirect(&d2, &p).is_empty());
    }

    #[test]
    fn dependence_threshold_filters() {
        let d2 = db("a c\na c\na c\nb c\nb c\nb c\n");
        assert!(indirect(&d2, &params("0.1", "0.4", "1.01")).is_empty());
        // all-confidence of {a, c} is 3/6.
        let mut p = params("0.1", "0.4", "0.5");
        p.dependence_measure = MeasureId::AllConfidence;
        assert_eq!(indirect(&d2, &p), ["ab|c"]);
        p.t_d = "0.51".parse().unwrap();
        assert!(indirect(&d2, &p).is_empty());
    }

    fn stars(db: &TransactionDatabase, p: &MiningParams) -> Vec<String> {
        mine_star(db, p)
            .into_iter()
            .map(|s| format!("{}<{}>", db.sorted_labels(&s.center).join(""), db.sorted_labels(&s.leaves).join("")))
            .collect()
    }

    #[test]
    fn star_examples() {
        let d7 = db("a c\na c\nb c\nb c\ne c\ne c\n");
        assert_eq!(stars(&d7, &params("0.1", "0.25", "1.0")), ["c<abe>"]);
        let d2 = db("a c\na c\na c\nb c\nb c\nb c\n");
        assert_eq!(stars(&d2, &params("0.1", "0.25", "1.0")), ["c<ab>"]);
        let d1 = db("a b\na b c\nb c\na c\n");
        assert!(stars(&d1, &params("0.1", "0.25", "1.0")).is_empty());
    }
}
