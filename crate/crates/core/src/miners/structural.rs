//! Miners defined purely by which item pairs are frequent: clique and
//! bi-clique patterns.

use std::collections::BTreeSet;

use crate::threshold::Threshold;
use crate::transactions::{ItemId, Pattern, TransactionDatabase};

use super::graph::Graph;
use super::{BicliquePattern, FoundPattern, PatternKind};

/// Frequent items and the graph of frequent pairs among them.
fn frequent_pair_graph(db: &TransactionDatabase, minsup: Threshold) -> (Vec<ItemId>, Graph) {
    let n = db.transaction_count();
    let vertices: Vec<ItemId> = if n == 0 {
        Vec::new()
    } else {
        db.item_ids()
            .filter(|&i| minsup.met_by_count(db.item_tidset(i).len(), n))
            .collect()
    };
    let mut graph = Graph::new(vertices.len());
    for (u, &a) in vertices.iter().enumerate() {
        for (v, &b) in vertices.iter().enumerate().skip(u + 1) {
            let count = db.item_tidset(a).intersection_len(db.item_tidset(b));
            if minsup.met_by_count(count, n) {
                graph.add_edge(u, v);
            }
        }
    }
    (vertices, graph)
}

/// Maximal clique patterns: maximal item sets whose every pair is frequent.
/// The support of a clique pattern may fall below `minsup`.
pub fn mine_clique(db: &TransactionDatabase, minsup: Threshold) -> Vec<FoundPattern> {
    let (vertices, graph) = frequent_pair_graph(db, minsup);
    let mut out: Vec<FoundPattern> = graph
        .maximal_cliques()
        .into_iter()
        .map(|clique| {
            let pattern = Pattern::new(clique.into_iter().map(|v| vertices[v]));
            FoundPattern {
                kind: PatternKind::Clique,
                support: db.exact_support(&pattern),
                pattern,
                lift: None,
            }
        })
        .collect();
    out.sort_by(|a, b| a.pattern.levelwise_cmp(&b.pattern));
    out
}

/// Maximal bi-clique patterns with both sides of at least `min_side` items.
///
/// A side assignment is encoded as a vertex per (item, side); two such
/// vertices are compatible when the pair condition between them holds.
/// Valid `(W, V)` pairs are then exactly the cliques of the compatibility
/// graph, and maximal pairs its maximal cliques.
pub fn mine_biclique(db: &TransactionDatabase, minsup: Threshold, min_side: usize) -> Vec<BicliquePattern> {
    let (frequent, pairs) = frequent_pair_graph(db, minsup);
    // An item with no frequent pair can only sit opposite an empty side.
    let keep: Vec<usize> = (0..frequent.len()).filter(|&u| pairs.degree(u) > 0).collect();
    let k = keep.len();
    let mut compat = Graph::new(2 * k);
    for i in 0..k {
        for j in i + 1..k {
            let frequent_pair = pairs.has_edge(keep[i], keep[j]);
            if frequent_pair {
                compat.add_edge(i, k + j);
                compat.add_edge(k + i, j);
            } else {
                compat.add_edge(i, j);
                compat.add_edge(k + i, k + j);
            }
        }
    }
    let mut found = BTreeSet::new();
    for clique in compat.maximal_cliques() {
        let (w, v): (Vec<usize>, Vec<usize>) = clique.into_iter().partition(|&x| x < k);
        if w.len() < min_side || v.len() < min_side {
            continue;
        }
        let side = |idx: Vec<usize>| Pattern::new(idx.into_iter().map(|x| frequent[keep[x % k]]));
        let (w, v) = (side(w), side(v));
        let (w, v) = if w <= v { (w, v) } else { (v, w) };
        found.insert(BicliquePattern { w, v });
    }
    found.into_iter().collect()
}
