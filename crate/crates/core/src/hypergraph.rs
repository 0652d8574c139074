//! Item hyper-graphs: the items of a pattern as vertices, and as hyperedges
//! the sub-patterns that satisfy an edge constraint.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::constraints::{subpattern_hits, ConstraintError, EvalOptions, Formula};
use crate::measures::{MeasureId, MeasureValue};
use crate::miners::{IndirectAssociation, StarPattern};
use crate::threshold::CmpOp;
use crate::transactions::{Pattern, TransactionDatabase};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Polarity {
    Positive,
    /// A rarity condition; drawn dashed.
    Negative,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Hyperedge {
    pub items: Vec<String>,
    pub measure: String,
    pub value: Option<f64>,
    pub polarity: Polarity,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct ItemHyperGraph {
    pub vertices: Vec<String>,
    pub hyperedges: Vec<Hyperedge>,
}

impl ItemHyperGraph {
    fn new(db: &TransactionDatabase, x: &Pattern) -> Self {
        ItemHyperGraph {
            vertices: db.sorted_labels(x),
            hyperedges: Vec::new(),
        }
    }

    fn push(&mut self, db: &TransactionDatabase, edge: &Pattern, measure: MeasureId, value: MeasureValue, polarity: Polarity) {
        self.hyperedges.push(Hyperedge {
            items: db.sorted_labels(edge),
            measure: measure.name().to_string(),
            value: value.value(),
            polarity,
        });
    }

    /// Sorted, duplicate-free edge list.
    fn finish(mut self) -> Self {
        self.hyperedges.sort_by(|a, b| {
            a.items
                .len()
                .cmp(&b.items.len())
                .then_with(|| a.items.cmp(&b.items))
                .then_with(|| a.measure.cmp(&b.measure))
                .then_with(|| a.polarity.cmp(&b.polarity))
        });
        self.hyperedges
            .dedup_by(|a, b| a.items == b.items && a.measure == b.measure && a.polarity == b.polarity);
        self
    }

    /// The pattern's hyper-graph under a single-quantifier edge constraint.
    /// Each edge records the first measure comparison that admitted it; a
    /// strict rarity condition (`measure < value`) makes the edge negative.
    pub fn build(
        db: &TransactionDatabase,
        x: &Pattern,
        edge_constraint: &Formula,
        opts: EvalOptions,
    ) -> Result<Self, ConstraintError> {
        let mut graph = ItemHyperGraph::new(db, x);
        for hit in subpattern_hits(db, edge_constraint, x, opts)? {
            let polarity = match hit.op {
                Some(CmpOp::Lt) => Polarity::Negative,
                _ => Polarity::Positive,
            };
            graph.push(db, &hit.pattern, hit.measure.unwrap_or(MeasureId::Support), hit.value, polarity);
        }
        Ok(graph.finish())
    }

    /// The rare pair as a negative edge, plus positive edges joining each
    /// item to the mediator.
    pub fn from_indirect(db: &TransactionDatabase, found: &IndirectAssociation) -> Self {
        let all = found.mediator.with(found.a).with(found.b);
        let mut graph = ItemHyperGraph::new(db, &all);
        let support = |p: &Pattern| crate::measures::support(db, p);
        let pair = Pattern::new([found.a, found.b]);
        graph.push(db, &pair, MeasureId::Support, support(&pair), Polarity::Negative);
        for item in [found.a, found.b] {
            let edge = found.mediator.with(item);
            graph.push(db, &edge, MeasureId::Support, support(&edge), Polarity::Positive);
        }
        graph.finish()
    }

    /// Negative edges between every leaf pair and positive edges from each
    /// leaf to the center.
    pub fn from_star(db: &TransactionDatabase, star: &StarPattern) -> Self {
        let mut graph = ItemHyperGraph::new(db, &star.center.union(&star.leaves));
        let support = |p: &Pattern| crate::measures::support(db, p);
        let leaves: Vec<_> = star.leaves.iter().collect();
        for (i, &a) in leaves.iter().enumerate() {
            let edge = star.center.with(a);
            graph.push(db, &edge, MeasureId::Support, support(&edge), Polarity::Positive);
            for &b in &leaves[i + 1..] {
                let pair = Pattern::new([a, b]);
                graph.push(db, &pair, MeasureId::Support, support(&pair), Polarity::Negative);
            }
        }
        graph.finish()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("hyper-graph serializes")
    }

    /// Undirected graph description. Two-item edges map to plain edges;
    /// any other edge gets a point-shaped junction node linked to each
    /// member.
    pub fn to_dot(&self) -> String {
        let mut junction = String::from("_he");
        while self.vertices.iter().any(|v| v.starts_with(&junction)) {
            junction.push('_');
        }
        let mut out = String::from("graph ihg {\n    node [shape=circle];\n");
        for v in &self.vertices {
            let _ = writeln!(out, "    {};", dot_id(v));
        }
        for (i, edge) in self.hyperedges.iter().enumerate() {
            let value = edge.value.map_or_else(|| "undefined".to_string(), |v| v.to_string());
            let label = format!("{}={}", edge.measure, value);
            let style = match edge.polarity {
                Polarity::Positive => String::new(),
                Polarity::Negative => ", style=dashed".to_string(),
            };
            if let [a, b] = edge.items.as_slice() {
                let _ = writeln!(out, "    {} -- {} [label={}{style}];", dot_id(a), dot_id(b), dot_quote(&label));
            } else {
                let node = dot_quote(&format!("{junction}{i}"));
                let _ = writeln!(out, "    {node} [shape=point, xlabel={}];", dot_quote(&label));
                for member in &edge.items {
                    let _ = writeln!(out, "    {node} -- {}{};", dot_id(member), if style.is_empty() { String::new() } else { " [style=dashed]".into() });
                }
            }
        }
        out.push_str("}\n");
        out
    }
}

fn dot_quote(text: &str) -> String {
    let mut out = String::from("\"");
    for c in text.chars() {
        if c == '"' || c == '\\' {
            out.push('\\');
        }
        out.push(c);
    }
    out.push('"');
    out
}

fn dot_id(label: &str) -> String {
    let mut chars = label.chars();
    let bare = matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
        && !matches!(label.to_ascii_lowercase().as_str(), "node" | "edge" | "graph" | "digraph" | "subgraph" | "strict");
    if bare {
        label.to_string()
    } else {
        dot_quote(label)
    }
}
