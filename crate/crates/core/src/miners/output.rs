//! JSON-lines serialization of mining results.
//!
//! Each record carries `kind`, the sorted label array `items`, and a
//! `measures` map. Supports appear as `{"fraction": "k/n", "value": k/n}`.

use serde_json::{json, Map, Value};

use crate::measures::MeasureValue;
use crate::transactions::{Support, TransactionDatabase};

use super::{BicliquePattern, FoundPattern, IndirectAssociation, StarPattern};

/// One serialized result; `Display` renders a single JSON line.
#[derive(Debug, Clone, PartialEq)]
pub struct Record(pub Value);

impl std::fmt::Display for Record {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0.to_string())
    }
}

pub trait ToRecord {
    fn to_record(&self, db: &TransactionDatabase) -> Record;
}

fn support_json(s: &Support) -> Value {
    json!({ "fraction": s.fraction(), "value": s.ratio() })
}

fn measure_json(v: &MeasureValue) -> Value {
    v.value().map_or(Value::Null, Value::from)
}

impl ToRecord for FoundPattern {
    fn to_record(&self, db: &TransactionDatabase) -> Record {
        let mut measures = Map::new();
        measures.insert("support".into(), support_json(&self.support));
        if let Some(lift) = &self.lift {
            measures.insert("lift".into(), measure_json(lift));
        }
        Record(json!({
            "kind": self.kind.name(),
            "items": db.sorted_labels(&self.pattern),
            "measures": measures,
        }))
    }
}

impl ToRecord for IndirectAssociation {
    fn to_record(&self, db: &TransactionDatabase) -> Record {
        let all = self.mediator.with(self.a).with(self.b);
        Record(json!({
            "kind": "indirect",
            "items": db.sorted_labels(&all),
            "a": db.label(self.a),
            "b": db.label(self.b),
            "mediator": db.sorted_labels(&self.mediator),
            "measures": {
                "pair_support": support_json(&self.pair_support),
                "mediator_support_a": support_json(&self.mediator_supports.0),
                "mediator_support_b": support_json(&self.mediator_supports.1),
                "dependence_a": measure_json(&self.dependences.0),
                "dependence_b": measure_json(&self.dependences.1),
            },
        }))
    }
}

impl ToRecord for StarPattern {
    fn to_record(&self, db: &TransactionDatabase) -> Record {
        let all = self.center.union(&self.leaves);
        Record(json!({
            "kind": "star",
            "items": db.sorted_labels(&all),
            "center": db.sorted_labels(&self.center),
            "leaves": db.sorted_labels(&self.leaves),
            "measures": { "center_support": support_json(&db.exact_support(&self.center)) },
        }))
    }
}

impl ToRecord for BicliquePattern {
    fn to_record(&self, db: &TransactionDatabase) -> Record {
        let cross: Vec<Support> = self
            .w
            .iter()
            .flat_map(|a| self.v.iter().map(move |b| (a, b)))
            .map(|(a, b)| db.exact_support(&crate::transactions::Pattern::new([a, b])))
            .collect();
        let min_cross = cross.iter().min_by_key(|s| s.count).copied();
        Record(json!({
            "kind": "biclique",
            "items": db.sorted_labels(&self.w.union(&self.v)),
            "w": db.sorted_labels(&self.w),
            "v": db.sorted_labels(&self.v),
            "measures": { "min_cross_support": min_cross.as_ref().map_or(Value::Null, support_json) },
        }))
    }
}
