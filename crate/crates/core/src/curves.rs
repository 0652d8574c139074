//! Sub-pattern interestingness curves: a measure evaluated over the
//! levelwise-ordered non-empty sub-patterns of a pattern.

use std::fmt::Write as _;

use thiserror::Error;

use crate::lattice::{levelwise_masks, HARD_CAP};
use crate::measures::{MeasureId, MeasureValue};
use crate::transactions::{Pattern, TransactionDatabase};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CurveError {
    #[error("pattern has {size} items but the enumeration cap is {cap}; raise the cap to at least {size}")]
    CapExceeded { size: usize, cap: usize },
    #[error("measure `{0}` takes two patterns and has no curve")]
    UnsupportedMeasure(MeasureId),
}

/// Non-empty subsets of `elements` by ascending size, lexicographic by
/// position within a size.
pub fn levelwise_order<T: Clone>(elements: &[T], cap: usize) -> Result<Vec<Vec<T>>, CurveError> {
    let cap = cap.min(HARD_CAP);
    if elements.len() > cap {
        return Err(CurveError::CapExceeded {
            size: elements.len(),
            cap,
        });
    }
    Ok(levelwise_masks(elements.len())
        .into_iter()
        .map(|mask| {
            elements
                .iter()
                .enumerate()
                .filter(|(i, _)| mask & (1 << i) != 0)
                .map(|(_, e)| e.clone())
                .collect()
        })
        .collect())
}

/// [`levelwise_order`] over the items of `x` taken in label order.
pub fn pattern_levelwise_order(db: &TransactionDatabase, x: &Pattern, cap: usize) -> Result<Vec<Pattern>, CurveError> {
    let mut items: Vec<_> = x.items().to_vec();
    items.sort_by(|a, b| db.label(*a).cmp(db.label(*b)));
    Ok(levelwise_order(&items, cap)?.into_iter().map(Pattern::new).collect())
}

#[derive(Debug, Clone, PartialEq)]
pub struct CurvePoint {
    pub subpattern: Pattern,
    pub level: usize,
    pub value: MeasureValue,
}

#[derive(Debug, Clone, PartialEq)]
pub struct InterestingnessCurve {
    pub pattern: Pattern,
    pub measure: MeasureId,
    pub points: Vec<CurvePoint>,
    labels: Vec<Vec<String>>,
}

/// One point per non-empty sub-pattern of `x`. Values the measure does not
/// define (lift of a singleton, anything on an empty database) are kept as
/// [`MeasureValue::Undefined`].
pub fn compute_curve(
    db: &TransactionDatabase,
    x: &Pattern,
    measure: MeasureId,
    cap: usize,
) -> Result<InterestingnessCurve, CurveError> {
    if measure.arity() != 1 {
        return Err(CurveError::UnsupportedMeasure(measure));
    }
    let order = pattern_levelwise_order(db, x, cap)?;
    let labels = order.iter().map(|s| db.sorted_labels(s)).collect();
    let points = order
        .into_iter()
        .map(|subpattern| CurvePoint {
            level: subpattern.len(),
            value: measure.evaluate_total(db, std::slice::from_ref(&subpattern)),
            subpattern,
        })
        .collect();
    Ok(InterestingnessCurve {
        pattern: x.clone(),
        measure,
        points,
        labels,
    })
}

impl InterestingnessCurve {
    /// Sorted labels of each point's sub-pattern.
    pub fn point_labels(&self, index: usize) -> &[String] {
        &self.labels[index]
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("index,subpattern,level,measure,value\n");
        for (i, point) in self.points.iter().enumerate() {
            let value = point.value.value().map(|v| v.to_string()).unwrap_or_default();
            let _ = writeln!(
                out,
                "{},{},{},{},{}",
                i + 1,
                csv_field(&self.labels[i].join("+")),
                point.level,
                self.measure.name(),
                value
            );
        }
        out
    }
}

fn csv_field(text: &str) -> String {
    if text.contains([',', '"', '\n', '\r']) {
        format!("\"{}\"", text.replace('"', "\"\""))
    } else {
        text.to_string()
    }
}
