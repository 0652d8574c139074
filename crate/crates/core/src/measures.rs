//! Interestingness measures beyond raw support.
//!
//! Count-based measures (support, all-confidence, bond) are returned as exact
//! ratios so threshold tests stay exact; lift and the two-argument dependence
//! are real-valued. A measure whose denominator vanishes is
//! [`MeasureValue::Undefined`], and every comparison against it is false.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::threshold::{CmpOp, Ratio};
use crate::transactions::{Pattern, TransactionDatabase};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MeasureError {
    #[error("{measure} needs a pattern of at least {min} item(s), got {got}")]
    Arity { measure: MeasureId, min: usize, got: usize },
    #[error("{measure} takes {expected} argument(s), got {got}")]
    ArgumentCount { measure: MeasureId, expected: usize, got: usize },
    #[error("dependence arguments must be non-empty and disjoint")]
    Overlap,
    #[error("unknown measure `{0}` (expected support, lift, col, allconf, bond or d)")]
    Unknown(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MeasureId {
    Support,
    /// Also reachable under the alias `col`.
    Lift,
    AllConfidence,
    Bond,
    /// The two-argument dependence `d(P, Q)`.
    Dependence,
}

impl MeasureId {
    pub const ALL: [MeasureId; 5] = [
        MeasureId::Support,
        MeasureId::Lift,
        MeasureId::AllConfidence,
        MeasureId::Bond,
        MeasureId::Dependence,
    ];

    pub fn name(self) -> &'static str {
        match self {
            MeasureId::Support => "support",
            MeasureId::Lift => "lift",
            MeasureId::AllConfidence => "allconf",
            MeasureId::Bond => "bond",
            MeasureId::Dependence => "d",
        }
    }

    pub fn arity(self) -> usize {
        match self {
            MeasureId::Dependence => 2,
            _ => 1,
        }
    }

    /// Evaluates the measure, rejecting arguments outside its domain.
    pub fn evaluate(self, db: &TransactionDatabase, args: &[Pattern]) -> Result<MeasureValue, MeasureError> {
        if args.len() != self.arity() {
            return Err(MeasureError::ArgumentCount {
                measure: self,
                expected: self.arity(),
                got: args.len(),
            });
        }
        match self {
            MeasureId::Support => Ok(support(db, &args[0])),
            MeasureId::Lift => lift(db, &args[0]),
            MeasureId::AllConfidence => all_confidence(db, &args[0]),
            MeasureId::Bond => bond(db, &args[0]),
            MeasureId::Dependence => dependence(db, &args[0], &args[1]),
        }
    }

    /// Like [`MeasureId::evaluate`] but total: domain violations (a
    /// singleton passed to lift, overlapping dependence arguments) become
    /// `Undefined`.
    pub fn evaluate_total(self, db: &TransactionDatabase, args: &[Pattern]) -> MeasureValue {
        self.evaluate(db, args).unwrap_or(MeasureValue::Undefined)
    }
}

impl fmt::Display for MeasureId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for MeasureId {
    type Err = MeasureError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "support" => Ok(MeasureId::Support),
            "lift" | "col" => Ok(MeasureId::Lift),
            "allconf" => Ok(MeasureId::AllConfidence),
            "bond" => Ok(MeasureId::Bond),
            "d" => Ok(MeasureId::Dependence),
            other => Err(MeasureError::Unknown(other.to_string())),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum MeasureValue {
    Exact(Ratio),
    Real(f64),
    Undefined,
}

impl MeasureValue {
    fn exact(num: usize, den: usize) -> Self {
        if den == 0 {
            MeasureValue::Undefined
        } else {
            MeasureValue::Exact(Ratio::new(num as u128, den as u128))
        }
    }

    pub fn value(&self) -> Option<f64> {
        match self {
            MeasureValue::Exact(r) => Some(r.as_f64()),
            MeasureValue::Real(v) => Some(*v),
            MeasureValue::Undefined => None,
        }
    }

    pub fn is_defined(&self) -> bool {
        !matches!(self, MeasureValue::Undefined)
    }

    /// `self op other`. Exact against exact is decided by cross
    /// multiplication, anything involving a real uses the shared tolerance,
    /// and an undefined operand makes the comparison false.
    pub fn compare(&self, op: CmpOp, other: &MeasureValue) -> bool {
        match (self, other) {
            (MeasureValue::Undefined, _) | (_, MeasureValue::Undefined) => false,
            (MeasureValue::Exact(a), MeasureValue::Exact(b)) => op.from_ordering(a.exact_cmp(b)),
            (a, b) => op.apply_real(a.value().unwrap_or(f64::NAN), b.value().unwrap_or(f64::NAN)),
        }
    }
}

pub fn support(db: &TransactionDatabase, x: &Pattern) -> MeasureValue {
    MeasureValue::exact(db.support_count(x), db.transaction_count())
}

/// `support(X) / prod support({i})` for `|X| >= 2`.
pub fn lift(db: &TransactionDatabase, x: &Pattern) -> Result<MeasureValue, MeasureError> {
    if x.len() < 2 {
        return Err(MeasureError::Arity {
            measure: MeasureId::Lift,
            min: 2,
            got: x.len(),
        });
    }
    Ok(lift_unchecked(db, x, db.support_count(x)))
}

/// Lift given the already-counted support of `x`.
pub(crate) fn lift_unchecked(db: &TransactionDatabase, x: &Pattern, count: usize) -> MeasureValue {
    let n = db.transaction_count() as f64;
    if n == 0.0 {
        return MeasureValue::Undefined;
    }
    let mut value = count as f64 / n;
    for item in x.iter() {
        let singleton = db.item_tidset(item).len();
        if singleton == 0 {
            return MeasureValue::Undefined;
        }
        value *= n / singleton as f64;
    }
    MeasureValue::Real(value)
}

/// `support(X) / max support({i})`.
pub fn all_confidence(db: &TransactionDatabase, x: &Pattern) -> Result<MeasureValue, MeasureError> {
    if x.is_empty() {
        return Err(MeasureError::Arity {
            measure: MeasureId::AllConfidence,
            min: 1,
            got: 0,
        });
    }
    let max_single = x.iter().map(|i| db.item_tidset(i).len()).max().unwrap_or(0);
    Ok(MeasureValue::exact(db.support_count(x), max_single))
}

/// `|tidset(X)| / |union of item tidsets|`.
pub fn bond(db: &TransactionDatabase, x: &Pattern) -> Result<MeasureValue, MeasureError> {
    let mut items = x.iter();
    let Some(first) = items.next() else {
        return Err(MeasureError::Arity {
            measure: MeasureId::Bond,
            min: 1,
            got: 0,
        });
    };
    let mut union = db.item_tidset(first).clone();
    for item in items {
        union.union_with(db.item_tidset(item));
    }
    Ok(MeasureValue::exact(db.support_count(x), union.len()))
}

/// `support(P ∪ Q) / (support(P) * support(Q))` for disjoint non-empty `P`, `Q`.
pub fn dependence(db: &TransactionDatabase, p: &Pattern, q: &Pattern) -> Result<MeasureValue, MeasureError> {
    if p.is_empty() || q.is_empty() || !p.is_disjoint(q) {
        return Err(MeasureError::Overlap);
    }
    let n = db.transaction_count() as f64;
    let sp = db.support_count(p) as f64;
    let sq = db.support_count(q) as f64;
    if n == 0.0 || sp == 0.0 || sq == 0.0 {
        return Ok(MeasureValue::Undefined);
    }
    let joint = db.support_count(&p.union(q)) as f64;
    Ok(MeasureValue::Real(joint * n / (sp * sq)))
}

#[cfg(test)]
mod tests {
    use super::*;

    const EPS: f64 = 1e-12;

    fn db(text: &str) -> TransactionDatabase {
        TransactionDatabase::parse_basket(text).unwrap()
    }

    fn db1() -> TransactionDatabase {
        db("a b\na b c\nb c\na c\n")
    }
    fn db2() -> TransactionDatabase {
        db("a c\na c\na c\nb c\nb c\nb c\n")
    }
    fn db4() -> TransactionDatabase {
        db("a c\na d\nb c\nb d\n")
    }
    fn db5() -> TransactionDatabase {
        db("a b c\na\nb\nc\na\nb\nc\nd\n")
    }

    fn val(v: Result<MeasureValue, MeasureError>) -> f64 {
        v.unwrap().value().unwrap()
    }

    fn p(db: &TransactionDatabase, labels: &[&str]) -> Pattern {
        db.pattern(labels).unwrap()
    }

    #[test]
    fn lift_examples() {
        let d2 = db2();
        assert!((val(lift(&d2, &p(&d2, &["a", "c"]))) - 1.0).abs() < EPS);
        let d5 = db5();
        assert!((val(lift(&d5, &p(&d5, &["a", "b", "c"]))) - 512.0 / 216.0).abs() < EPS);
        assert!((val(lift(&d5, &p(&d5, &["a", "b"]))) - 8.0 / 9.0).abs() < EPS);
    }

    #[test]
    fn lift_rejects_singletons_and_flags_zero_denominators() {
        let d5 = db5();
        assert!(matches!(
            lift(&d5, &p(&d5, &["a"])),
            Err(MeasureError::Arity { min: 2, got: 1, .. })
        ));
        let extended = d5.with_items(["ghost"]);
        let ghost = p(&extended, &["a", "ghost"]);
        assert_eq!(lift(&extended, &ghost).unwrap(), MeasureValue::Undefined);
    }

    #[test]
    fn all_confidence_examples() {
        let d1 = db1();
        assert!((val(all_confidence(&d1, &p(&d1, &["a", "b"]))) - 2.0 / 3.0).abs() < EPS);
        assert_eq!(val(all_confidence(&d1, &p(&d1, &["a"]))), 1.0);
        let d5 = db5();
        assert!((val(all_confidence(&d5, &p(&d5, &["a", "b", "c"]))) - 1.0 / 3.0).abs() < EPS);
        assert!(all_confidence(&d1, &Pattern::empty()).is_err());
    }

    #[test]
    fn bond_examples() {
        let d1 = db1();
        assert_eq!(val(bond(&d1, &p(&d1, &["a", "b"]))), 0.5);
        assert_eq!(val(bond(&d1, &p(&d1, &["a"]))), 1.0);
        let d4 = db4();
        assert_eq!(val(bond(&d4, &p(&d4, &["a", "b"]))), 0.0);
        assert!(bond(&d1, &Pattern::empty()).is_err());
        let ghost = d1.with_items(["ghost"]);
        assert_eq!(bond(&ghost, &p(&ghost, &["ghost"])).unwrap(), MeasureValue::Undefined);
    }

    #[test]
    fn dependence_examples() {
        let d2 = db2();
        assert!((val(dependence(&d2, &p(&d2, &["a"]), &p(&d2, &["c"]))) - 1.0).abs() < EPS);
        let d5 = db5();
        assert!((val(dependence(&d5, &p(&d5, &["a"]), &p(&d5, &["b"]))) - 8.0 / 9.0).abs() < EPS);
        let d4 = db4();
        assert_eq!(val(dependence(&d4, &p(&d4, &["a"]), &p(&d4, &["b"]))), 0.0);
    }

    #[test]
    fn dependence_argument_errors() {
        let d1 = db1();
        let ab = p(&d1, &["a", "b"]);
        assert_eq!(dependence(&d1, &ab, &p(&d1, &["b"])), Err(MeasureError::Overlap));
        assert_eq!(dependence(&d1, &Pattern::empty(), &ab), Err(MeasureError::Overlap));
        assert_eq!(
            MeasureId::Dependence.evaluate_total(&d1, &[ab.clone(), ab]),
            MeasureValue::Undefined
        );
    }

    #[test]
    fn registry_names() {
        for id in MeasureId::ALL {
            assert_eq!(id.name().parse::<MeasureId>().unwrap(), id);
        }
        assert_eq!("col".parse::<MeasureId>().unwrap(), MeasureId::Lift);
        assert!("entropy".parse::<MeasureId>().is_err());
        let d1 = db1();
        assert!(matches!(
            MeasureId::Support.evaluate(&d1, &[]),
            Err(MeasureError::ArgumentCount { expected: 1, got: 0, .. })
        ));
    }

    #[test]
    fn identical_transactions_give_unit_measures() {
        let same = db("x y z\nx y z\nx y z\n");
        let xyz = p(&same, &["x", "y", "z"]);
        assert_eq!(val(all_confidence(&same, &xyz)), 1.0);
        assert_eq!(val(bond(&same, &xyz)), 1.0);
    }

    #[test]
    fn lift_is_not_anti_monotone() {
        let d5 = db5();
        let pair = val(lift(&d5, &p(&d5, &["a", "b"])));
        let triple = val(lift(&d5, &p(&d5, &["a", "b", "c"])));
        assert!(triple > pair);
    }

    #[test]
    fn undefined_compares_false() {
        let one = MeasureValue::Real(1.0);
        for op in [CmpOp::Ge, CmpOp::Gt, CmpOp::Le, CmpOp::Lt, CmpOp::Eq, CmpOp::Ne] {
            assert!(!MeasureValue::Undefined.compare(op, &one));
            assert!(!one.compare(op, &MeasureValue::Undefined));
        }
    }
}
