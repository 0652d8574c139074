use std::collections::BTreeSet;

use crate::lattice::{self, DEFAULT_CAP, HARD_CAP};
use crate::measures::{MeasureId, MeasureValue};
use crate::threshold::{CmpOp, Ratio};
use crate::transactions::{DataError, Pattern, TransactionDatabase};

use super::ast::{Formula, Quantifier, SetExpr, SetRel, Term};
use super::ConstraintError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EvalOptions {
    /// Largest pattern whose sub-patterns will be enumerated.
    pub cap: usize,
}

impl Default for EvalOptions {
    fn default() -> Self {
        EvalOptions { cap: DEFAULT_CAP }
    }
}

impl EvalOptions {
    pub fn with_cap(cap: usize) -> Self {
        EvalOptions { cap: cap.min(HARD_CAP) }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EvaluationTrace {
    pub verdict: bool,
    /// Non-empty sub-patterns of `X` that were measure arguments of a
    /// comparison that held, in levelwise order.
    pub witnesses: Vec<Pattern>,
}

/// A sub-pattern selected by a quantifier body, with the measure comparison
/// that admitted it.
#[derive(Debug, Clone, PartialEq)]
pub struct SubpatternHit {
    pub pattern: Pattern,
    pub measure: Option<MeasureId>,
    pub value: MeasureValue,
    pub op: Option<CmpOp>,
}

struct Evaluator<'a> {
    db: &'a TransactionDatabase,
    x: &'a Pattern,
    domain: Vec<Pattern>,
    env: Vec<(&'a str, Pattern)>,
    witnesses: BTreeSet<Pattern>,
}

impl<'a> Evaluator<'a> {
    fn new(db: &'a TransactionDatabase, x: &'a Pattern, opts: EvalOptions) -> Result<Self, ConstraintError> {
        let cap = opts.cap.min(HARD_CAP);
        if x.len() > cap {
            return Err(ConstraintError::CapExceeded { size: x.len(), cap });
        }
        if let Some(bad) = x.iter().find(|i| i.index() >= db.item_count()) {
            return Err(ConstraintError::ItemOutOfRange(bad.0));
        }
        Ok(Evaluator {
            db,
            x,
            domain: lattice::nonempty_subsets(x),
            env: Vec::new(),
            witnesses: BTreeSet::new(),
        })
    }

    fn set(&self, expr: &SetExpr) -> Result<Pattern, ConstraintError> {
        match expr {
            SetExpr::Var(name) => self
                .env
                .iter()
                .rev()
                .find(|(v, _)| v == name)
                .map(|(_, p)| p.clone())
                // The parser rejects these; a hand-built tree can still hold one.
                .ok_or_else(|| ConstraintError::UnboundVariable(name.clone())),
            SetExpr::Whole => Ok(self.x.clone()),
            SetExpr::Union(parts) => {
                let mut acc = Pattern::empty();
                for part in parts {
                    acc = acc.union(&self.set(part)?);
                }
                Ok(acc)
            }
            SetExpr::Literal(labels) => self.db.pattern(labels).map_err(|e| match e {
                DataError::UnknownItem(label) => ConstraintError::UnknownItem(label),
                other => ConstraintError::Data(other.to_string()),
            }),
        }
    }

    fn term(&self, term: &Term, args_out: &mut Vec<Pattern>) -> Result<MeasureValue, ConstraintError> {
        match term {
            Term::Measure { measure, args } => {
                let sets = args.iter().map(|a| self.set(a)).collect::<Result<Vec<_>, _>>()?;
                let value = measure.evaluate_total(self.db, &sets);
                args_out.extend(sets);
                Ok(value)
            }
            Term::Length(set) => Ok(MeasureValue::Exact(Ratio::new(self.set(set)?.len() as u128, 1))),
            Term::Number(n) => Ok(MeasureValue::Exact(n.ratio())),
        }
    }

    fn compare(&mut self, lhs: &Term, op: CmpOp, rhs: &Term) -> Result<bool, ConstraintError> {
        let mut args = Vec::new();
        let l = self.term(lhs, &mut args)?;
        let r = self.term(rhs, &mut args)?;
        let holds = l.compare(op, &r);
        if holds {
            for arg in args {
                if !arg.is_empty() && arg.is_subset_of(self.x) {
                    self.witnesses.insert(arg);
                }
            }
        }
        Ok(holds)
    }

    /// Every operand is evaluated (no short circuit) so the witness set does
    /// not depend on operand order; a guard does gate its body.
    fn eval(&mut self, formula: &'a Formula) -> Result<bool, ConstraintError> {
        match formula {
            Formula::Compare { lhs, op, rhs } => self.compare(lhs, *op, rhs),
            Formula::SetRelation { lhs, rel, rhs } => {
                let l = self.set(lhs)?;
                let r = self.set(rhs)?;
                Ok(match rel {
                    SetRel::Eq => l == r,
                    SetRel::Ne => l != r,
                    SetRel::SubsetOf => l.is_subset_of(&r),
                    SetRel::ProperSubsetOf => l.len() < r.len() && l.is_subset_of(&r),
                })
            }
            Formula::Not(inner) => Ok(!self.eval(inner)?),
            Formula::And(parts) => {
                let mut all = true;
                for part in parts {
                    all &= self.eval(part)?;
                }
                Ok(all)
            }
            Formula::Or(parts) => {
                let mut any = false;
                for part in parts {
                    any |= self.eval(part)?;
                }
                Ok(any)
            }
            Formula::Quantified {
                quantifier,
                var,
                guard,
                body,
            } => {
                let mut all = true;
                let mut any = false;
                for i in 0..self.domain.len() {
                    let s = self.domain[i].clone();
                    self.env.push((var.as_str(), s));
                    let admitted = match guard {
                        Some(g) => self.eval(g),
                        None => Ok(true),
                    };
                    let outcome = match admitted {
                        Ok(true) => self.eval(body).map(Some),
                        Ok(false) => Ok(None),
                        Err(e) => Err(e),
                    };
                    self.env.pop();
                    if let Some(holds) = outcome? {
                        all &= holds;
                        any |= holds;
                    }
                }
                Ok(match quantifier {
                    Quantifier::ForAll => all,
                    Quantifier::Exists => any,
                })
            }
        }
    }
}

/// Decides whether `x` satisfies `constraint` on `db`.
pub fn evaluate_constraint(
    db: &TransactionDatabase,
    constraint: &Formula,
    x: &Pattern,
    opts: EvalOptions,
) -> Result<EvaluationTrace, ConstraintError> {
    let mut ev = Evaluator::new(db, x, opts)?;
    let verdict = ev.eval(constraint)?;
    let mut witnesses: Vec<Pattern> = ev.witnesses.into_iter().collect();
    witnesses.sort_by(|a, b| a.levelwise_cmp(b));
    Ok(EvaluationTrace { verdict, witnesses })
}

/// Comparison atoms of `body` not under an odd number of negations, in
/// source order.
fn positive_comparisons<'f>(formula: &'f Formula, negated: bool, out: &mut Vec<(&'f Term, CmpOp, &'f Term)>) {
    match formula {
        Formula::Compare { lhs, op, rhs } if !negated => out.push((lhs, *op, rhs)),
        Formula::Not(inner) => positive_comparisons(inner, !negated, out),
        Formula::And(parts) | Formula::Or(parts) => parts.iter().for_each(|p| positive_comparisons(p, negated, out)),
        _ => {}
    }
}

/// The sub-patterns `S` of `x` admitted by a top-level quantifier's guard
/// and body, ignoring the quantifier kind. Each hit carries the first
/// positive comparison on a measure of `S` that held for it.
pub fn subpattern_hits(
    db: &TransactionDatabase,
    constraint: &Formula,
    x: &Pattern,
    opts: EvalOptions,
) -> Result<Vec<SubpatternHit>, ConstraintError> {
    let Formula::Quantified { var, guard, body, .. } = constraint else {
        return Err(ConstraintError::UnsupportedShape);
    };
    if body.contains_quantifier() || guard.as_deref().is_some_and(Formula::contains_quantifier) {
        return Err(ConstraintError::UnsupportedShape);
    }
    let mut atoms = Vec::new();
    positive_comparisons(body, false, &mut atoms);

    let mut ev = Evaluator::new(db, x, opts)?;
    let mut hits = Vec::new();
    for i in 0..ev.domain.len() {
        let s = ev.domain[i].clone();
        ev.env.push((var.as_str(), s.clone()));
        let admitted = match guard.as_deref() {
            Some(g) => ev.eval(g)?,
            None => true,
        };
        if admitted && ev.eval(body)? {
            let mut hit = SubpatternHit {
                pattern: s.clone(),
                measure: None,
                value: crate::measures::support(db, &s),
                op: None,
            };
            for &(lhs, op, rhs) in &atoms {
                let Some(Term::Measure { measure, .. }) = [lhs, rhs].into_iter().find(|t| matches!(t, Term::Measure { .. }) && t.mentions_var(var)) else {
                    continue;
                };
                let holds = ev.compare(lhs, op, rhs)?;
                if holds {
                    let measured = if matches!(lhs, Term::Measure { .. }) && lhs.mentions_var(var) { lhs } else { rhs };
                    hit.measure = Some(*measure);
                    hit.value = ev.term(measured, &mut Vec::new())?;
                    // Normalize so the measure sits on the left.
                    hit.op = Some(if std::ptr::eq(measured, lhs) { op } else { flip(op) });
                    break;
                }
            }
            hits.push(hit);
        }
        ev.env.pop();
    }
    Ok(hits)
}

fn flip(op: CmpOp) -> CmpOp {
    match op {
        CmpOp::Ge => CmpOp::Le,
        CmpOp::Gt => CmpOp::Lt,
        CmpOp::Le => CmpOp::Ge,
        CmpOp::Lt => CmpOp::Gt,
        other => other,
    }
}

/// The sub-patterns of `x` satisfying a single-quantifier constraint's guard
/// and body, in levelwise order.
pub fn satisfying_subpatterns(
    db: &TransactionDatabase,
    constraint: &Formula,
    x: &Pattern,
    opts: EvalOptions,
) -> Result<Vec<Pattern>, ConstraintError> {
    Ok(subpattern_hits(db, constraint, x, opts)?.into_iter().map(|h| h.pattern).collect())
}
