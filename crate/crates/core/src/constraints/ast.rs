use std::fmt;

use crate::measures::MeasureId;
use crate::threshold::{CmpOp, Threshold};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Quantifier {
    ForAll,
    Exists,
}

impl Quantifier {
    pub fn keyword(self) -> &'static str {
        match self {
            Quantifier::ForAll => "forall",
            Quantifier::Exists => "exists",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SetRel {
    Eq,
    Ne,
    SubsetOf,
    ProperSubsetOf,
}

impl SetRel {
    pub fn keyword(self) -> &'static str {
        match self {
            SetRel::Eq => "==",
            SetRel::Ne => "!=",
            SetRel::SubsetOf => "subsetof",
            SetRel::ProperSubsetOf => "propersubsetof",
        }
    }
}

/// A first-order formula over the sub-patterns of `X`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Formula {
    /// `forall S in sub(X) where guard : body`. The guard restricts the
    /// domain: an implication under `forall`, a conjunction under `exists`.
    Quantified {
        quantifier: Quantifier,
        var: String,
        guard: Option<Box<Formula>>,
        body: Box<Formula>,
    },
    And(Vec<Formula>),
    Or(Vec<Formula>),
    Not(Box<Formula>),
    Compare { lhs: Term, op: CmpOp, rhs: Term },
    SetRelation { lhs: SetExpr, rel: SetRel, rhs: SetExpr },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Term {
    Measure { measure: MeasureId, args: Vec<SetExpr> },
    Length(SetExpr),
    Number(Threshold),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SetExpr {
    Var(String),
    /// The pattern `X` under evaluation.
    Whole,
    /// Two or more operands, none of them a union.
    Union(Vec<SetExpr>),
    Literal(Vec<String>),
}

impl Formula {
    pub fn negation(inner: Formula) -> Formula {
        Formula::Not(Box::new(inner))
    }

    pub fn contains_quantifier(&self) -> bool {
        match self {
            Formula::Quantified { .. } => true,
            Formula::And(parts) | Formula::Or(parts) => parts.iter().any(Formula::contains_quantifier),
            Formula::Not(inner) => inner.contains_quantifier(),
            Formula::Compare { .. } | Formula::SetRelation { .. } => false,
        }
    }

    /// Every label mentioned in a literal set, in order of appearance.
    pub fn literal_labels(&self) -> Vec<String> {
        let mut out = Vec::new();
        self.visit_sets(&mut |set| {
            if let SetExpr::Literal(labels) = set {
                out.extend(labels.iter().cloned());
            }
        });
        out
    }

    fn visit_sets(&self, f: &mut impl FnMut(&SetExpr)) {
        match self {
            Formula::Quantified { guard, body, .. } => {
                if let Some(g) = guard {
                    g.visit_sets(f);
                }
                body.visit_sets(f);
            }
            Formula::And(parts) | Formula::Or(parts) => parts.iter().for_each(|p| p.visit_sets(f)),
            Formula::Not(inner) => inner.visit_sets(f),
            Formula::Compare { lhs, rhs, .. } => {
                lhs.visit_sets(f);
                rhs.visit_sets(f);
            }
            Formula::SetRelation { lhs, rhs, .. } => {
                lhs.visit(f);
                rhs.visit(f);
            }
        }
    }
}

impl Term {
    fn visit_sets(&self, f: &mut impl FnMut(&SetExpr)) {
        match self {
            Term::Measure { args, .. } => args.iter().for_each(|a| a.visit(f)),
            Term::Length(set) => set.visit(f),
            Term::Number(_) => {}
        }
    }

    pub fn mentions_var(&self, var: &str) -> bool {
        match self {
            Term::Measure { args, .. } => args.iter().any(|a| a.mentions_var(var)),
            Term::Length(set) => set.mentions_var(var),
            Term::Number(_) => false,
        }
    }
}

impl SetExpr {
    fn visit(&self, f: &mut impl FnMut(&SetExpr)) {
        f(self);
        if let SetExpr::Union(parts) = self {
            parts.iter().for_each(|p| p.visit(f));
        }
    }

    pub fn mentions_var(&self, var: &str) -> bool {
        match self {
            SetExpr::Var(name) => name == var,
            SetExpr::Union(parts) => parts.iter().any(|p| p.mentions_var(var)),
            SetExpr::Whole | SetExpr::Literal(_) => false,
        }
    }
}

// Printing inserts only the parentheses needed for the printed text to parse
// back to the same tree.

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Context {
    Top,
    OrOperand,
    AndOperand,
    Unary,
}

impl Formula {
    fn write(&self, f: &mut fmt::Formatter<'_>, ctx: Context) -> fmt::Result {
        let needs_parens = match self {
            Formula::Or(_) => ctx > Context::Top,
            Formula::And(_) => ctx > Context::OrOperand,
            _ => false,
        };
        if needs_parens {
            f.write_str("(")?;
        }
        match self {
            Formula::Quantified {
                quantifier,
                var,
                guard,
                body,
            } => {
                write!(f, "{} {var} in sub(X)", quantifier.keyword())?;
                if let Some(guard) = guard {
                    f.write_str(" where ")?;
                    guard.write(f, Context::Top)?;
                }
                f.write_str(" : ")?;
                body.write(f, Context::Unary)?;
            }
            Formula::Or(parts) => write_joined(f, parts, " or ", Context::OrOperand)?,
            Formula::And(parts) => write_joined(f, parts, " and ", Context::AndOperand)?,
            Formula::Not(inner) => {
                f.write_str("not ")?;
                inner.write(f, Context::Unary)?;
            }
            Formula::Compare { lhs, op, rhs } => write!(f, "{lhs} {op} {rhs}")?,
            Formula::SetRelation { lhs, rel, rhs } => write!(f, "{lhs} {} {rhs}", rel.keyword())?,
        }
        if needs_parens {
            f.write_str(")")?;
        }
        Ok(())
    }
}

fn write_joined(f: &mut fmt::Formatter<'_>, parts: &[Formula], sep: &str, ctx: Context) -> fmt::Result {
    for (i, part) in parts.iter().enumerate() {
        if i > 0 {
            f.write_str(sep)?;
        }
        part.write(f, ctx)?;
    }
    Ok(())
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write(f, Context::Top)
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Measure { measure, args } => {
                write!(f, "{measure}(")?;
                for (i, arg) in args.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{arg}")?;
                }
                f.write_str(")")
            }
            Term::Length(set) => write!(f, "len({set})"),
            Term::Number(n) => write!(f, "{n}"),
        }
    }
}

impl fmt::Display for SetExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SetExpr::Var(name) => f.write_str(name),
            SetExpr::Whole => f.write_str("X"),
            SetExpr::Union(parts) => {
                for (i, part) in parts.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" union ")?;
                    }
                    write!(f, "{part}")?;
                }
                Ok(())
            }
            SetExpr::Literal(labels) => {
                f.write_str("{")?;
                for (i, label) in labels.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    write_label(f, label)?;
                }
                f.write_str("}")
            }
        }
    }
}

fn is_bare_label(label: &str) -> bool {
    let mut chars = label.chars();
    let ident = match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => chars.all(|c| c.is_ascii_alphanumeric() || c == '_'),
        _ => false,
    };
    let number = {
        let (int, frac) = label.split_once('.').unwrap_or((label, "0"));
        !int.is_empty() && !frac.is_empty() && int.bytes().all(|b| b.is_ascii_digit()) && frac.bytes().all(|b| b.is_ascii_digit())
    };
    ident || number
}

fn write_label(f: &mut fmt::Formatter<'_>, label: &str) -> fmt::Result {
    if is_bare_label(label) {
        return f.write_str(label);
    }
    f.write_str("\"")?;
    for c in label.chars() {
        if c == '"' || c == '\\' {
            f.write_str("\\")?;
        }
        write!(f, "{c}")?;
    }
    f.write_str("\"")
}
