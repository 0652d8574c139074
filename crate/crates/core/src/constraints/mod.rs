//! A first-order constraint language over the sub-patterns of a pattern `X`.
//!
//! A constraint is a predicate on the lattice of sub-patterns of `X`;
//! `X` is interesting exactly when the predicate holds. Quantifiers range
//! over the non-empty subsets of `X` (including `X` itself):
//!
//! ```text
//! forall S in sub(X) where len(S) == 2 : support(S) >= 0.3
//! col(X) >= 1.5 and forall S in sub(X) where len(S) == 2 : col(S) < 1.5
//! exists S in sub(X) where S propersubsetof X : support(S) == support(X)
//! ```
//!
//! Grammar:
//!
//! ```text
//! constraint  := disjunction
//! disjunction := conjunction { "or" conjunction }
//! conjunction := unary { "and" unary }
//! unary       := "not" unary | quantified | atom | "(" constraint ")"
//! quantified  := ("forall" | "exists") VAR "in" "sub" "(" "X" ")" [ "where" constraint ] ":" unary
//! atom        := term CMP term | setexpr SETREL setexpr
//! term        := MEASURE "(" setexpr { "," setexpr } ")" | "len" "(" setexpr ")" | NUMBER
//! setexpr     := VAR | "X" | setexpr "union" setexpr | "{" LABEL { "," LABEL } "}"
//! CMP         := ">=" | ">" | "<=" | "<" | "==" | "!="
//! SETREL      := "==" | "!=" | "subsetof" | "propersubsetof"
//! ```
//!
//! Evaluation is classical and total: a comparison involving an undefined
//! measure value (lift of a singleton, a zero denominator) is false.

mod ast;
mod eval;
mod parser;

use num_bigint::BigUint;
use thiserror::Error;

pub use ast::{Formula, Quantifier, SetExpr, SetRel, Term};
pub use eval::{evaluate_constraint, satisfying_subpatterns, subpattern_hits, EvalOptions, EvaluationTrace, SubpatternHit};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ParseErrorKind {
    Lexical,
    Syntax,
    UnboundVariable,
    Arity,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{kind_name} at column {column}: {message}")]
pub struct ParseError {
    pub kind: ParseErrorKind,
    pub column: usize,
    pub message: String,
    kind_name: &'static str,
}

impl ParseError {
    fn new(kind: ParseErrorKind, column: usize, message: String) -> Self {
        let kind_name = match kind {
            ParseErrorKind::Lexical => "lexical error",
            ParseErrorKind::Syntax => "syntax error",
            ParseErrorKind::UnboundVariable => "unbound variable",
            ParseErrorKind::Arity => "arity mismatch",
        };
        ParseError {
            kind,
            column,
            message,
            kind_name,
        }
    }

    fn lexical(column: usize, message: String) -> Self {
        Self::new(ParseErrorKind::Lexical, column, message)
    }

    fn syntax(column: usize, message: String) -> Self {
        Self::new(ParseErrorKind::Syntax, column, message)
    }

    fn unbound(column: usize, name: String) -> Self {
        Self::new(ParseErrorKind::UnboundVariable, column, format!("`{name}` is not bound by a quantifier"))
    }

    fn arity(column: usize, message: String) -> Self {
        Self::new(ParseErrorKind::Arity, column, message)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstraintError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("pattern has {size} items but the enumeration cap is {cap}; raise the cap to at least {size}")]
    CapExceeded { size: usize, cap: usize },
    #[error("variable `{0}` is not bound")]
    UnboundVariable(String),
    #[error("{0}")]
    Data(String),
    #[error("unknown item `{0}` in constraint")]
    UnknownItem(String),
    #[error("pattern refers to item id {0} which is not in the database")]
    ItemOutOfRange(u32),
    #[error("witness extraction needs a single top-level quantifier with no nested quantifiers")]
    UnsupportedShape,
    #[error("pattern-space size is only computed for k <= {max}, got {got}")]
    SpaceTooLarge { got: u32, max: u32 },
}

pub fn parse_constraint(text: &str) -> Result<Formula, ParseError> {
    parser::parse(text)
}

/// Largest `k` accepted by [`pattern_space_size`].
pub const MAX_SPACE_EXPONENT: u32 = 10;

/// Number of distinct constraints on a `k`-item pattern that merely pick
/// which sub-patterns satisfy a condition: `2^(2^k)`.
pub fn pattern_space_size(k: u32) -> Result<BigUint, ConstraintError> {
    if k > MAX_SPACE_EXPONENT {
        return Err(ConstraintError::SpaceTooLarge {
            got: k,
            max: MAX_SPACE_EXPONENT,
        });
    }
    Ok(BigUint::from(1u8) << (1usize << k))
}
