//! Constraint-based mining of higher-order association patterns.
//!
//! A pattern `X` is judged by a predicate over its sub-patterns rather than
//! by a single interestingness number. The crate provides:
//!
//! - [`transactions`]: basket-format databases with exact support, tidset
//!   and closure queries;
//! - [`measures`]: lift (`col`), all-confidence, bond and the dependence
//!   `d(P, Q)`;
//! - [`constraints`]: a first-order constraint language over sub-patterns;
//! - [`miners`]: frequent, closed, maximal, clique, bi-clique, indirect
//!   association, star, all-correlation and unexpected-correlation miners;
//! - [`hypergraph`]: item hyper-graphs with JSON and DOT export;
//! - [`curves`]: sub-pattern interestingness curves with CSV export.

mod bitset;
pub mod cli;
pub mod constraints;
pub mod curves;
pub mod hypergraph;
pub mod lattice;
pub mod measures;
pub mod miners;
pub mod threshold;
pub mod transactions;

pub use constraints::{evaluate_constraint, parse_constraint, pattern_space_size, EvalOptions, Formula};
pub use measures::{MeasureId, MeasureValue};
pub use threshold::Threshold;
pub use transactions::{ItemId, Pattern, Support, Tidset, TransactionDatabase};
