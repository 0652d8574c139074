//! Discovery algorithms for each pattern family.
//!
//! Every miner is a pure function of the database and its parameters and
//! returns results in a canonical order, so repeated runs serialize to the
//! same bytes.

mod correlation;
mod frequent;
pub(crate) mod graph;
mod indirect;
mod output;
mod structural;

use thiserror::Error;

use crate::measures::{MeasureId, MeasureValue};
use crate::threshold::Threshold;
use crate::transactions::{ItemId, Pattern, Support};

pub use correlation::{mine_all_correlation, mine_unexpected_correlation};
pub use frequent::{mine_closed, mine_frequent, mine_maximal};
pub use indirect::{mine_indirect, mine_star};
pub use output::{Record, ToRecord};
pub use structural::{mine_biclique, mine_clique};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParamError {
    #[error("itempair support threshold t_s ({t_s}) must be below the mediator support threshold t_f ({t_f})")]
    RareAboveFrequent { t_s: Threshold, t_f: Threshold },
    #[error("{name} must be at least 1")]
    ZeroLength { name: &'static str },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PatternKind {
    Frequent,
    Closed,
    Maximal,
    Clique,
    AllCorrelation,
    UnexpectedCorrelation,
}

impl PatternKind {
    pub fn name(self) -> &'static str {
        match self {
            PatternKind::Frequent => "frequent",
            PatternKind::Closed => "closed",
            PatternKind::Maximal => "maximal",
            PatternKind::Clique => "clique",
            PatternKind::AllCorrelation => "all_correlation",
            PatternKind::UnexpectedCorrelation => "unexpected_correlation",
        }
    }
}

/// One mined pattern with its exact support and, for the correlation
/// families, its lift.
#[derive(Debug, Clone, PartialEq)]
pub struct FoundPattern {
    pub kind: PatternKind,
    pub pattern: Pattern,
    pub support: Support,
    pub lift: Option<MeasureValue>,
}

/// A rare pair `(a, b)` tied to the mediator set through both items.
#[derive(Debug, Clone, PartialEq)]
pub struct IndirectAssociation {
    pub a: ItemId,
    pub b: ItemId,
    pub mediator: Pattern,
    pub pair_support: Support,
    /// Supports of `{a} ∪ M` and `{b} ∪ M`.
    pub mediator_supports: (Support, Support),
    /// `d({a}, M)` and `d({b}, M)`.
    pub dependences: (MeasureValue, MeasureValue),
}

/// A mediator center with at least two pairwise-rare leaves.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct StarPattern {
    pub center: Pattern,
    pub leaves: Pattern,
}

/// Two disjoint sides whose cross pairs are all frequent and whose
/// within-side pairs are all infrequent.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct BicliquePattern {
    pub w: Pattern,
    pub v: Pattern,
}

/// Thresholds for every miner. Support-like thresholds are exact decimals;
/// `min_correlation` and `t_d` are compared against real-valued measures
/// with the shared tolerance.
#[derive(Debug, Clone, PartialEq)]
pub struct MiningParams {
    pub minisupport: Threshold,
    pub min_correlation: Threshold,
    /// Itempair support threshold: `support({a,b}) < t_s`.
    pub t_s: Threshold,
    /// Mediator support threshold: `support({a} ∪ M) >= t_f`.
    pub t_f: Threshold,
    /// Mediator dependence threshold: `d({a}, M) >= t_d`.
    pub t_d: Threshold,
    pub max_pattern_len: Option<usize>,
    pub max_mediator_len: usize,
    pub dependence_measure: MeasureId,
    pub min_side: usize,
    /// Admit two-item unexpected-correlation patterns.
    pub include_pairs: bool,
}

impl Default for MiningParams {
    fn default() -> Self {
        let t = |s: &str| s.parse::<Threshold>().expect("valid literal");
        MiningParams {
            minisupport: t("0.1"),
            min_correlation: t("1"),
            t_s: t("0.1"),
            t_f: t("0.4"),
            t_d: t("1"),
            max_pattern_len: None,
            max_mediator_len: 3,
            dependence_measure: MeasureId::Dependence,
            min_side: 2,
            include_pairs: false,
        }
    }
}

impl MiningParams {
    pub fn validate(&self) -> Result<(), ParamError> {
        if self.t_s.ratio().exact_cmp(&self.t_f.ratio()) != std::cmp::Ordering::Less {
            return Err(ParamError::RareAboveFrequent {
                t_s: self.t_s,
                t_f: self.t_f,
            });
        }
        if self.max_mediator_len == 0 {
            return Err(ParamError::ZeroLength {
                name: "max_mediator_len",
            });
        }
        if self.min_side == 0 {
            return Err(ParamError::ZeroLength { name: "min_side" });
        }
        if self.max_pattern_len == Some(0) {
            return Err(ParamError::ZeroLength {
                name: "max_pattern_len",
            });
        }
        Ok(())
    }
}
