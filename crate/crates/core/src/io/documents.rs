//! On-disk JSON document shapes.
//!
//! Numbers in result documents are rounded to 12 significant digits before
//! serialization so that emitted files are reproducible across runs and
//! platforms.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::credal::Certificates;

/// One variable declaration: a name and its ordered state labels.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VariableDecl {
    pub name: String,
    pub states: Vec<String>,
}

/// A network file.
///
/// Every variable gets exactly one local model, looked up by name in one of
/// the three table maps. `parents` lists each child's ordered parents; a
/// missing entry means the variable is a root. Rows are ordered row-major
/// over parent state indices (last parent varies fastest), and each row
/// ranges over the child's states in declaration order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NetworkDocument {
    /// Format version; currently always `"1"`.
    pub version: String,
    pub variables: Vec<VariableDecl>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub parents: BTreeMap<String, Vec<String>>,
    /// Sharp tables: child → rows of probabilities.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub cpts: BTreeMap<String, Vec<Vec<f64>>>,
    /// Credal tables: child → one credal row per parent configuration.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub ccpts: BTreeMap<String, Vec<CredalRowDoc>>,
    /// Extensive tables: child → explicit list of candidate tables.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub ecpts: BTreeMap<String, Vec<Vec<Vec<f64>>>>,
}

/// One credal row: either explicit `vertices` or interval `lower`/`upper`
/// bounds (exactly one of the two forms).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CredalRowDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lower: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub upper: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vertices: Option<Vec<Vec<f64>>>,
}

/// An evidence file: a list of observations, each tied to one variable.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct EvidenceDocument(pub Vec<EvidenceItem>);

/// `n` positive outcomes out of `N` trials.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CountPair {
    pub n: u64,
    #[serde(rename = "N")]
    pub total: u64,
}

/// One expert opinion inside an `opinion-pool` item: a sharp `pmf`, explicit
/// credal `vertices`, or interval `lower`/`upper` bounds.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OpinionDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pmf: Option<BTreeMap<String, f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lower: Option<BTreeMap<String, f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub upper: Option<BTreeMap<String, f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vertices: Option<Vec<BTreeMap<String, f64>>>,
}

/// One observation. State-keyed maps must mention every state of the
/// variable exactly once.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum EvidenceItem {
    /// The variable is seen in one state, with full reliability.
    Hard { variable: String, state: String },
    /// Per-state observation likelihoods, up to positive scale.
    Virtual {
        variable: String,
        likelihoods: BTreeMap<String, f64>,
    },
    /// A prescribed revised marginal.
    Soft {
        variable: String,
        pmf: BTreeMap<String, f64>,
    },
    /// Interval-valued likelihoods; each state's bound varies independently.
    CredalVirtual {
        variable: String,
        lower: BTreeMap<String, f64>,
        upper: BTreeMap<String, f64>,
    },
    /// A credal set of revised marginals, given by its vertices.
    CredalSoft {
        variable: String,
        vertices: Vec<BTreeMap<String, f64>>,
    },
    /// A report that carries no information about the variable.
    Vacuous { variable: String },
    /// A report that only narrows the state space to `possible`.
    Incomplete {
        variable: String,
        possible: Vec<String>,
    },
    /// Small-sample test counts, turned into interval likelihoods with prior
    /// strength `s`. Binary variables may use the `positives`/`negatives`
    /// shorthand; otherwise `counts` maps every state to its pair.
    Idm {
        variable: String,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        positives: Option<CountPair>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        negatives: Option<CountPair>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        counts: Option<BTreeMap<String, CountPair>>,
        s: f64,
    },
    /// Several opinions on one variable, pooled geometrically before
    /// absorption. Weights default to uniform.
    OpinionPool {
        variable: String,
        opinions: Vec<OpinionDoc>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        weights: Option<Vec<f64>>,
    },
}

/// Posterior bounds for one state of the query target.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StateBounds {
    pub state: String,
    pub lower: f64,
    pub upper: f64,
}

/// The answer to one query.
///
/// `wall_time_ms` is measured but never serialized, so emitted documents are
/// identical across runs; the CLI reports timing on stderr instead.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResultDocument {
    pub target: String,
    /// The engine that produced the bounds (`oracle`, `two_u`, `approxlp`).
    pub method: String,
    pub posterior: Vec<StateBounds>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub certificates: Option<Certificates>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub warnings: Vec<String>,
    #[serde(default, skip_serializing)]
    pub wall_time_ms: Option<f64>,
}

/// Rounds to 12 significant digits, the precision promised by emitted
/// documents. The rounded value re-parses to itself, so files round-trip
/// without loss.
pub fn sig12(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    format!("{x:.11e}").parse().expect("rounded float re-parses")
}
