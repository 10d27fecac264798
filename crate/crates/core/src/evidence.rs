//! Evidence kinds and their absorption into a network.
//!
//! Six ways of being unsure about an observation, in increasing generality:
//!
//! - hard evidence: a variable is seen in one state;
//! - virtual evidence: per-state likelihoods of the observation, defined up
//!   to a positive scale;
//! - soft evidence: a prescribed revised marginal, absorbed by Jeffrey's
//!   rule;
//! - credal virtual / credal soft evidence: interval likelihoods,
//!   respectively a credal set of revised marginals;
//! - vacuous and incomplete observations: no information, or only a set of
//!   still-possible states;
//! - frequency counts with an imprecise-Dirichlet prior, which reduce to
//!   interval likelihoods.
//!
//! Everything but hard evidence is absorbed the same way: graft an auxiliary
//! binary child onto the observed variable, encode the evidence in that
//! child's conditional table (sharp, interval, or extensive), and condition
//! on the child's positive state. Absorbing several pieces of evidence is
//! then just several children, and one updating pass handles them all.
//!
//! Interval-valued likelihoods are read as a box: each state's likelihood
//! ranges over its interval independently of the others.

use std::collections::{HashMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::bn::{marginal, posterior, Factor, Query};
use crate::error::{Error, Result};
use crate::model::credal_set::SET_TOLERANCE;
use crate::model::{
    BayesianNetwork, Ccpt, Cpt, CredalNetwork, CredalRow, CredalSet, IntervalCs, NodeModel, Pmf,
    Variable,
};

/// Per-state observation likelihoods λ, meaningful up to positive scaling.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VirtualEvidence {
    pub variable: String,
    pub likelihoods: Vec<f64>,
}

impl VirtualEvidence {
    pub fn check(&self) -> Result<()> {
        if self
            .likelihoods
            .iter()
            .any(|&l| !l.is_finite() || l < 0.0)
        {
            return Err(Error::InvalidEvidence(format!(
                "{}: likelihoods must be finite and nonnegative",
                self.variable
            )));
        }
        if self.likelihoods.iter().all(|&l| l == 0.0) {
            return Err(Error::InvalidEvidence(format!(
                "{}: at least one likelihood must be positive",
                self.variable
            )));
        }
        Ok(())
    }
}

/// A prescribed revised marginal P′ for one variable.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SoftEvidence {
    pub variable: String,
    pub pmf: Pmf,
}

/// Interval-valued likelihoods: λ(x) ∈ [lower(x), upper(x)] per state,
/// varying independently (a box).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CredalVirtualEvidence {
    pub variable: String,
    pub lower: Vec<f64>,
    pub upper: Vec<f64>,
}

impl CredalVirtualEvidence {
    /// Ordinary constructor: rejects an all-zero lower profile, which would
    /// silently admit "the observation never happened" as a possibility.
    pub fn new(variable: impl Into<String>, lower: Vec<f64>, upper: Vec<f64>) -> Result<Self> {
        let cve = Self::vacuous_ok(variable, lower, upper)?;
        if cve.lower.iter().all(|&l| l == 0.0) {
            return Err(Error::InvalidEvidence(format!(
                "{}: every lower likelihood is zero; use a vacuous or incomplete observation to express ignorance",
                cve.variable
            )));
        }
        Ok(cve)
    }

    /// Permissive constructor for the deliberate all-zero-lower encodings
    /// (vacuous and incomplete observations).
    pub fn vacuous_ok(
        variable: impl Into<String>,
        lower: Vec<f64>,
        upper: Vec<f64>,
    ) -> Result<Self> {
        let variable = variable.into();
        if lower.len() != upper.len() || lower.is_empty() {
            return Err(Error::InvalidEvidence(format!(
                "{variable}: interval bounds must be nonempty and equal-length"
            )));
        }
        for (i, (&l, &u)) in lower.iter().zip(&upper).enumerate() {
            if !l.is_finite() || !u.is_finite() || l < 0.0 || l > u {
                return Err(Error::InvalidEvidence(format!(
                    "{variable}: state {i} needs 0 ≤ lower ≤ upper, got [{l}, {u}]"
                )));
            }
        }
        if upper.iter().all(|&u| u == 0.0) {
            return Err(Error::InvalidEvidence(format!(
                "{variable}: all upper likelihoods are zero"
            )));
        }
        Ok(CredalVirtualEvidence {
            variable,
            lower,
            upper,
        })
    }

    /// Total ignorance: λ(x) ∈ [0, 1] everywhere.
    pub fn vacuous(variable: impl Into<String>, card: usize) -> Self {
        CredalVirtualEvidence {
            variable: variable.into(),
            lower: vec![0.0; card],
            upper: vec![1.0; card],
        }
    }

    pub fn is_point(&self) -> bool {
        self.lower
            .iter()
            .zip(&self.upper)
            .all(|(&l, &u)| (u - l).abs() <= SET_TOLERANCE)
    }
}

/// A credal set of revised marginals K′ for one variable.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CredalSoftEvidence {
    pub variable: String,
    pub cs: CredalSet,
}

/// An observation that only narrows the state space: some states remain
/// possible, the rest are ruled out.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IncompleteObservation {
    pub variable: String,
    /// Indices of the still-possible states; nonempty, proper subset.
    pub possible: Vec<usize>,
}

impl IncompleteObservation {
    pub fn check(&self, card: usize) -> Result<()> {
        let distinct: HashSet<usize> = self.possible.iter().copied().collect();
        if distinct.is_empty() || distinct.len() >= card || self.possible.iter().any(|&s| s >= card)
        {
            return Err(Error::InvalidEvidence(format!(
                "{}: possible states must form a nonempty proper subset",
                self.variable
            )));
        }
        Ok(())
    }
}

/// Frequency counts for a per-state test outcome: n(x) positives out of
/// N(x) trials for each conditioning state, with prior strength s.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IdmCounts {
    pub variable: String,
    /// (n, N) per state of the variable.
    pub counts: Vec<(u64, u64)>,
    pub s: f64,
}

impl IdmCounts {
    pub fn check(&self) -> Result<()> {
        if !(self.s > 0.0) {
            return Err(Error::InvalidEvidence(format!(
                "{}: prior strength s must be positive",
                self.variable
            )));
        }
        for (i, &(n, total)) in self.counts.iter().enumerate() {
            if n > total {
                return Err(Error::InvalidEvidence(format!(
                    "{}: state {i} has more successes ({n}) than trials ({total})",
                    self.variable
                )));
            }
        }
        Ok(())
    }
}

/// Any single piece of evidence on one variable.
#[derive(Debug, Clone, PartialEq)]
pub enum Evidence {
    Hard { variable: String, state: usize },
    Virtual(VirtualEvidence),
    Soft(SoftEvidence),
    CredalVirtual(CredalVirtualEvidence),
    CredalSoft(CredalSoftEvidence),
    Vacuous { variable: String },
    Incomplete(IncompleteObservation),
    Pool(crate::pooling::OpinionSet),
}

impl Evidence {
    pub fn variable(&self) -> &str {
        match self {
            Evidence::Hard { variable, .. } | Evidence::Vacuous { variable } => variable,
            Evidence::Virtual(e) => &e.variable,
            Evidence::Soft(e) => &e.variable,
            Evidence::CredalVirtual(e) => &e.variable,
            Evidence::CredalSoft(e) => &e.variable,
            Evidence::Incomplete(e) => &e.variable,
            Evidence::Pool(p) => &p.variable,
        }
    }

    /// True when absorbing this evidence introduces imprecision.
    pub fn is_credal(&self) -> bool {
        match self {
            Evidence::Hard { .. } | Evidence::Virtual(_) | Evidence::Soft(_) => false,
            Evidence::CredalVirtual(_)
            | Evidence::CredalSoft(_)
            | Evidence::Vacuous { .. }
            | Evidence::Incomplete(_) => true,
            Evidence::Pool(p) => p.is_credal(),
        }
    }
}

pub(crate) fn resolve(net: &BayesianNetwork, variable: &str) -> Result<usize> {
    net.node(variable)
        .ok_or_else(|| Error::InvalidEvidence(format!("unknown variable {variable:?}")))
}

pub(crate) fn expect_card(net: &BayesianNetwork, node: usize, len: usize, what: &str) -> Result<()> {
    let card = net.cardinality(node);
    if len != card {
        return Err(Error::InvalidEvidence(format!(
            "{}: {what} covers {len} states, variable has {card}",
            net.variable(node).name
        )));
    }
    Ok(())
}

/// Updated PMF of `target` under virtual evidence: condition on the
/// observation by weighting each evidence state with its likelihood,
///
/// ```text
/// P_λ(x₀) = Σ_x λ(x) P(x₀, x) / Σ_x λ(x) P(x).
/// ```
pub fn ve_update(net: &BayesianNetwork, ve: &VirtualEvidence, target: &str) -> Result<Pmf> {
    ve.check()?;
    let node = resolve(net, &ve.variable)?;
    let t = resolve(net, target)?;
    expect_card(net, node, ve.likelihoods.len(), "likelihood vector")?;

    let mut factors: Vec<Factor> = (0..net.len())
        .map(|i| {
            let mut scope = vec![i];
            scope.extend_from_slice(net.parents(i));
            let cards: Vec<usize> = scope.iter().map(|&v| net.cardinality(v)).collect();
            let parent_cards = net.parent_cards(i);
            Factor::from_fn(scope, cards, |cfg| {
                net.cpt(i).row(&parent_cards, &cfg[1..])[cfg[0]]
            })
        })
        .collect();
    factors.push(Factor {
        scope: vec![node],
        cards: vec![net.cardinality(node)],
        values: ve.likelihoods.clone(),
    });
    let f = crate::bn::eliminate_to(factors, &[t]);
    if f.total() <= 0.0 {
        return Err(Error::InconsistentEvidence(format!(
            "{}: likelihoods assign zero mass to every possible state",
            ve.variable
        )));
    }
    Pmf::normalized(&f.values)
}

/// Jeffrey's rule: mix the conditionals by the revised marginal,
///
/// ```text
/// P′(x₀) = Σ_x P(x₀ | x) P′(x),
/// ```
///
/// skipping terms with P′(x) = 0. Raising a state impossible under the
/// current model (P(x) = 0, P′(x) > 0) is rejected.
pub fn se_update(net: &BayesianNetwork, se: &SoftEvidence, target: &str) -> Result<Pmf> {
    let node = resolve(net, &se.variable)?;
    let t = resolve(net, target)?;
    expect_card(net, node, se.pmf.len(), "revised marginal")?;
    se.pmf.check().map_err(|e| {
        Error::InvalidEvidence(format!("{}: revised marginal invalid: {e}", se.variable))
    })?;
    let current = marginal(net, node);
    let mut acc = vec![0.0; net.cardinality(t)];
    for (x, &w) in se.pmf.iter().enumerate() {
        if w == 0.0 {
            continue;
        }
        if current[x] == 0.0 {
            return Err(Error::InvalidEvidence(format!(
                "{}: cannot revise impossible state {:?} to positive probability",
                se.variable,
                net.variable(node).states[x]
            )));
        }
        // Querying the revised variable itself: P(x₀ | x) degenerates to an
        // indicator and the update returns P′ unchanged.
        let conditional = if t == node {
            Pmf::degenerate(net.cardinality(t), x)
        } else {
            posterior(
                net,
                &Query {
                    target: t,
                    hard_evidence: HashMap::from([(node, x)]),
                },
            )?
        };
        for (a, &c) in acc.iter_mut().zip(conditional.iter()) {
            *a += w * c;
        }
    }
    Pmf::new(acc)
}

/// Scales likelihoods into a canonical form: the smallest positive entry
/// among `defined` states becomes 1, undefined (free) states are then set to
/// 1, and finally the whole vector is rescaled so its maximum is 1. The
/// result is unique and keeps the defined states' ratios intact.
fn canonical_likelihoods(raw: &[Option<f64>], variable: &str) -> Result<Vec<f64>> {
    let min_pos = raw
        .iter()
        .flatten()
        .copied()
        .filter(|&r| r > 0.0)
        .fold(f64::INFINITY, f64::min);
    if !min_pos.is_finite() {
        return Err(Error::InconsistentEvidence(format!(
            "{variable}: revised mass sits entirely on impossible states"
        )));
    }
    let scaled: Vec<f64> = raw
        .iter()
        .map(|r| match r {
            Some(v) => v / min_pos,
            None => 1.0,
        })
        .collect();
    let max = scaled.iter().cloned().fold(0.0, f64::max);
    Ok(scaled.iter().map(|v| v / max).collect())
}

/// Converts soft evidence to the virtual evidence inducing the same update:
/// λ(x) ∝ P′(x)/P(x). States with P(x) = 0 leave λ(x) unconstrained; they
/// are pinned to the smallest positive ratio (see `canonical_likelihoods`).
pub fn se_to_ve(net: &BayesianNetwork, se: &SoftEvidence) -> Result<VirtualEvidence> {
    let node = resolve(net, &se.variable)?;
    expect_card(net, node, se.pmf.len(), "revised marginal")?;
    let current = marginal(net, node);
    let mut raw: Vec<Option<f64>> = Vec::with_capacity(se.pmf.len());
    for (x, &p_new) in se.pmf.iter().enumerate() {
        if current[x] > 0.0 {
            raw.push(Some(p_new / current[x]));
        } else if p_new > 0.0 {
            return Err(Error::InvalidEvidence(format!(
                "{}: cannot revise impossible state {:?} to positive probability",
                se.variable,
                net.variable(node).states[x]
            )));
        } else {
            raw.push(None);
        }
    }
    Ok(VirtualEvidence {
        variable: se.variable.clone(),
        likelihoods: canonical_likelihoods(&raw, &se.variable)?,
    })
}

/// Converts virtual evidence to the soft evidence it induces:
/// P′(x) = λ(x)P(x) / Σ_y λ(y)P(y).
pub fn ve_to_se(net: &BayesianNetwork, ve: &VirtualEvidence) -> Result<SoftEvidence> {
    ve.check()?;
    let node = resolve(net, &ve.variable)?;
    expect_card(net, node, ve.likelihoods.len(), "likelihood vector")?;
    let current = marginal(net, node);
    let weighted: Vec<f64> = ve
        .likelihoods
        .iter()
        .zip(current.iter())
        .map(|(&l, &p)| l * p)
        .collect();
    if weighted.iter().sum::<f64>() <= 0.0 {
        return Err(Error::InconsistentEvidence(format!(
            "{}: likelihoods assign zero mass to every possible state",
            ve.variable
        )));
    }
    Ok(SoftEvidence {
        variable: ve.variable.clone(),
        pmf: Pmf::normalized(&weighted)?,
    })
}

/// A network grown by auxiliary observation children, plus the states those
/// children are observed in.
#[derive(Debug, Clone)]
pub struct AugmentedBn {
    pub net: BayesianNetwork,
    /// (auxiliary node index, observed state index) pairs.
    pub observe: Vec<(usize, usize)>,
}

/// Credal counterpart of [`AugmentedBn`].
#[derive(Debug, Clone)]
pub struct AugmentedCn {
    pub net: CredalNetwork,
    pub observe: Vec<(usize, usize)>,
}

/// Picks an auxiliary-child name that does not collide with existing nodes.
pub(crate) fn aux_name(taken: &mut HashSet<String>, variable: &str) -> String {
    let mut name = format!("D_{variable}");
    while taken.contains(&name) {
        name.push('_');
    }
    taken.insert(name.clone());
    name
}

pub(crate) fn aux_variable(name: &str) -> Variable {
    Variable::binary(name, "d", "nd").expect("two distinct state labels")
}

pub(crate) fn taken_names(net: &BayesianNetwork) -> HashSet<String> {
    net.variables().iter().map(|v| v.name.clone()).collect()
}

/// Absorbs virtual evidence structurally: adds a binary child D of the
/// evidence variable with P(d | x) = λ(x) (max-rescaled into [0, 1]), to be
/// observed in state d. Conditioning on d then reproduces `ve_update` for
/// every target.
pub fn ve_augment(net: &BayesianNetwork, ve: &VirtualEvidence) -> Result<AugmentedBn> {
    ve.check()?;
    let node = resolve(net, &ve.variable)?;
    expect_card(net, node, ve.likelihoods.len(), "likelihood vector")?;
    let max = ve.likelihoods.iter().cloned().fold(0.0, f64::max);
    let rows: Vec<Pmf> = ve
        .likelihoods
        .iter()
        .map(|&l| Pmf::new(vec![l / max, 1.0 - l / max]).expect("λ/max lies in [0,1]"))
        .collect();
    let name = aux_name(&mut taken_names(net), &ve.variable);
    let cpt = Cpt::new(&name, &[&ve.variable], rows);
    let grown = net.with_nodes(vec![aux_variable(&name)], vec![NodeModel::Sharp(cpt)])?;
    let bn = grown.as_bayesian().expect("all nodes sharp");
    let aux = bn.node(&name).unwrap();
    Ok(AugmentedBn {
        net: bn,
        observe: vec![(aux, 0)],
    })
}

/// Interval CCPT row for the auxiliary child: P(d|x) ∈ [lo, hi].
pub(crate) fn interval_row(lo: f64, hi: f64) -> CredalRow {
    CredalRow::Interval(
        IntervalCs::new(vec![lo, 1.0 - hi], vec![hi, 1.0 - lo]).expect("bounds lie in [0,1]"),
    )
}

/// Absorbs interval likelihoods: like [`ve_augment`], but the auxiliary
/// child's rows are intervals P(d|x) ∈ [λ̲(x), λ̄(x)] (max-rescaled so the
/// largest upper bound is 1), giving a credal network with one credal node.
pub fn cve_augment(net: &BayesianNetwork, cve: &CredalVirtualEvidence) -> Result<AugmentedCn> {
    let node = resolve(net, &cve.variable)?;
    expect_card(net, node, cve.lower.len(), "likelihood intervals")?;
    let max = cve.upper.iter().cloned().fold(0.0, f64::max);
    let rows: Vec<CredalRow> = cve
        .lower
        .iter()
        .zip(&cve.upper)
        .map(|(&l, &u)| interval_row(l / max, u / max))
        .collect();
    let name = aux_name(&mut taken_names(net), &cve.variable);
    let ccpt = Ccpt {
        child: name.clone(),
        parents: vec![cve.variable.clone()],
        rows,
    };
    let grown = net.with_nodes(vec![aux_variable(&name)], vec![NodeModel::Credal(ccpt)])?;
    let aux = grown.node(&name).unwrap();
    Ok(AugmentedCn {
        net: grown,
        observe: vec![(aux, 0)],
    })
}

/// Converts credal soft evidence to interval likelihoods via the interval
/// hull: λ̲(x) ∝ P̲′(x)/P(x) and λ̄(x) ∝ P̄′(x)/P(x), canonically scaled as
/// in `se_to_ve`. Faithful only when the credal set equals its interval
/// hull, hence the shadiness precondition; otherwise absorb extensively
/// with [`cse_ecpt_augment`].
pub fn cse_to_cve(net: &BayesianNetwork, cse: &CredalSoftEvidence) -> Result<CredalVirtualEvidence> {
    let node = resolve(net, &cse.variable)?;
    expect_card(net, node, cse.cs.cardinality(), "credal set")?;
    if !cse.cs.is_shady() {
        return Err(Error::Precondition(format!(
            "{}: credal set is narrower than its interval hull; interval likelihoods cannot represent it (absorb extensively instead)",
            cse.variable
        )));
    }
    let shadow = cse.cs.shadow();
    let current = marginal(net, node);
    let mut raw_lo: Vec<Option<f64>> = Vec::new();
    let mut raw_hi: Vec<Option<f64>> = Vec::new();
    for x in 0..current.len() {
        if current[x] > 0.0 {
            raw_lo.push(Some(shadow.lower[x] / current[x]));
            raw_hi.push(Some(shadow.upper[x] / current[x]));
        } else if shadow.lower[x] > 0.0 {
            return Err(Error::InvalidEvidence(format!(
                "{}: cannot revise impossible state {:?} to positive probability",
                cse.variable,
                net.variable(node).states[x]
            )));
        } else {
            raw_lo.push(None);
            raw_hi.push(None);
        }
    }
    // Scale both bound vectors jointly so ratios survive: smallest positive
    // lower ratio → 1, free states pinned to [1, 1], global max upper → 1.
    let min_pos = raw_lo
        .iter()
        .flatten()
        .copied()
        .filter(|&r| r > 0.0)
        .fold(f64::INFINITY, f64::min);
    let pin = if min_pos.is_finite() { min_pos } else { 1.0 };
    let lower: Vec<f64> = raw_lo.iter().map(|r| r.map_or(1.0, |v| v / pin)).collect();
    let upper: Vec<f64> = raw_hi.iter().map(|r| r.map_or(1.0, |v| v / pin)).collect();
    let max = upper.iter().cloned().fold(0.0, f64::max);
    if max <= 0.0 {
        return Err(Error::InconsistentEvidence(format!(
            "{}: revised mass sits entirely on impossible states",
            cse.variable
        )));
    }
    CredalVirtualEvidence::vacuous_ok(
        cse.variable.clone(),
        lower.iter().map(|l| l / max).collect(),
        upper.iter().map(|u| u / max).collect(),
    )
}

/// Converts interval likelihoods to the interval hull of the revised
/// marginals they induce. Each bound takes its own likelihood at the
/// focal state against the opposing bounds elsewhere:
///
/// ```text
/// P̲′(x) = P(x)λ̲(x) / (P(x)λ̲(x) + Σ_{y≠x} P(y)λ̄(y)),
/// ```
///
/// and dually for P̄′(x).
pub fn cve_to_cse(net: &BayesianNetwork, cve: &CredalVirtualEvidence) -> Result<IntervalCs> {
    let node = resolve(net, &cve.variable)?;
    expect_card(net, node, cve.lower.len(), "likelihood intervals")?;
    let current = marginal(net, node);
    let mass_lo: Vec<f64> = cve
        .lower
        .iter()
        .zip(current.iter())
        .map(|(&l, &p)| l * p)
        .collect();
    let mass_hi: Vec<f64> = cve
        .upper
        .iter()
        .zip(current.iter())
        .map(|(&u, &p)| u * p)
        .collect();
    let total_hi: f64 = mass_hi.iter().sum();
    if total_hi <= 0.0 {
        return Err(Error::InconsistentEvidence(format!(
            "{}: upper likelihoods assign zero mass to every possible state",
            cve.variable
        )));
    }
    let n = current.len();
    let mut lower = vec![0.0; n];
    let mut upper = vec![0.0; n];
    for x in 0..n {
        let rest_hi = total_hi - mass_hi[x];
        let den_lo = mass_lo[x] + rest_hi;
        lower[x] = if den_lo > 0.0 {
            mass_lo[x] / den_lo
        } else if mass_hi[x] > 0.0 {
            // Every other state is impossible; any positive λ(x) puts all
            // mass here.
            1.0
        } else {
            0.0
        };
        let rest_lo: f64 = (0..n).filter(|&y| y != x).map(|y| mass_lo[y]).sum();
        let den_hi = mass_hi[x] + rest_lo;
        upper[x] = if den_hi > 0.0 { mass_hi[x] / den_hi } else { 0.0 };
    }
    IntervalCs::new(lower, upper)
}

/// The bounds of `cve_update`, by conversion + credal updating.
/// Defined in `credal::cve_update`, re-exported here for discoverability.
pub use crate::credal::cve_update;

/// Builds one virtual-evidence table P(d|x) ∝ P′(x)/P(x) in canonical
/// scaling, for a single revised marginal.
fn ratio_table(current: &Pmf, revised: &Pmf, variable: &str, states: &[String]) -> Result<Vec<f64>> {
    let mut raw: Vec<Option<f64>> = Vec::with_capacity(current.len());
    for x in 0..current.len() {
        if current[x] > 0.0 {
            raw.push(Some(revised[x] / current[x]));
        } else if revised[x] > 0.0 {
            return Err(Error::InvalidEvidence(format!(
                "{variable}: cannot revise impossible state {:?} to positive probability",
                states[x]
            )));
        } else {
            raw.push(None);
        }
    }
    canonical_likelihoods(&raw, variable)
}

/// Absorbs credal soft evidence extensively: the auxiliary child carries one
/// candidate table per credal-set vertex, each a virtual-evidence table
/// P_i(d|x) ∝ P′_i(x)/P(x) rescaled to max 1. Works for any credal set,
/// shady or not.
pub fn cse_ecpt_augment(net: &BayesianNetwork, cse: &CredalSoftEvidence) -> Result<AugmentedCn> {
    let node = resolve(net, &cse.variable)?;
    expect_card(net, node, cse.cs.cardinality(), "credal set")?;
    let current = marginal(net, node);
    let name = aux_name(&mut taken_names(net), &cse.variable);
    let states = &net.variable(node).states;
    let tables: Vec<Cpt> = cse
        .cs
        .vertices()
        .iter()
        .map(|vertex| {
            let lambda = ratio_table(&current, vertex, &cse.variable, states)?;
            let rows = lambda
                .iter()
                .map(|&l| Pmf::new(vec![l, 1.0 - l]).expect("λ lies in [0,1]"))
                .collect();
            Ok(Cpt::new(&name, &[&cse.variable], rows))
        })
        .collect::<Result<_>>()?;
    let ecpt = crate::model::Ecpt {
        child: name.clone(),
        parents: vec![cse.variable.clone()],
        tables,
    };
    let grown = net.with_nodes(vec![aux_variable(&name)], vec![NodeModel::Extensive(ecpt)])?;
    let aux = grown.node(&name).unwrap();
    Ok(AugmentedCn {
        net: grown,
        observe: vec![(aux, 0)],
    })
}

/// Interval posterior bounds without any evidence content: the envelope of
/// all posteriors obtainable by conditioning on some still-possible state,
///
/// ```text
/// P̲(x₀) = min_{x ∈ Ω′, P(x)>0} P(x₀ | x),    P̄ the max.
/// ```
///
/// `possible` restricts the candidate states (an incomplete observation);
/// `None` means total ignorance about which state occurred.
pub fn conservative_update(
    net: &BayesianNetwork,
    variable: &str,
    target: &str,
    possible: Option<&[usize]>,
) -> Result<crate::credal::IntervalPosterior> {
    let node = resolve(net, variable)?;
    let t = resolve(net, target)?;
    let card = net.cardinality(node);
    let states: Vec<usize> = match possible {
        Some(subset) => {
            if subset.is_empty() || subset.iter().any(|&s| s >= card) {
                return Err(Error::InvalidEvidence(format!(
                    "{variable}: possible-state subset invalid"
                )));
            }
            subset.to_vec()
        }
        None => (0..card).collect(),
    };
    let current = marginal(net, node);
    let t_card = net.cardinality(t);
    let mut lower = vec![f64::INFINITY; t_card];
    let mut upper = vec![f64::NEG_INFINITY; t_card];
    let mut any = false;
    for &x in &states {
        if current[x] <= 0.0 {
            continue;
        }
        any = true;
        let conditional = posterior(
            net,
            &Query {
                target: t,
                hard_evidence: HashMap::from([(node, x)]),
            },
        )?;
        for s in 0..t_card {
            lower[s] = lower[s].min(conditional[s]);
            upper[s] = upper[s].max(conditional[s]);
        }
    }
    if !any {
        return Err(Error::InconsistentEvidence(format!(
            "{variable}: every candidate state has probability zero"
        )));
    }
    Ok(crate::credal::IntervalPosterior {
        target: t,
        lower,
        upper,
        method: crate::credal::Method::Oracle,
        certificates: None,
    })
}

/// Expands frequency counts into interval likelihoods: with n(x) successes
/// in N(x) trials and prior strength s, λ(x) ∈ [n/(N+s), (n+s)/(N+s)].
pub fn idm_to_cve(counts: &IdmCounts) -> Result<CredalVirtualEvidence> {
    counts.check()?;
    let mut lower = Vec::with_capacity(counts.counts.len());
    let mut upper = Vec::with_capacity(counts.counts.len());
    for &(n, total) in &counts.counts {
        let denom = total as f64 + counts.s;
        lower.push(n as f64 / denom);
        upper.push((n as f64 + counts.s) / denom);
    }
    CredalVirtualEvidence::new(counts.variable.clone(), lower, upper)
}

/// Everything `absorb_all` needs to answer queries afterwards.
#[derive(Debug, Clone)]
pub struct Absorbed {
    pub net: CredalNetwork,
    /// Hard evidence plus auxiliary observations, as (node, state) pairs
    /// valid in `net`.
    pub observe: Vec<(usize, usize)>,
}

/// Absorbs a mixed batch of evidence simultaneously.
///
/// Hard evidence stays an instantiation; every other kind becomes one or
/// more auxiliary children (one per opinion for pools). All conversions are
/// computed against the *original* network's marginals, so the result does
/// not depend on absorption order. At most one evidence item per variable:
/// several opinions on one variable must arrive as an explicit pool.
pub fn absorb_all(net: &BayesianNetwork, evidences: &[Evidence]) -> Result<Absorbed> {
    let mut seen: HashSet<&str> = HashSet::new();
    for e in evidences {
        if !seen.insert(e.variable()) {
            return Err(Error::InvalidEvidence(format!(
                "{}: multiple evidence items on one variable; combine them as an opinion pool",
                e.variable()
            )));
        }
    }

    let mut taken = taken_names(net);
    let mut extra_vars: Vec<Variable> = Vec::new();
    let mut extra_models: Vec<NodeModel> = Vec::new();
    let mut observe_names: Vec<(String, usize)> = Vec::new();
    let mut observe_hard: Vec<(usize, usize)> = Vec::new();

    for e in evidences {
        match e {
            Evidence::Hard { variable, state } => {
                let node = resolve(net, variable)?;
                if *state >= net.cardinality(node) {
                    return Err(Error::InvalidEvidence(format!(
                        "{variable}: state index {state} out of range"
                    )));
                }
                observe_hard.push((node, *state));
            }
            Evidence::Virtual(ve) => {
                ve.check()?;
                let node = resolve(net, &ve.variable)?;
                expect_card(net, node, ve.likelihoods.len(), "likelihood vector")?;
                let max = ve.likelihoods.iter().cloned().fold(0.0, f64::max);
                let rows: Vec<Pmf> = ve
                    .likelihoods
                    .iter()
                    .map(|&l| Pmf::new(vec![l / max, 1.0 - l / max]).unwrap())
                    .collect();
                let name = aux_name(&mut taken, &ve.variable);
                extra_vars.push(aux_variable(&name));
                extra_models.push(NodeModel::Sharp(Cpt::new(&name, &[&ve.variable], rows)));
                observe_names.push((name, 0));
            }
            Evidence::Soft(se) => {
                let ve = se_to_ve(net, se)?;
                let rows: Vec<Pmf> = ve
                    .likelihoods
                    .iter()
                    .map(|&l| Pmf::new(vec![l, 1.0 - l]).unwrap())
                    .collect();
                let name = aux_name(&mut taken, &se.variable);
                extra_vars.push(aux_variable(&name));
                extra_models.push(NodeModel::Sharp(Cpt::new(&name, &[&se.variable], rows)));
                observe_names.push((name, 0));
            }
            Evidence::CredalVirtual(cve) => {
                let node = resolve(net, &cve.variable)?;
                expect_card(net, node, cve.lower.len(), "likelihood intervals")?;
                let max = cve.upper.iter().cloned().fold(0.0, f64::max);
                let rows: Vec<CredalRow> = cve
                    .lower
                    .iter()
                    .zip(&cve.upper)
                    .map(|(&l, &u)| interval_row(l / max, u / max))
                    .collect();
                let name = aux_name(&mut taken, &cve.variable);
                extra_vars.push(aux_variable(&name));
                extra_models.push(NodeModel::Credal(Ccpt {
                    child: name.clone(),
                    parents: vec![cve.variable.clone()],
                    rows,
                }));
                observe_names.push((name, 0));
            }
            Evidence::CredalSoft(cse) => {
                if cse.cs.is_shady() {
                    let cve = cse_to_cve(net, cse)?;
                    let max = cve.upper.iter().cloned().fold(0.0, f64::max);
                    let rows: Vec<CredalRow> = cve
                        .lower
                        .iter()
                        .zip(&cve.upper)
                        .map(|(&l, &u)| interval_row(l / max, u / max))
                        .collect();
                    let name = aux_name(&mut taken, &cse.variable);
                    extra_vars.push(aux_variable(&name));
                    extra_models.push(NodeModel::Credal(Ccpt {
                        child: name.clone(),
                        parents: vec![cse.variable.clone()],
                        rows,
                    }));
                    observe_names.push((name, 0));
                } else {
                    let node = resolve(net, &cse.variable)?;
                    expect_card(net, node, cse.cs.cardinality(), "credal set")?;
                    let current = marginal(net, node);
                    let name = aux_name(&mut taken, &cse.variable);
                    let states = &net.variable(node).states;
                    let tables: Vec<Cpt> = cse
                        .cs
                        .vertices()
                        .iter()
                        .map(|vertex| {
                            let lambda = ratio_table(&current, vertex, &cse.variable, states)?;
                            let rows = lambda
                                .iter()
                                .map(|&l| Pmf::new(vec![l, 1.0 - l]).unwrap())
                                .collect();
                            Ok(Cpt::new(&name, &[&cse.variable], rows))
                        })
                        .collect::<Result<_>>()?;
                    extra_vars.push(aux_variable(&name));
                    extra_models.push(NodeModel::Extensive(crate::model::Ecpt {
                        child: name.clone(),
                        parents: vec![cse.variable.clone()],
                        tables,
                    }));
                    observe_names.push((name, 0));
                }
            }
            Evidence::Vacuous { variable } => {
                let node = resolve(net, variable)?;
                let card = net.cardinality(node);
                let cve = CredalVirtualEvidence::vacuous(variable.clone(), card);
                let rows: Vec<CredalRow> = cve
                    .lower
                    .iter()
                    .zip(&cve.upper)
                    .map(|(&l, &u)| interval_row(l, u))
                    .collect();
                let name = aux_name(&mut taken, variable);
                extra_vars.push(aux_variable(&name));
                extra_models.push(NodeModel::Credal(Ccpt {
                    child: name.clone(),
                    parents: vec![variable.clone()],
                    rows,
                }));
                observe_names.push((name, 0));
            }
            Evidence::Incomplete(inc) => {
                let node = resolve(net, &inc.variable)?;
                let card = net.cardinality(node);
                inc.check(card)?;
                let possible: HashSet<usize> = inc.possible.iter().copied().collect();
                let rows: Vec<CredalRow> = (0..card)
                    .map(|x| {
                        if possible.contains(&x) {
                            interval_row(0.0, 1.0)
                        } else {
                            interval_row(0.0, 0.0)
                        }
                    })
                    .collect();
                let name = aux_name(&mut taken, &inc.variable);
                extra_vars.push(aux_variable(&name));
                extra_models.push(NodeModel::Credal(Ccpt {
                    child: name.clone(),
                    parents: vec![inc.variable.clone()],
                    rows,
                }));
                observe_names.push((name, 0));
            }
            Evidence::Pool(ops) => {
                let pooled = crate::pooling::pool_models(net, ops, &mut taken)?;
                for (var, model) in pooled {
                    extra_vars.push(var);
                    let name = model.child().to_string();
                    extra_models.push(model);
                    observe_names.push((name, 0));
                }
            }
        }
    }

    let grown = net.with_nodes(extra_vars, extra_models)?;
    let mut observe = observe_hard;
    for (name, state) in observe_names {
        observe.push((grown.node(&name).unwrap(), state));
    }
    Ok(Absorbed {
        net: grown,
        observe,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::approx_eq_slice;

    /// Three-state signal with a blocked middle state: P = [4/5, 0, 1/5].
    fn light_net() -> BayesianNetwork {
        let x = Variable::new("X", &["g", "y", "r"]).unwrap();
        BayesianNetwork::new(
            vec![x],
            vec![Cpt::root("X", Pmf::new(vec![0.8, 0.0, 0.2]).unwrap())],
        )
        .unwrap()
    }

    fn chain_net() -> BayesianNetwork {
        let a = Variable::binary("A", "a", "na").unwrap();
        let b = Variable::binary("B", "b", "nb").unwrap();
        BayesianNetwork::new(
            vec![a, b],
            vec![
                Cpt::root("A", Pmf::new(vec![0.5, 0.5]).unwrap()),
                Cpt::new(
                    "B",
                    &["A"],
                    vec![
                        Pmf::new(vec![0.9, 0.1]).unwrap(),
                        Pmf::new(vec![0.1, 0.9]).unwrap(),
                    ],
                ),
            ],
        )
        .unwrap()
    }

    #[test]
    fn ve_update_reweights_prior() {
        let net = light_net();
        let ve = VirtualEvidence {
            variable: "X".into(),
            likelihoods: vec![1.0, 1.0, 5.0],
        };
        let p = ve_update(&net, &ve, "X").unwrap();
        assert!(approx_eq_slice(&p.0, &[4.0 / 9.0, 0.0, 5.0 / 9.0], 1e-12));
    }

    #[test]
    fn one_hot_likelihood_is_hard_evidence() {
        let net = chain_net();
        let ve = VirtualEvidence {
            variable: "B".into(),
            likelihoods: vec![1.0, 0.0],
        };
        let p = ve_update(&net, &ve, "A").unwrap();
        let hard = posterior(
            &net,
            &Query {
                target: 0,
                hard_evidence: HashMap::from([(1, 0)]),
            },
        )
        .unwrap();
        assert!(approx_eq_slice(&p.0, &hard.0, 1e-12));
    }

    #[test]
    fn uniform_likelihood_changes_nothing() {
        let net = light_net();
        let ve = VirtualEvidence {
            variable: "X".into(),
            likelihoods: vec![2.0, 2.0, 2.0],
        };
        let p = ve_update(&net, &ve, "X").unwrap();
        assert!(approx_eq_slice(&p.0, &[0.8, 0.0, 0.2], 1e-12));
    }

    #[test]
    fn jeffrey_mixes_conditionals() {
        let net = chain_net();
        let se = SoftEvidence {
            variable: "A".into(),
            pmf: Pmf::new(vec![0.8, 0.2]).unwrap(),
        };
        let p = se_update(&net, &se, "B").unwrap();
        assert!(approx_eq_slice(&p.0, &[0.74, 0.26], 1e-12));
    }

    #[test]
    fn degenerate_soft_evidence_is_conditioning() {
        let net = chain_net();
        let se = SoftEvidence {
            variable: "B".into(),
            pmf: Pmf::new(vec![1.0, 0.0]).unwrap(),
        };
        let p = se_update(&net, &se, "A").unwrap();
        assert!(approx_eq_slice(&p.0, &[0.9, 0.1], 1e-12));
    }

    #[test]
    fn revising_impossible_state_rejected() {
        let net = light_net();
        let se = SoftEvidence {
            variable: "X".into(),
            pmf: Pmf::new(vec![0.5, 0.25, 0.25]).unwrap(),
        };
        assert!(matches!(
            se_update(&net, &se, "X"),
            Err(Error::InvalidEvidence(_))
        ));
        assert!(matches!(
            se_to_ve(&net, &se),
            Err(Error::InvalidEvidence(_))
        ));
    }

    #[test]
    fn se_to_ve_ratio_form() {
        let net = light_net();
        let se = SoftEvidence {
            variable: "X".into(),
            pmf: Pmf::new(vec![0.5, 0.0, 0.5]).unwrap(),
        };
        let ve = se_to_ve(&net, &se).unwrap();
        // Proportional to {1, 1, 4}, max-rescaled.
        assert!(approx_eq_slice(&ve.likelihoods, &[0.25, 0.25, 1.0], 1e-12));
    }

    #[test]
    fn se_to_ve_of_current_marginal_is_uniform() {
        let net = light_net();
        let se = SoftEvidence {
            variable: "X".into(),
            pmf: Pmf::new(vec![0.8, 0.0, 0.2]).unwrap(),
        };
        let ve = se_to_ve(&net, &se).unwrap();
        assert!(approx_eq_slice(&ve.likelihoods, &[1.0, 1.0, 1.0], 1e-12));
    }

    #[test]
    fn ve_to_se_normalizes_product() {
        let net = light_net();
        let ve = VirtualEvidence {
            variable: "X".into(),
            likelihoods: vec![1.0, 1.0, 5.0],
        };
        let se = ve_to_se(&net, &ve).unwrap();
        assert!(approx_eq_slice(&se.pmf.0, &[4.0 / 9.0, 0.0, 5.0 / 9.0], 1e-12));
    }

    #[test]
    fn duality_roundtrip() {
        let net = chain_net();
        let se = SoftEvidence {
            variable: "B".into(),
            pmf: Pmf::new(vec![0.3, 0.7]).unwrap(),
        };
        let via_ve = ve_update(&net, &se_to_ve(&net, &se).unwrap(), "A").unwrap();
        let direct = se_update(&net, &se, "A").unwrap();
        assert!(approx_eq_slice(&via_ve.0, &direct.0, 1e-12));
    }

    #[test]
    fn ve_augment_matches_ve_update() {
        let net = light_net();
        let ve = VirtualEvidence {
            variable: "X".into(),
            likelihoods: vec![1.0, 1.0, 5.0],
        };
        let aug = ve_augment(&net, &ve).unwrap();
        // Rows are λ/max = [1/5, 1/5, 1] on the d state.
        let aux = aug.observe[0].0;
        let cpt = aug.net.cpt(aux);
        assert!(approx_eq_slice(
            &[cpt.rows[0][0], cpt.rows[1][0], cpt.rows[2][0]],
            &[0.2, 0.2, 1.0],
            1e-12
        ));
        let p = posterior(
            &aug.net,
            &Query {
                target: aug.net.node("X").unwrap(),
                hard_evidence: HashMap::from([aug.observe[0]]),
            },
        )
        .unwrap();
        assert!(approx_eq_slice(&p.0, &[4.0 / 9.0, 0.0, 5.0 / 9.0], 1e-12));
    }

    #[test]
    fn cve_augment_rows_are_two_vertex_intervals() {
        let net = light_net();
        let cve =
            CredalVirtualEvidence::new("X", vec![3.0, 1.0, 8.0], vec![5.0, 1.0, 10.0]).unwrap();
        let aug = cve_augment(&net, &cve).unwrap();
        let aux = aug.observe[0].0;
        match aug.net.model(aux) {
            NodeModel::Credal(ccpt) => {
                let expect = [[0.3, 0.5], [0.1, 0.1], [0.8, 1.0]];
                for (row, want) in ccpt.rows.iter().zip(expect) {
                    match row {
                        CredalRow::Interval(ics) => {
                            assert!((ics.lower[0] - want[0]).abs() < 1e-12);
                            assert!((ics.upper[0] - want[1]).abs() < 1e-12);
                        }
                        CredalRow::Set(_) => panic!("expected interval rows"),
                    }
                }
            }
            _ => panic!("auxiliary node should be credal"),
        }
    }

    #[test]
    fn point_cve_degenerates_to_sharp_augment() {
        let net = light_net();
        let cve =
            CredalVirtualEvidence::new("X", vec![1.0, 1.0, 5.0], vec![1.0, 1.0, 5.0]).unwrap();
        assert!(cve.is_point());
        let aug = cve_augment(&net, &cve).unwrap();
        let aux = aug.observe[0].0;
        match aug.net.model(aux) {
            NodeModel::Credal(ccpt) => {
                for row in &ccpt.rows {
                    let cs = row.to_vertex_set().unwrap();
                    assert!(cs.is_sharp());
                }
            }
            _ => panic!("auxiliary node should be credal"),
        }
    }

    #[test]
    fn cse_to_cve_interval_ratios() {
        let net = light_net();
        let cs = CredalSet::new(vec![
            Pmf::new(vec![0.6, 0.0, 0.4]).unwrap(),
            Pmf::new(vec![0.4, 0.0, 0.6]).unwrap(),
        ])
        .unwrap();
        let cse = CredalSoftEvidence {
            variable: "X".into(),
            cs,
        };
        let cve = cse_to_cve(&net, &cse).unwrap();
        // Defined states keep ratios {2–3 : · : 8–12}: g = [2c, 3c],
        // r = [8c, 12c] for a common c > 0.
        let c = cve.lower[0] / 2.0;
        assert!(c > 0.0);
        assert!((cve.upper[0] - 3.0 * c).abs() < 1e-12);
        assert!((cve.lower[2] - 8.0 * c).abs() < 1e-12);
        assert!((cve.upper[2] - 12.0 * c).abs() < 1e-12);
        // Max-rescaled: the largest upper bound is exactly 1.
        assert!((cve.upper[2] - 1.0).abs() < 1e-12);
        // The impossible state keeps a point interval (free likelihood).
        assert!((cve.lower[1] - cve.upper[1]).abs() < 1e-15);
    }

    #[test]
    fn non_shady_cse_is_rejected_by_interval_conversion() {
        let net = BayesianNetwork::new(
            vec![Variable::new("X", &["a", "b", "c"]).unwrap()],
            vec![Cpt::root(
                "X",
                Pmf::new(vec![0.4, 0.3, 0.3]).unwrap(),
            )],
        )
        .unwrap();
        let cs = CredalSet::new(vec![
            Pmf::new(vec![0.5, 0.3, 0.2]).unwrap(),
            Pmf::new(vec![0.2, 0.5, 0.3]).unwrap(),
            Pmf::new(vec![0.3, 0.2, 0.5]).unwrap(),
        ])
        .unwrap();
        let cse = CredalSoftEvidence {
            variable: "X".into(),
            cs,
        };
        assert!(matches!(
            cse_to_cve(&net, &cse),
            Err(Error::Precondition(_))
        ));
        // The extensive route still works.
        assert!(cse_ecpt_augment(&net, &cse).is_ok());
    }

    #[test]
    fn singleton_cse_reduces_to_se_to_ve() {
        let net = light_net();
        let pmf = Pmf::new(vec![0.5, 0.0, 0.5]).unwrap();
        let cse = CredalSoftEvidence {
            variable: "X".into(),
            cs: CredalSet::sharp(pmf.clone()).unwrap(),
        };
        let cve = cse_to_cve(&net, &cse).unwrap();
        let ve = se_to_ve(
            &net,
            &SoftEvidence {
                variable: "X".into(),
                pmf,
            },
        )
        .unwrap();
        assert!(approx_eq_slice(&cve.lower, &ve.likelihoods, 1e-12));
        assert!(approx_eq_slice(&cve.upper, &ve.likelihoods, 1e-12));
    }

    #[test]
    fn cve_to_cse_reverse_bounds() {
        let net = light_net();
        let cve =
            CredalVirtualEvidence::new("X", vec![3.0, 1.0, 8.0], vec![5.0, 1.0, 10.0]).unwrap();
        let ics = cve_to_cse(&net, &cve).unwrap();
        assert!((ics.lower[0] - 6.0 / 11.0).abs() < 1e-12);
        assert!((ics.upper[0] - 5.0 / 7.0).abs() < 1e-12);
        assert!((ics.lower[2] - 2.0 / 7.0).abs() < 1e-12);
        assert!((ics.upper[2] - 5.0 / 11.0).abs() < 1e-12);
        assert_eq!(ics.lower[1], 0.0);
        assert_eq!(ics.upper[1], 0.0);
    }

    #[test]
    fn point_cve_to_cse_equals_ve_to_se() {
        let net = light_net();
        let cve =
            CredalVirtualEvidence::new("X", vec![1.0, 1.0, 5.0], vec![1.0, 1.0, 5.0]).unwrap();
        let ics = cve_to_cse(&net, &cve).unwrap();
        let se = ve_to_se(
            &net,
            &VirtualEvidence {
                variable: "X".into(),
                likelihoods: vec![1.0, 1.0, 5.0],
            },
        )
        .unwrap();
        assert!(approx_eq_slice(&ics.lower, &se.pmf.0, 1e-12));
        assert!(approx_eq_slice(&ics.upper, &se.pmf.0, 1e-12));
    }

    #[test]
    fn vacuous_cve_to_cse_is_vacuous_on_possible_states() {
        let net = light_net();
        let cve = CredalVirtualEvidence::vacuous("X", 3);
        let ics = cve_to_cse(&net, &cve).unwrap();
        assert_eq!(ics.lower, vec![0.0, 0.0, 0.0]);
        assert!(approx_eq_slice(&ics.upper, &[1.0, 0.0, 1.0], 1e-12));
    }

    #[test]
    fn idm_intervals() {
        let counts = IdmCounts {
            variable: "T".into(),
            counts: vec![(17, 23), (3, 17)],
            s: 1.0,
        };
        let cve = idm_to_cve(&counts).unwrap();
        assert!(approx_eq_slice(&cve.lower, &[17.0 / 24.0, 3.0 / 18.0], 1e-15));
        assert!(approx_eq_slice(&cve.upper, &[18.0 / 24.0, 4.0 / 18.0], 1e-15));
    }

    #[test]
    fn idm_collapses_as_prior_strength_vanishes() {
        let counts = IdmCounts {
            variable: "T".into(),
            counts: vec![(17, 23), (3, 17)],
            s: 1e-12,
        };
        let cve = idm_to_cve(&counts).unwrap();
        assert!((cve.lower[0] - 17.0 / 23.0).abs() < 1e-9);
        assert!((cve.upper[0] - 17.0 / 23.0).abs() < 1e-9);
    }

    #[test]
    fn conservative_update_spans_conditionals() {
        let net = chain_net();
        let ip = conservative_update(&net, "A", "B", None).unwrap();
        assert!(approx_eq_slice(&ip.lower, &[0.1, 0.1], 1e-12));
        assert!(approx_eq_slice(&ip.upper, &[0.9, 0.9], 1e-12));
    }

    #[test]
    fn conservative_update_singleton_is_conditioning() {
        let net = chain_net();
        let ip = conservative_update(&net, "A", "B", Some(&[0])).unwrap();
        assert!(approx_eq_slice(&ip.lower, &[0.9, 0.1], 1e-12));
        assert!(approx_eq_slice(&ip.upper, &[0.9, 0.1], 1e-12));
    }

    #[test]
    fn absorb_all_rejects_overlap() {
        let net = chain_net();
        let evs = vec![
            Evidence::Hard {
                variable: "A".into(),
                state: 0,
            },
            Evidence::Vacuous {
                variable: "A".into(),
            },
        ];
        assert!(matches!(
            absorb_all(&net, &evs),
            Err(Error::InvalidEvidence(_))
        ));
    }

    #[test]
    fn absorb_all_mixes_kinds() {
        let net = chain_net();
        let evs = vec![
            Evidence::Soft(SoftEvidence {
                variable: "A".into(),
                pmf: Pmf::new(vec![0.8, 0.2]).unwrap(),
            }),
            Evidence::Hard {
                variable: "B".into(),
                state: 0,
            },
        ];
        let absorbed = absorb_all(&net, &evs).unwrap();
        assert_eq!(absorbed.net.len(), 3);
        assert_eq!(absorbed.observe.len(), 2);
        // Sharp throughout: soft evidence alone adds no imprecision.
        assert!(absorbed.net.as_bayesian().is_some());
    }
}
