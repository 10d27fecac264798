//! Merging several opinions about one variable before absorption.
//!
//! m experts each state a revised marginal for the same variable — a PMF, or
//! a credal set of PMFs when an expert is imprecise. The geometric pool with
//! positive weights α_j (Σα_j = 1) is
//!
//!   P̃′(x) ∝ Π_j P′_j(x)^{α_j},
//!
//! so a state any expert rules out stays ruled out. On a binary variable
//! the pooled value always sits between the opinions; with three or more
//! states, normalization can push the pool outside their convex hull (the
//! geometric mean trims every state the experts disagree on, shifting mass
//! to the ones they agree on). Because the weights sum to one, absorbing
//! the pool is the same as grafting one auxiliary child per opinion with
//! P(d⁽ʲ⁾|x) ∝ [P′_j(x)/P(x)]^{α_j} and conditioning on all of them — the
//! P(x) powers cancel across children.
//!
//! Imprecise opinions are pooled through their componentwise bounds: the
//! per-state products of lower (resp. upper) bounds form a likelihood box,
//! which either becomes interval rows of the per-opinion children or one
//! equivalent interval-likelihood evidence. Structure inside an opinion
//! beyond its bounds is deliberately coarsened away.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::bn::marginal;
use crate::error::{Error, Result};
use crate::evidence::{
    aux_name, aux_variable, expect_card, interval_row, resolve, taken_names, AugmentedBn,
    AugmentedCn, CredalVirtualEvidence,
};
use crate::model::{BayesianNetwork, Ccpt, Cpt, CredalSet, IntervalCs, NodeModel, Pmf, Variable};

/// Slack allowed on Σ α_j = 1.
pub const WEIGHT_TOLERANCE: f64 = 1e-9;

/// One expert's revised marginal for the pooled variable.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum Opinion {
    Sharp(Pmf),
    Credal(CredalSet),
}

impl Opinion {
    pub fn cardinality(&self) -> usize {
        match self {
            Opinion::Sharp(p) => p.len(),
            Opinion::Credal(cs) => cs.cardinality(),
        }
    }

    /// Componentwise bounds; a sharp opinion is its own shadow.
    pub fn shadow(&self) -> IntervalCs {
        match self {
            Opinion::Sharp(p) => IntervalCs {
                lower: p.0.clone(),
                upper: p.0.clone(),
            },
            Opinion::Credal(cs) => cs.shadow(),
        }
    }

    pub fn is_credal(&self) -> bool {
        match self {
            Opinion::Sharp(_) => false,
            Opinion::Credal(cs) => !cs.is_sharp(),
        }
    }
}

/// m weighted opinions on one variable.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OpinionSet {
    pub variable: String,
    pub opinions: Vec<Opinion>,
    /// Positive, summing to one. `OpinionSet::new` defaults to uniform.
    pub weights: Vec<f64>,
}

impl OpinionSet {
    /// `weights: None` assigns every opinion the same weight 1/m.
    pub fn new(
        variable: impl Into<String>,
        opinions: Vec<Opinion>,
        weights: Option<Vec<f64>>,
    ) -> Result<Self> {
        let m = opinions.len();
        let set = OpinionSet {
            variable: variable.into(),
            opinions,
            weights: weights.unwrap_or_else(|| vec![1.0 / m.max(1) as f64; m]),
        };
        set.check()?;
        Ok(set)
    }

    pub fn check(&self) -> Result<()> {
        if self.opinions.is_empty() {
            return Err(Error::InvalidEvidence(format!(
                "{}: a pool needs at least one opinion",
                self.variable
            )));
        }
        let card = self.opinions[0].cardinality();
        if self.opinions.iter().any(|o| o.cardinality() != card) {
            return Err(Error::InvalidEvidence(format!(
                "{}: opinions disagree on the number of states",
                self.variable
            )));
        }
        if self.weights.len() != self.opinions.len() {
            return Err(Error::InvalidEvidence(format!(
                "{}: {} opinions but {} weights",
                self.variable,
                self.opinions.len(),
                self.weights.len()
            )));
        }
        if self.weights.iter().any(|&a| !a.is_finite() || a <= 0.0) {
            return Err(Error::InvalidEvidence(format!(
                "{}: weights must be positive",
                self.variable
            )));
        }
        let total: f64 = self.weights.iter().sum();
        if (total - 1.0).abs() > WEIGHT_TOLERANCE {
            return Err(Error::InvalidEvidence(format!(
                "{}: weights sum to {total}, expected 1",
                self.variable
            )));
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.opinions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.opinions.is_empty()
    }

    pub fn cardinality(&self) -> usize {
        self.opinions[0].cardinality()
    }

    /// True when any opinion carries genuine imprecision.
    pub fn is_credal(&self) -> bool {
        self.opinions.iter().any(|o| o.is_credal())
    }
}

/// The geometric pool of sharp opinions: P̃′(x) ∝ Π_j P′_j(x)^{α_j}.
///
/// A zero anywhere annihilates the state. Every state annihilated means the
/// opinions are jointly contradictory — there is nothing left to normalize.
pub fn logop(ops: &OpinionSet) -> Result<Pmf> {
    ops.check()?;
    let card = ops.cardinality();
    let mut pooled = vec![1.0; card];
    for (op, &alpha) in ops.opinions.iter().zip(&ops.weights) {
        let Opinion::Sharp(p) = op else {
            return Err(Error::Precondition(format!(
                "{}: geometric pooling of imprecise opinions yields bounds, not a PMF",
                ops.variable
            )));
        };
        for (t, &v) in pooled.iter_mut().zip(p.iter()) {
            *t *= v.powf(alpha);
        }
    }
    if pooled.iter().all(|&t| t == 0.0) {
        return Err(Error::DegeneratePool(format!(
            "{}: every state is annihilated by some opinion",
            ops.variable
        )));
    }
    Pmf::normalized(&pooled)
}

/// Per-state products of shadow bounds: L(x) = Π_j lower_j(x)^{α_j} and
/// U(x) = Π_j upper_j(x)^{α_j} — the unnormalized bounds of the pooled box.
fn shadow_products(ops: &OpinionSet) -> Result<(Vec<f64>, Vec<f64>)> {
    let card = ops.cardinality();
    let mut lo = vec![1.0; card];
    let mut hi = vec![1.0; card];
    for (op, &alpha) in ops.opinions.iter().zip(&ops.weights) {
        let s = op.shadow();
        for x in 0..card {
            lo[x] *= s.lower[x].powf(alpha);
            hi[x] *= s.upper[x].powf(alpha);
        }
    }
    if hi.iter().all(|&u| u == 0.0) {
        return Err(Error::DegeneratePool(format!(
            "{}: every state is annihilated by some opinion",
            ops.variable
        )));
    }
    Ok((lo, hi))
}

/// Interval bounds of the pooled revised marginal.
///
/// The products of shadow bounds form a box of unnormalized pooled values;
/// normalizing a box point pits one state's value against the others', so
/// the tight per-state bounds are
///
///   lower(x) = L(x) / (L(x) + Σ_{y≠x} U(y)),
///   upper(x) = U(x) / (U(x) + Σ_{y≠x} L(y)).
///
/// A single opinion pools to itself, so m = 1 returns its shadow directly.
pub fn credal_logop_bounds(ops: &OpinionSet) -> Result<IntervalCs> {
    ops.check()?;
    if ops.len() == 1 {
        return Ok(ops.opinions[0].shadow());
    }
    let (lo, hi) = shadow_products(ops)?;
    let card = lo.len();
    let sum_lo: f64 = lo.iter().sum();
    let sum_hi: f64 = hi.iter().sum();
    let mut lower = vec![0.0; card];
    let mut upper = vec![0.0; card];
    for x in 0..card {
        let den_lo = lo[x] + (sum_hi - hi[x]);
        lower[x] = if den_lo > 0.0 {
            lo[x] / den_lo
        } else if hi[x] > 0.0 {
            // All other states are annihilated: the pool is degenerate on x.
            1.0
        } else {
            0.0
        };
        upper[x] = if hi[x] > 0.0 {
            hi[x] / (hi[x] + (sum_lo - lo[x]))
        } else {
            0.0
        };
    }
    IntervalCs::new(lower, upper)
}

/// Per-state bounds of the ratio [P′(x)/P(x)]^α for one opinion, rescaled so
/// the largest upper value is 1 — the auxiliary child's conditional table.
fn child_bounds(
    current: &Pmf,
    shadow: &IntervalCs,
    alpha: f64,
    variable: &str,
) -> Result<(Vec<f64>, Vec<f64>)> {
    let mut lo = Vec::with_capacity(current.len());
    let mut hi = Vec::with_capacity(current.len());
    for (x, &p) in current.iter().enumerate() {
        if shadow.upper[x] > 0.0 && p <= 0.0 {
            return Err(Error::InvalidEvidence(format!(
                "{variable}: opinion raises state {x}, which is impossible under the current model"
            )));
        }
        lo.push(if shadow.lower[x] > 0.0 {
            (shadow.lower[x] / p).powf(alpha)
        } else {
            0.0
        });
        hi.push(if shadow.upper[x] > 0.0 {
            (shadow.upper[x] / p).powf(alpha)
        } else {
            0.0
        });
    }
    let max = hi.iter().cloned().fold(0.0, f64::max);
    if max <= 0.0 {
        return Err(Error::DegeneratePool(format!(
            "{variable}: an opinion annihilates every possible state"
        )));
    }
    for v in lo.iter_mut().chain(hi.iter_mut()) {
        *v /= max;
    }
    Ok((lo, hi))
}

/// One auxiliary binary child per opinion, each to be observed in its first
/// state. Sharp opinions produce sharp children; imprecise ones produce
/// interval rows from their shadow bounds.
pub(crate) fn pool_models(
    net: &BayesianNetwork,
    ops: &OpinionSet,
    taken: &mut HashSet<String>,
) -> Result<Vec<(Variable, NodeModel)>> {
    ops.check()?;
    let node = resolve(net, &ops.variable)?;
    expect_card(net, node, ops.cardinality(), "opinion")?;
    let current = marginal(net, node);
    let mut out = Vec::with_capacity(ops.len());
    for (j, (op, &alpha)) in ops.opinions.iter().zip(&ops.weights).enumerate() {
        let name = aux_name(taken, &format!("{}_{}", ops.variable, j + 1));
        let (lo, hi) = child_bounds(&current, &op.shadow(), alpha, &ops.variable)?;
        let model = if op.is_credal() {
            NodeModel::Credal(Ccpt {
                child: name.clone(),
                parents: vec![ops.variable.clone()],
                rows: lo
                    .iter()
                    .zip(&hi)
                    .map(|(&l, &u)| interval_row(l, u))
                    .collect(),
            })
        } else {
            let rows = hi
                .iter()
                .map(|&t| Pmf::new(vec![t, 1.0 - t]).expect("rescaled ratio lies in [0, 1]"))
                .collect();
            NodeModel::Sharp(Cpt::new(&name, &[&ops.variable], rows))
        };
        out.push((aux_variable(&name), model));
    }
    Ok(out)
}

/// Absorbs a pool of sharp opinions: one sharp auxiliary child per opinion.
/// Conditioning on all the children reproduces Jeffrey's rule under the
/// pooled marginal `logop(ops)`.
pub fn pool_augment(net: &BayesianNetwork, ops: &OpinionSet) -> Result<AugmentedBn> {
    if ops.is_credal() {
        return Err(Error::Precondition(format!(
            "{}: pool contains imprecise opinions; absorb them as a credal network",
            ops.variable
        )));
    }
    let mut taken = taken_names(net);
    let models = pool_models(net, ops, &mut taken)?;
    let (vars, models): (Vec<_>, Vec<_>) = models.into_iter().unzip();
    let names: Vec<String> = vars.iter().map(|v| v.name.clone()).collect();
    let grown = net.with_nodes(vars, models)?;
    let bn = grown.as_bayesian().expect("sharp children on a sharp network");
    let observe = names
        .iter()
        .map(|n| (bn.node(n).expect("child was just added"), 0))
        .collect();
    Ok(AugmentedBn { net: bn, observe })
}

/// Credal counterpart of [`pool_augment`]: children carry interval rows from
/// each opinion's shadow bounds.
pub fn pool_credal_augment(net: &BayesianNetwork, ops: &OpinionSet) -> Result<AugmentedCn> {
    let mut taken = taken_names(net);
    let models = pool_models(net, ops, &mut taken)?;
    let (vars, models): (Vec<_>, Vec<_>) = models.into_iter().unzip();
    let names: Vec<String> = vars.iter().map(|v| v.name.clone()).collect();
    let grown = net.with_nodes(vars, models)?;
    let observe = names
        .iter()
        .map(|n| (grown.node(n).expect("child was just added"), 0))
        .collect();
    Ok(AugmentedCn { net: grown, observe })
}

/// The whole pool as one interval-likelihood evidence: λ ranges over the box
/// [L/P, U/P] (max-rescaled). Absorbing this single evidence is equivalent
/// to conditioning on all of [`pool_credal_augment`]'s children.
pub fn pool_to_cve(net: &BayesianNetwork, ops: &OpinionSet) -> Result<CredalVirtualEvidence> {
    ops.check()?;
    let node = resolve(net, &ops.variable)?;
    expect_card(net, node, ops.cardinality(), "opinion")?;
    let current = marginal(net, node);
    let (plo, phi) = shadow_products(ops)?;
    let shadow = IntervalCs {
        lower: plo,
        upper: phi,
    };
    let (lo, hi) = child_bounds(&current, &shadow, 1.0, &ops.variable)?;
    CredalVirtualEvidence::vacuous_ok(ops.variable.clone(), lo, hi)
}

/// The conservative alternative to geometric pooling: the convex hull of all
/// the opinions, usable as a single credal-set revision.
pub fn hull_pool(ops: &OpinionSet) -> Result<CredalSet> {
    ops.check()?;
    let mut points = Vec::new();
    for op in &ops.opinions {
        match op {
            Opinion::Sharp(p) => points.push(p.clone()),
            Opinion::Credal(cs) => points.extend(cs.vertices().iter().cloned()),
        }
    }
    CredalSet::new(points)
}
