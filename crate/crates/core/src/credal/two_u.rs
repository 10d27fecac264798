//! Exact interval propagation on binary polytrees.
//!
//! On a polytree whose variables are all binary, posterior bounds factor
//! into per-edge message intervals, because (i) distinct subtrees and
//! distinct table rows are independently choosable, and (ii) the posterior
//! is, in every single message coordinate, a ratio of two affine functions
//! with nonnegative denominator — hence monotone per coordinate wherever
//! the denominator stays positive. Interval endpoints therefore suffice,
//! and the propagated bounds coincide with full enumeration.
//!
//! The monotonicity argument needs positive denominators. Whenever any
//! message corner produces a vanishing one (some local-model choice makes a
//! subtree's evidence impossible), this engine refuses with a precondition
//! error instead of guessing, and the caller falls back to another engine.
//! A completed run is therefore always exact.

use std::collections::HashMap;

use crate::bn::Query;
use crate::error::{Error, Result};
use crate::model::{grid, CredalNetwork, NodeModel};

use super::{IntervalPosterior, Method};

/// Per-row candidate interval of θ = P(node = state 0 | parent row).
type Theta = Vec<Vec<(f64, f64)>>;

fn zero_denominator() -> Error {
    Error::Precondition(
        "interval propagation hit a local-model choice under which a subtree's evidence \
         has probability zero; use enumeration or coordinate descent"
            .into(),
    )
}

/// Extracts per-row θ intervals, insisting on row-independence: credal rows
/// are independent by construction, and an extensive table list is accepted
/// only when it equals the Cartesian product of its per-row value sets.
fn theta_intervals(net: &CredalNetwork) -> Result<Theta> {
    let mut theta = Vec::with_capacity(net.len());
    for i in 0..net.len() {
        let rows = match net.model(i) {
            NodeModel::Sharp(cpt) => cpt.rows.iter().map(|r| (r[0], r[0])).collect(),
            NodeModel::Credal(ccpt) => {
                let mut out = Vec::with_capacity(ccpt.rows.len());
                for row in &ccpt.rows {
                    let vs = row.to_vertex_set()?;
                    let lo = vs.vertices().iter().map(|v| v[0]).fold(f64::INFINITY, f64::min);
                    let hi = vs
                        .vertices()
                        .iter()
                        .map(|v| v[0])
                        .fold(f64::NEG_INFINITY, f64::max);
                    out.push((lo, hi));
                }
                out
            }
            NodeModel::Extensive(ecpt) => {
                let row_count = ecpt.tables[0].rows.len();
                let mut distinct_tables: Vec<Vec<u64>> = ecpt
                    .tables
                    .iter()
                    .map(|t| t.rows.iter().map(|r| r[0].to_bits()).collect())
                    .collect();
                distinct_tables.sort();
                distinct_tables.dedup();
                let mut out = Vec::with_capacity(row_count);
                let mut product = 1usize;
                for r in 0..row_count {
                    let mut values: Vec<u64> =
                        ecpt.tables.iter().map(|t| t.rows[r][0].to_bits()).collect();
                    values.sort();
                    values.dedup();
                    product = product.saturating_mul(values.len());
                    let lo = values.iter().map(|&b| f64::from_bits(b)).fold(f64::INFINITY, f64::min);
                    let hi = values
                        .iter()
                        .map(|&b| f64::from_bits(b))
                        .fold(f64::NEG_INFINITY, f64::max);
                    out.push((lo, hi));
                }
                if distinct_tables.len() != product {
                    return Err(Error::Precondition(format!(
                        "{}: extensive table list does not factor into independent rows",
                        net.variable(i).name
                    )));
                }
                out
            }
        };
        theta.push(rows);
    }
    Ok(theta)
}

struct Solver<'a> {
    net: &'a CredalNetwork,
    theta: &'a Theta,
    children: &'a [Vec<usize>],
    evidence: HashMap<usize, usize>,
    /// P(x = 0 | evidence on x's side, excluding the skipped child's
    /// subtree); key (x, skipped child or usize::MAX).
    memo_node: HashMap<(usize, usize), (f64, f64)>,
    /// Normalized child→parent likelihood σ; key (child, parent).
    memo_lambda: HashMap<(usize, usize), (f64, f64)>,
}

const NO_SKIP: usize = usize::MAX;

impl<'a> Solver<'a> {
    fn new(
        net: &'a CredalNetwork,
        theta: &'a Theta,
        children: &'a [Vec<usize>],
        evidence: HashMap<usize, usize>,
    ) -> Self {
        Solver {
            net,
            theta,
            children,
            evidence,
            memo_node: HashMap::new(),
            memo_lambda: HashMap::new(),
        }
    }

    /// Bounds of P(x = 0 | evidence on x's side), excluding the subtree
    /// hanging off `skip` (the child the result is being sent to).
    fn node_value(&mut self, x: usize, skip: usize) -> Result<(f64, f64)> {
        if let Some(&e) = self.evidence.get(&x) {
            let v = if e == 0 { 1.0 } else { 0.0 };
            return Ok((v, v));
        }
        if let Some(&v) = self.memo_node.get(&(x, skip)) {
            return Ok(v);
        }
        let (pi_lo, pi_hi) = self.pi_bounds(x)?;
        let mut sigmas = Vec::new();
        for &c in &self.children[x] {
            if c != skip {
                sigmas.push(self.lambda_msg(c, x)?);
            }
        }
        let combine = |p: f64, pick_hi: bool| -> Result<f64> {
            let mut like0 = 1.0;
            let mut like1 = 1.0;
            for &(lo, hi) in &sigmas {
                let s = if pick_hi { hi } else { lo };
                like0 *= s;
                like1 *= 1.0 - s;
            }
            let den = p * like0 + (1.0 - p) * like1;
            if den <= 0.0 {
                return Err(zero_denominator());
            }
            Ok(p * like0 / den)
        };
        let value = (combine(pi_lo, false)?, combine(pi_hi, true)?);
        self.memo_node.insert((x, skip), value);
        Ok(value)
    }

    /// Bounds of P(x = 0 | parent-side evidence): the θ row mixed by the
    /// parents' incoming messages, extremized over message-box corners
    /// (the mixture is multilinear in the parent messages) with θ rows at
    /// their own endpoints (their coefficients are nonnegative).
    fn pi_bounds(&mut self, x: usize) -> Result<(f64, f64)> {
        let parents = self.net.parents(x);
        let rows = &self.theta[x];
        if parents.is_empty() {
            return Ok(rows[0]);
        }
        let mut msgs = Vec::with_capacity(parents.len());
        for &u in parents {
            msgs.push(self.node_value(u, x)?);
        }
        let k = parents.len();
        let cards = vec![2usize; k];
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for corner in grid::configs(&cards) {
            let p: Vec<f64> = corner
                .iter()
                .zip(&msgs)
                .map(|(&bit, &(l, h))| if bit == 0 { l } else { h })
                .collect();
            let mut s_lo = 0.0;
            let mut s_hi = 0.0;
            for w in grid::configs(&cards) {
                let mut weight = 1.0;
                for (j, &wj) in w.iter().enumerate() {
                    weight *= if wj == 0 { p[j] } else { 1.0 - p[j] };
                }
                let row = grid::config_index(&cards, &w);
                s_lo += rows[row].0 * weight;
                s_hi += rows[row].1 * weight;
            }
            lo = lo.min(s_lo);
            hi = hi.max(s_hi);
        }
        Ok((lo, hi))
    }

    /// Bounds of the normalized likelihood message σ from child `c` to
    /// parent `x`: σ = λ_c(x=0) / (λ_c(x=0) + λ_c(x=1)), extremized over
    /// corners of the incoming co-parent and grandchild messages, with c's
    /// θ rows set per the sign of the evidence-likelihood slope.
    fn lambda_msg(&mut self, c: usize, x: usize) -> Result<(f64, f64)> {
        if let Some(&v) = self.memo_lambda.get(&(c, x)) {
            return Ok(v);
        }
        let parents = self.net.parents(c);
        let pos_x = parents
            .iter()
            .position(|&u| u == x)
            .expect("message flows along an existing arc");
        let co_parents: Vec<usize> = parents
            .iter()
            .copied()
            .filter(|&u| u != x)
            .collect();
        let mut co_msgs = Vec::with_capacity(co_parents.len());
        for &w in &co_parents {
            co_msgs.push(self.node_value(w, c)?);
        }
        let mut child_msgs = Vec::new();
        for &d in &self.children[c] {
            child_msgs.push(self.lambda_msg(d, c)?);
        }
        let (ind0, ind1) = match self.evidence.get(&c) {
            Some(0) => (1.0, 0.0),
            Some(_) => (0.0, 1.0),
            None => (1.0, 1.0),
        };

        let full_cards = vec![2usize; parents.len()];
        let co_cards = vec![2usize; co_parents.len()];
        let rows = &self.theta[c];
        // W_{x_val}, at its own lower/upper θ endpoints, given co-parent
        // message values p: P(c = 0 | x = x_val, messages).
        let w_bounds = |x_val: usize, p: &[f64]| -> (f64, f64) {
            let mut lo = 0.0;
            let mut hi = 0.0;
            for w in grid::configs(&co_cards) {
                let mut weight = 1.0;
                for (r, &wr) in w.iter().enumerate() {
                    weight *= if wr == 0 { p[r] } else { 1.0 - p[r] };
                }
                let mut full = Vec::with_capacity(parents.len());
                let mut wi = w.iter();
                for pos in 0..parents.len() {
                    if pos == pos_x {
                        full.push(x_val);
                    } else {
                        full.push(*wi.next().expect("co-parent config covers the rest"));
                    }
                }
                let row = grid::config_index(&full_cards, &full);
                lo += rows[row].0 * weight;
                hi += rows[row].1 * weight;
            }
            (lo, hi)
        };

        let corner_dims = co_parents.len() + child_msgs.len();
        let corner_cards = vec![2usize; corner_dims];
        let mut sig_lo = f64::INFINITY;
        let mut sig_hi = f64::NEG_INFINITY;
        for corner in grid::configs(&corner_cards) {
            let p: Vec<f64> = (0..co_parents.len())
                .map(|r| {
                    let (l, h) = co_msgs[r];
                    if corner[r] == 0 {
                        l
                    } else {
                        h
                    }
                })
                .collect();
            let mut like0 = ind0;
            let mut like1 = ind1;
            for (d, &(l, h)) in child_msgs.iter().enumerate() {
                let s = if corner[co_parents.len() + d] == 0 { l } else { h };
                like0 *= s;
                like1 *= 1.0 - s;
            }
            let (w0_lo, w0_hi) = w_bounds(0, &p);
            let (w1_lo, w1_hi) = w_bounds(1, &p);
            let slope = like0 - like1;
            // σ = (W0·slope + like1) / ((W0 + W1)·slope + 2·like1) is
            // increasing in W0 and decreasing in W1 when slope > 0 (and
            // conversely), so each bound fixes the two independently.
            for (goal_hi, w0, w1) in [
                (true, if slope > 0.0 { w0_hi } else { w0_lo }, if slope > 0.0 { w1_lo } else { w1_hi }),
                (false, if slope > 0.0 { w0_lo } else { w0_hi }, if slope > 0.0 { w1_hi } else { w1_lo }),
            ] {
                let a = w0 * slope + like1;
                let b = w1 * slope + like1;
                if a + b <= 0.0 {
                    return Err(zero_denominator());
                }
                let sigma = a / (a + b);
                if goal_hi {
                    sig_hi = sig_hi.max(sigma);
                } else {
                    sig_lo = sig_lo.min(sigma);
                }
            }
        }
        self.memo_lambda.insert((c, x), (sig_lo, sig_hi));
        Ok((sig_lo, sig_hi))
    }
}

fn children_lists(net: &CredalNetwork) -> Vec<Vec<usize>> {
    let mut children = vec![Vec::new(); net.len()];
    for i in 0..net.len() {
        for &p in net.parents(i) {
            children[p].push(i);
        }
    }
    children
}

/// Exact posterior bounds on binary polytrees by interval message passing.
/// Refuses (precondition error) on non-binary or multiply connected
/// networks, on extensive nodes that do not factor into independent rows,
/// and on any vanishing message denominator; a returned result matches
/// enumeration exactly.
pub fn two_u_update(net: &CredalNetwork, q: &Query) -> Result<IntervalPosterior> {
    q.check(|i| net.cardinality(i))?;
    if !net.is_binary() {
        return Err(Error::Precondition(
            "interval propagation requires all-binary variables".into(),
        ));
    }
    if !net.is_polytree() {
        return Err(Error::Precondition(
            "interval propagation requires a polytree".into(),
        ));
    }
    let theta = theta_intervals(net)?;
    let children = children_lists(net);

    // Evidence feasibility: each observed state must be reachable given the
    // rest of the evidence, otherwise every combination is skipped by
    // regular extension and no posterior exists. This also covers evidence
    // in components the query cannot see.
    let mut evidence_nodes: Vec<usize> = q.hard_evidence.keys().copied().collect();
    evidence_nodes.sort_unstable();
    for x in evidence_nodes {
        let e = q.hard_evidence[&x];
        let mut rest = q.hard_evidence.clone();
        rest.remove(&x);
        let mut solver = Solver::new(net, &theta, &children, rest);
        let (lo, hi) = solver.node_value(x, NO_SKIP)?;
        let reachable = if e == 0 { hi } else { 1.0 - lo };
        if reachable <= 0.0 {
            return Err(Error::InconsistentEvidence(format!(
                "{}: observed state has probability zero under every local-model choice",
                net.variable(x).name
            )));
        }
    }

    let mut solver = Solver::new(net, &theta, &children, q.hard_evidence.clone());
    let (lo, hi) = solver.node_value(q.target, NO_SKIP)?;
    Ok(IntervalPosterior {
        target: q.target,
        lower: vec![lo, 1.0 - hi],
        upper: vec![hi, 1.0 - lo],
        method: Method::TwoU,
        certificates: None,
    })
}
