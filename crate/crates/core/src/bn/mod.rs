//! Exact inference in Bayesian networks: joint evaluation, marginals and
//! posteriors by variable elimination.

pub mod factor;

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::model::{BayesianNetwork, Pmf};

pub use factor::Factor;

/// A posterior query: a target variable and hard evidence on other variables
/// (node indices into the network, states by index).
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Query {
    pub target: usize,
    pub hard_evidence: HashMap<usize, usize>,
}

impl Query {
    pub fn marginal(target: usize) -> Self {
        Query {
            target,
            hard_evidence: HashMap::new(),
        }
    }

    pub fn check(&self, card_of: impl Fn(usize) -> usize) -> Result<()> {
        if self.hard_evidence.contains_key(&self.target) {
            return Err(Error::Precondition(
                "query target cannot also carry hard evidence".into(),
            ));
        }
        for (&node, &state) in &self.hard_evidence {
            if state >= card_of(node) {
                return Err(Error::Precondition(format!(
                    "evidence state {state} out of range for node {node}"
                )));
            }
        }
        Ok(())
    }
}

/// Probability of one full configuration: the product of each node's CPT
/// entry under its parents' assigned states.
pub fn joint_prob(net: &BayesianNetwork, assignment: &[usize]) -> Result<f64> {
    if assignment.len() != net.len() {
        return Err(Error::Precondition(format!(
            "assignment covers {} of {} variables",
            assignment.len(),
            net.len()
        )));
    }
    let mut p = 1.0;
    for i in 0..net.len() {
        let parent_states: Vec<usize> = net.parents(i).iter().map(|&j| assignment[j]).collect();
        let row = net.cpt(i).row(&net.parent_cards(i), &parent_states);
        p *= row[assignment[i]];
    }
    Ok(p)
}

/// Turns each node's CPT into a factor over (child, parents).
fn cpt_factors(net: &BayesianNetwork) -> Vec<Factor> {
    (0..net.len())
        .map(|i| {
            let mut scope = vec![i];
            scope.extend_from_slice(net.parents(i));
            let cards: Vec<usize> = scope.iter().map(|&v| net.cardinality(v)).collect();
            let parent_cards = net.parent_cards(i);
            Factor::from_fn(scope, cards, |cfg| {
                net.cpt(i).row(&parent_cards, &cfg[1..])[cfg[0]]
            })
        })
        .collect()
}

/// Sums the product of `factors` down to `keep`, eliminating all other
/// variables. Ordering is chosen greedily by min-degree: always eliminate
/// the variable whose bucket product has the smallest scope next.
pub fn eliminate_to(mut factors: Vec<Factor>, keep: &[usize]) -> Factor {
    loop {
        let mut candidates: Vec<usize> = factors
            .iter()
            .flat_map(|f| f.scope.iter().copied())
            .filter(|v| !keep.contains(v))
            .collect();
        candidates.sort_unstable();
        candidates.dedup();
        let Some(&victim) = candidates.iter().min_by_key(|&&v| {
            // Degree = number of distinct neighbours in the factors touching v.
            let mut neighbours: Vec<usize> = factors
                .iter()
                .filter(|f| f.scope.contains(&v))
                .flat_map(|f| f.scope.iter().copied())
                .filter(|&w| w != v)
                .collect();
            neighbours.sort_unstable();
            neighbours.dedup();
            neighbours.len()
        }) else {
            break;
        };
        let (bucket, rest): (Vec<Factor>, Vec<Factor>) =
            factors.into_iter().partition(|f| f.scope.contains(&victim));
        let product = bucket
            .into_iter()
            .reduce(|a, b| a.product(&b))
            .expect("victim came from some factor's scope");
        factors = rest;
        factors.push(product.marginalize(victim));
    }
    factors
        .into_iter()
        .fold(Factor::unit(), |a, b| a.product(&b))
}

/// Unnormalized P(target, evidence) as a factor over the target variable.
fn target_factor(net: &BayesianNetwork, q: &Query) -> Result<Factor> {
    q.check(|i| net.cardinality(i))?;
    let mut factors = cpt_factors(net);
    for (&node, &state) in &q.hard_evidence {
        factors.push(Factor::indicator(node, net.cardinality(node), state));
    }
    let mut f = eliminate_to(factors, &[q.target]);
    if f.scope.is_empty() {
        // Degenerate: target never appeared (single-node nets eliminate all).
        f = Factor {
            scope: vec![q.target],
            cards: vec![net.cardinality(q.target)],
            values: vec![f.values[0]; net.cardinality(q.target)],
        };
    }
    Ok(f)
}

/// Prior marginal of one variable.
pub fn marginal(net: &BayesianNetwork, node: usize) -> Pmf {
    let f = target_factor(net, &Query::marginal(node)).expect("marginal query is always valid");
    Pmf::normalized(&f.values).expect("marginals of valid networks normalize")
}

/// Posterior of the query target given its hard evidence.
///
/// Evidence with probability zero is a modelling contradiction, reported as
/// an inconsistency rather than a NaN-filled PMF.
pub fn posterior(net: &BayesianNetwork, q: &Query) -> Result<Pmf> {
    let f = target_factor(net, q)?;
    if f.total() <= 0.0 {
        return Err(Error::InconsistentEvidence(
            "hard evidence has probability zero".into(),
        ));
    }
    Pmf::normalized(&f.values)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{approx_eq_slice, Cpt, Variable};

    fn chain() -> BayesianNetwork {
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
    fn joint_multiplies_cpt_entries() {
        let net = chain();
        assert!((joint_prob(&net, &[0, 0]).unwrap() - 0.45).abs() < 1e-12);
        assert!((joint_prob(&net, &[1, 0]).unwrap() - 0.05).abs() < 1e-12);
    }

    #[test]
    fn deterministic_chain_joint() {
        let a = Variable::binary("A", "a", "na").unwrap();
        let b = Variable::binary("B", "b", "nb").unwrap();
        let net = BayesianNetwork::new(
            vec![a, b],
            vec![
                Cpt::root("A", Pmf::new(vec![0.5, 0.5]).unwrap()),
                Cpt::new(
                    "B",
                    &["A"],
                    vec![
                        Pmf::new(vec![1.0, 0.0]).unwrap(),
                        Pmf::new(vec![0.0, 1.0]).unwrap(),
                    ],
                ),
            ],
        )
        .unwrap();
        assert!((joint_prob(&net, &[0, 0]).unwrap() - 0.5).abs() < 1e-12);
        assert_eq!(joint_prob(&net, &[0, 1]).unwrap(), 0.0);
    }

    #[test]
    fn marginal_of_child() {
        let net = chain();
        let m = marginal(&net, net.node("B").unwrap());
        assert!(approx_eq_slice(&m.0, &[0.5, 0.5], 1e-12));
    }

    #[test]
    fn single_node_marginal_is_prior() {
        let x = Variable::new("X", &["g", "y", "r"]).unwrap();
        let net = BayesianNetwork::new(
            vec![x],
            vec![Cpt::root("X", Pmf::new(vec![0.2, 0.3, 0.5]).unwrap())],
        )
        .unwrap();
        let m = marginal(&net, 0);
        assert!(approx_eq_slice(&m.0, &[0.2, 0.3, 0.5], 1e-12));
    }

    #[test]
    fn posterior_by_bayes_rule() {
        let net = chain();
        let q = Query {
            target: net.node("A").unwrap(),
            hard_evidence: HashMap::from([(net.node("B").unwrap(), 0)]),
        };
        let p = posterior(&net, &q).unwrap();
        assert!(approx_eq_slice(&p.0, &[0.9, 0.1], 1e-12));
    }

    #[test]
    fn impossible_evidence_is_an_error() {
        let a = Variable::binary("A", "a", "na").unwrap();
        let b = Variable::binary("B", "b", "nb").unwrap();
        let net = BayesianNetwork::new(
            vec![a, b],
            vec![
                Cpt::root("A", Pmf::new(vec![1.0, 0.0]).unwrap()),
                Cpt::new(
                    "B",
                    &["A"],
                    vec![
                        Pmf::new(vec![1.0, 0.0]).unwrap(),
                        Pmf::new(vec![0.0, 1.0]).unwrap(),
                    ],
                ),
            ],
        )
        .unwrap();
        let q = Query {
            target: 0,
            hard_evidence: HashMap::from([(1, 1)]),
        };
        assert!(matches!(
            posterior(&net, &q),
            Err(Error::InconsistentEvidence(_))
        ));
    }

    #[test]
    fn posterior_without_evidence_is_marginal() {
        let net = chain();
        let q = Query::marginal(1);
        let p = posterior(&net, &q).unwrap();
        assert_eq!(p, marginal(&net, 1));
    }
}
