//! Exact credal updating by exhaustive enumeration.
//!
//! Every combination of local-model vertices is a sharp network; the
//! posterior bounds are the min/max of the sharp posteriors over all
//! combinations with positive evidence probability. Exponential, hence the
//! hard cap — this engine is the ground truth the others are judged
//! against, not a scalable solver.

use crate::bn::{posterior, Query};
use crate::error::{Error, Result};
use crate::model::grid;

use super::{Certificates, ChoiceSpace, IntervalPosterior, Method};

/// Most vertex combinations the oracle will enumerate.
pub const ENUMERATION_CAP: usize = 1_000_000;

/// Exact posterior bounds with certificates: for each target state and each
/// bound, the first (lowest-index) combination achieving it.
pub fn oracle_update(
    net: &crate::model::CredalNetwork,
    q: &Query,
    cap: usize,
) -> Result<IntervalPosterior> {
    q.check(|i| net.cardinality(i))?;
    let space = ChoiceSpace::new(net)?;
    let counts = space.counts();
    match grid::grid_size(&counts) {
        Some(n) if n <= cap => {}
        _ => {
            return Err(Error::ResourceCap(format!(
                "vertex enumeration needs more than {cap} combinations"
            )))
        }
    }

    let t_card = net.cardinality(q.target);
    let mut lower = vec![f64::INFINITY; t_card];
    let mut upper = vec![f64::NEG_INFINITY; t_card];
    let mut cert_lower: Vec<Option<Vec<usize>>> = vec![None; t_card];
    let mut cert_upper: Vec<Option<Vec<usize>>> = vec![None; t_card];
    let mut feasible = false;

    for choice in grid::configs(&counts) {
        let bn = space.instantiate(net, &choice);
        let p = match posterior(&bn, q) {
            Ok(p) => p,
            // Regular extension: combinations under which the evidence is
            // impossible carry no posterior and are skipped.
            Err(Error::InconsistentEvidence(_)) => continue,
            Err(e) => return Err(e),
        };
        feasible = true;
        for s in 0..t_card {
            if p[s] < lower[s] {
                lower[s] = p[s];
                cert_lower[s] = Some(choice.clone());
            }
            if p[s] > upper[s] {
                upper[s] = p[s];
                cert_upper[s] = Some(choice.clone());
            }
        }
    }

    if !feasible {
        return Err(Error::InconsistentEvidence(
            "evidence has probability zero under every local-model combination".into(),
        ));
    }
    Ok(IntervalPosterior {
        target: q.target,
        lower,
        upper,
        method: Method::Oracle,
        certificates: Some(Certificates {
            lower: cert_lower.into_iter().map(Option::unwrap).collect(),
            upper: cert_upper.into_iter().map(Option::unwrap).collect(),
        }),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{
        Ccpt, Cpt, CredalNetwork, CredalRow, CredalSet, IntervalCs, NodeModel, Pmf, Variable,
    };
    use std::collections::HashMap;

    fn sharp_root(name: &str, p: Vec<f64>) -> NodeModel {
        NodeModel::Sharp(Cpt::root(name, Pmf::new(p).unwrap()))
    }

    #[test]
    fn all_singleton_models_reproduce_posterior() {
        let a = Variable::binary("A", "a", "na").unwrap();
        let b = Variable::binary("B", "b", "nb").unwrap();
        let net = CredalNetwork::new(
            vec![a, b],
            vec![
                sharp_root("A", vec![0.3, 0.7]),
                NodeModel::Sharp(Cpt::new(
                    "B",
                    &["A"],
                    vec![
                        Pmf::new(vec![0.9, 0.1]).unwrap(),
                        Pmf::new(vec![0.2, 0.8]).unwrap(),
                    ],
                )),
            ],
        )
        .unwrap();
        let q = Query {
            target: 0,
            hard_evidence: HashMap::from([(1, 0)]),
        };
        let ip = oracle_update(&net, &q, ENUMERATION_CAP).unwrap();
        let bn = net.as_bayesian().unwrap();
        let p = posterior(&bn, &q).unwrap();
        assert!(crate::model::approx_eq_slice(&ip.lower, &p.0, 1e-15));
        assert!(crate::model::approx_eq_slice(&ip.upper, &p.0, 1e-15));
        assert!(ip.check().is_ok());
    }

    #[test]
    fn two_credal_roots_enumerate_four_combinations() {
        // P(C=c) = Σ_ab P(a)P(b)P(c|ab) with A, B interval roots; the
        // posterior bounds on A given c must match the 4-corner hand
        // enumeration.
        let a = Variable::binary("A", "a", "na").unwrap();
        let b = Variable::binary("B", "b", "nb").unwrap();
        let c = Variable::binary("C", "c", "nc").unwrap();
        let interval_root = |name: &str, lo: f64, hi: f64| {
            NodeModel::Credal(Ccpt {
                child: name.into(),
                parents: vec![],
                rows: vec![CredalRow::Interval(
                    IntervalCs::new(vec![lo, 1.0 - hi], vec![hi, 1.0 - lo]).unwrap(),
                )],
            })
        };
        let cpt_c = Cpt::new(
            "C",
            &["A", "B"],
            vec![
                Pmf::new(vec![0.9, 0.1]).unwrap(),
                Pmf::new(vec![0.6, 0.4]).unwrap(),
                Pmf::new(vec![0.3, 0.7]).unwrap(),
                Pmf::new(vec![0.2, 0.8]).unwrap(),
            ],
        );
        let net = CredalNetwork::new(
            vec![a, b, c],
            vec![
                interval_root("A", 0.3, 0.5),
                interval_root("B", 0.6, 0.8),
                NodeModel::Sharp(cpt_c),
            ],
        )
        .unwrap();
        let q = Query {
            target: 0,
            hard_evidence: HashMap::from([(2, 0)]),
        };
        let ip = oracle_update(&net, &q, ENUMERATION_CAP).unwrap();

        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for &pa in &[0.3, 0.5] {
            for &pb in &[0.6, 0.8] {
                let joint_a = pa * (pb * 0.9 + (1.0 - pb) * 0.6);
                let joint_na = (1.0 - pa) * (pb * 0.3 + (1.0 - pb) * 0.2);
                let post = joint_a / (joint_a + joint_na);
                lo = lo.min(post);
                hi = hi.max(post);
            }
        }
        assert!((ip.lower[0] - lo).abs() < 1e-12);
        assert!((ip.upper[0] - hi).abs() < 1e-12);
    }

    #[test]
    fn certificates_reproduce_bounds() {
        let a = Variable::binary("A", "a", "na").unwrap();
        let b = Variable::binary("B", "b", "nb").unwrap();
        let net = CredalNetwork::new(
            vec![a, b],
            vec![
                NodeModel::Credal(Ccpt {
                    child: "A".into(),
                    parents: vec![],
                    rows: vec![CredalRow::Interval(
                        IntervalCs::new(vec![0.2, 0.3], vec![0.7, 0.8]).unwrap(),
                    )],
                }),
                NodeModel::Credal(Ccpt {
                    child: "B".into(),
                    parents: vec!["A".into()],
                    rows: vec![
                        CredalRow::Interval(
                            IntervalCs::new(vec![0.5, 0.2], vec![0.8, 0.5]).unwrap(),
                        ),
                        CredalRow::Interval(
                            IntervalCs::new(vec![0.1, 0.6], vec![0.4, 0.9]).unwrap(),
                        ),
                    ],
                }),
            ],
        )
        .unwrap();
        let q = Query {
            target: 0,
            hard_evidence: HashMap::from([(1, 0)]),
        };
        let ip = oracle_update(&net, &q, ENUMERATION_CAP).unwrap();
        let space = ChoiceSpace::new(&net).unwrap();
        let certs = ip.certificates.as_ref().unwrap();
        for s in 0..2 {
            let bn = space.instantiate(&net, &certs.lower[s]);
            let p = posterior(&bn, &q).unwrap();
            assert!((p[s] - ip.lower[s]).abs() < 1e-15);
            let bn = space.instantiate(&net, &certs.upper[s]);
            let p = posterior(&bn, &q).unwrap();
            assert!((p[s] - ip.upper[s]).abs() < 1e-15);
        }
    }

    #[test]
    fn cap_is_enforced() {
        let a = Variable::binary("A", "a", "na").unwrap();
        let net = CredalNetwork::new(
            vec![a],
            vec![NodeModel::Credal(Ccpt {
                child: "A".into(),
                parents: vec![],
                rows: vec![CredalRow::Interval(
                    IntervalCs::new(vec![0.2, 0.3], vec![0.7, 0.8]).unwrap(),
                )],
            })],
        )
        .unwrap();
        let q = Query::marginal(0);
        assert!(matches!(
            oracle_update(&net, &q, 1),
            Err(Error::ResourceCap(_))
        ));
    }

    #[test]
    fn impossible_evidence_everywhere_errors() {
        let a = Variable::binary("A", "a", "na").unwrap();
        let b = Variable::binary("B", "b", "nb").unwrap();
        let net = CredalNetwork::new(
            vec![a, b],
            vec![
                sharp_root("A", vec![1.0, 0.0]),
                NodeModel::Sharp(Cpt::new(
                    "B",
                    &["A"],
                    vec![
                        Pmf::new(vec![1.0, 0.0]).unwrap(),
                        Pmf::new(vec![0.5, 0.5]).unwrap(),
                    ],
                )),
            ],
        )
        .unwrap();
        let q = Query {
            target: 0,
            hard_evidence: HashMap::from([(1, 1)]),
        };
        assert!(matches!(
            oracle_update(&net, &q, ENUMERATION_CAP),
            Err(Error::InconsistentEvidence(_))
        ));
    }

    #[test]
    fn vacuous_root_spans_unit_interval() {
        let a = Variable::binary("A", "a", "na").unwrap();
        let net = CredalNetwork::new(
            vec![a],
            vec![NodeModel::Credal(Ccpt {
                child: "A".into(),
                parents: vec![],
                rows: vec![CredalRow::Set(CredalSet::vacuous(2))],
            })],
        )
        .unwrap();
        let ip = oracle_update(&net, &Query::marginal(0), ENUMERATION_CAP).unwrap();
        assert_eq!(ip.lower, vec![0.0, 0.0]);
        assert_eq!(ip.upper, vec![1.0, 1.0]);
    }
}
