//! Verifies that absorbing credal soft evidence preserves conditionals.
//!
//! Revising a marginal is supposed to leave the rest of the model alone:
//! for every full configuration x and every state x_n of the revised
//! variable, the revised conditional P′(x | x_n) must equal the original
//! P(x | x_n), whichever member of the credal set did the revising. This
//! module measures the worst violation of that identity over the whole
//! joint space — a correctness probe for the auxiliary-child construction,
//! expected to sit at floating-point noise.

use crate::bn::joint_prob;
use crate::error::{Error, Result};
use crate::evidence::{cse_ecpt_augment, CredalSoftEvidence};
use crate::model::{grid, BayesianNetwork, NodeModel};

/// Largest joint-configuration count `check_cpk` will enumerate.
pub const JOINT_CAP: usize = 4096;

/// Maximum over all extensive tables, revised-variable states x_n, and full
/// configurations x (consistent with `extra_hard`) of
/// |P′(x | x_n, d, e) − P(x | x_n, e)|, where d instantiates the auxiliary
/// child and e the extra hard evidence. Conditioning states with zero mass
/// are skipped.
pub fn check_cpk(
    net: &BayesianNetwork,
    cse: &CredalSoftEvidence,
    extra_hard: &[(usize, usize)],
    cap: usize,
) -> Result<f64> {
    let cards: Vec<usize> = (0..net.len()).map(|i| net.cardinality(i)).collect();
    match grid::grid_size(&cards) {
        Some(n) if n <= cap => {}
        _ => {
            return Err(Error::ResourceCap(format!(
                "joint enumeration needs more than {cap} configurations"
            )))
        }
    }
    for &(node, state) in extra_hard {
        if node >= net.len() || state >= net.cardinality(node) {
            return Err(Error::Precondition(
                "hard-evidence assignment out of range".into(),
            ));
        }
    }
    let xn = net
        .node(&cse.variable)
        .ok_or_else(|| Error::InvalidEvidence(format!("unknown variable {:?}", cse.variable)))?;
    let xn_card = net.cardinality(xn);

    let aug = cse_ecpt_augment(net, cse)?;
    let aux = aug.observe[0].0;
    let NodeModel::Extensive(ecpt) = aug.net.model(aux) else {
        unreachable!("extensive absorption yields an extensive auxiliary node")
    };

    let consistent =
        |z: &[usize]| -> bool { extra_hard.iter().all(|&(node, state)| z[node] == state) };

    // Original conditionals P(x | x_n, e): weights and per-x_n normalizers.
    let mut base_weight: Vec<f64> = Vec::new();
    let mut base_norm = vec![0.0; xn_card];
    for z in grid::configs(&cards) {
        let w = if consistent(&z) { joint_prob(net, &z)? } else { 0.0 };
        base_norm[z[xn]] += w;
        base_weight.push(w);
    }

    let mut worst: f64 = 0.0;
    for table in &ecpt.tables {
        // P(d | x_n) is the table's first-state entry for parent state x_n.
        let d_given = |xn_state: usize| table.rows[xn_state][0];
        let mut norm = vec![0.0; xn_card];
        for z in grid::configs(&cards) {
            norm[z[xn]] += if consistent(&z) {
                joint_prob(net, &z)? * d_given(z[xn])
            } else {
                0.0
            };
        }
        for (zi, z) in grid::configs(&cards).enumerate() {
            let s = z[xn];
            if norm[s] <= 0.0 || base_norm[s] <= 0.0 {
                continue;
            }
            let revised = if consistent(&z) {
                joint_prob(net, &z)? * d_given(s) / norm[s]
            } else {
                0.0
            };
            let original = base_weight[zi] / base_norm[s];
            worst = worst.max((revised - original).abs());
        }
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{Cpt, CredalSet, Pmf, Variable};

    fn chain3() -> BayesianNetwork {
        BayesianNetwork::new(
            vec![
                Variable::new("S", &["g", "y", "r"]).unwrap(),
                Variable::binary("A", "a", "na").unwrap(),
                Variable::binary("B", "b", "nb").unwrap(),
            ],
            vec![
                Cpt::root("S", Pmf::new(vec![0.5, 0.2, 0.3]).unwrap()),
                Cpt::new(
                    "A",
                    &["S"],
                    vec![
                        Pmf::new(vec![0.9, 0.1]).unwrap(),
                        Pmf::new(vec![0.5, 0.5]).unwrap(),
                        Pmf::new(vec![0.2, 0.8]).unwrap(),
                    ],
                ),
                Cpt::new(
                    "B",
                    &["A"],
                    vec![
                        Pmf::new(vec![0.7, 0.3]).unwrap(),
                        Pmf::new(vec![0.4, 0.6]).unwrap(),
                    ],
                ),
            ],
        )
        .unwrap()
    }

    #[test]
    fn sharp_soft_evidence_preserves_conditionals() {
        let net = chain3();
        let cse = CredalSoftEvidence {
            variable: "S".into(),
            cs: CredalSet::sharp(Pmf::new(vec![0.2, 0.5, 0.3]).unwrap()).unwrap(),
        };
        let dev = check_cpk(&net, &cse, &[], JOINT_CAP).unwrap();
        assert!(dev <= 1e-12, "deviation {dev}");
    }

    #[test]
    fn two_vertex_cse_preserves_conditionals() {
        let net = chain3();
        let cse = CredalSoftEvidence {
            variable: "S".into(),
            cs: CredalSet::new(vec![
                Pmf::new(vec![0.6, 0.1, 0.3]).unwrap(),
                Pmf::new(vec![0.2, 0.4, 0.4]).unwrap(),
            ])
            .unwrap(),
        };
        let dev = check_cpk(&net, &cse, &[], JOINT_CAP).unwrap();
        assert!(dev <= 1e-9, "deviation {dev}");
    }

    #[test]
    fn hard_evidence_elsewhere_keeps_the_identity() {
        let net = chain3();
        let cse = CredalSoftEvidence {
            variable: "S".into(),
            cs: CredalSet::new(vec![
                Pmf::new(vec![0.6, 0.1, 0.3]).unwrap(),
                Pmf::new(vec![0.2, 0.4, 0.4]).unwrap(),
            ])
            .unwrap(),
        };
        let b = net.node("B").unwrap();
        let dev = check_cpk(&net, &cse, &[(b, 0)], JOINT_CAP).unwrap();
        assert!(dev <= 1e-9, "deviation {dev}");
    }

    #[test]
    fn cap_is_enforced() {
        let net = chain3();
        let cse = CredalSoftEvidence {
            variable: "S".into(),
            cs: CredalSet::sharp(Pmf::new(vec![0.2, 0.5, 0.3]).unwrap()).unwrap(),
        };
        assert!(matches!(
            check_cpk(&net, &cse, &[], 2),
            Err(Error::ResourceCap(_))
        ));
    }
}
