//! Posterior bounds by coordinate descent over credal nodes.
//!
//! All credal nodes but one are pinned to vertices; the posterior as a
//! function of the remaining free node's table is a ratio of two functions
//! that are linear in its entries, optimized exactly per step (see
//! [`super::fractional`]). The free node rotates through the credal nodes
//! in topological order until a sweep yields no improvement beyond the
//! configured tolerance; multiple seeded restarts guard against local
//! optima. Results are always inner approximations of the true bounds
//! (reachable by an explicit vertex combination, reported as the
//! certificate), and exact whenever at most one node is credal.

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use crate::bn::{eliminate_to, posterior, Factor, Query};
use crate::error::{Error, Result};
use crate::model::{BayesianNetwork, CredalNetwork, NodeModel};

use super::{
    solve_fractional, Block, BlockSource, Certificates, ChoiceSpace, EngineConfig, Goal,
    IntervalPosterior, Method,
};

/// Per-node slice of the choice space: which blocks belong to the node.
struct NodeBlocks {
    node: usize,
    block_indices: Vec<usize>,
}

fn group_blocks(space: &ChoiceSpace, net: &CredalNetwork) -> Vec<NodeBlocks> {
    let mut groups: Vec<NodeBlocks> = Vec::new();
    for (i, block) in space.blocks.iter().enumerate() {
        let node = block.source.node();
        match groups.last_mut() {
            Some(g) if g.node == node => g.block_indices.push(i),
            _ => groups.push(NodeBlocks {
                node,
                block_indices: vec![i],
            }),
        }
    }
    // Rotate in topological order.
    let order = net.topo_order().to_vec();
    groups.sort_by_key(|g| order.iter().position(|&n| n == g.node));
    groups
}

/// Fractional-program blocks for one free node, plus the flattened
/// numerator/denominator coefficients aligned with them.
fn node_step_problem(
    net: &CredalNetwork,
    space: &ChoiceSpace,
    group: &NodeBlocks,
    bn: &BayesianNetwork,
    q: &Query,
    state: usize,
) -> (Vec<f64>, Vec<f64>, Vec<Block>) {
    let f = group.node;
    let mut family: Vec<usize> = vec![f];
    family.extend_from_slice(net.parents(f));
    family.sort_unstable();
    family.dedup();

    let mut base: Vec<Factor> = Vec::with_capacity(net.len() + q.hard_evidence.len());
    for i in 0..net.len() {
        if i == f {
            continue;
        }
        let mut scope = vec![i];
        scope.extend_from_slice(net.parents(i));
        let cards: Vec<usize> = scope.iter().map(|&v| net.cardinality(v)).collect();
        let parent_cards = net.parent_cards(i);
        base.push(Factor::from_fn(scope, cards, |cfg| {
            bn.cpt(i).row(&parent_cards, &cfg[1..])[cfg[0]]
        }));
    }
    for (&node, &st) in &q.hard_evidence {
        base.push(Factor::indicator(node, net.cardinality(node), st));
    }

    let den_factor = eliminate_to(base.clone(), &family);
    let mut with_target = base;
    with_target.push(Factor::indicator(
        q.target,
        net.cardinality(q.target),
        state,
    ));
    let num_factor = eliminate_to(with_target, &family);

    // Coefficient of θ_{c|w}: the eliminated factor at (f = c, parents = w).
    let card = net.cardinality(f);
    let parent_cards = net.parent_cards(f);
    let read = |factor: &Factor, c: usize, w: &[usize]| -> f64 {
        let config: Vec<usize> = factor
            .scope
            .iter()
            .map(|&v| {
                if v == f {
                    c
                } else {
                    let pos = net
                        .parents(f)
                        .iter()
                        .position(|&p| p == v)
                        .expect("kept scope is exactly the family");
                    w[pos]
                }
            })
            .collect();
        factor.value_at(&config)
    };

    let mut num = Vec::new();
    let mut den = Vec::new();
    let mut blocks = Vec::new();
    match net.model(f) {
        NodeModel::Sharp(_) => unreachable!("sharp nodes own no blocks"),
        NodeModel::Credal(_) => {
            for &bi in &group.block_indices {
                let block = &space.blocks[bi];
                let BlockSource::Row { row, .. } = block.source else {
                    unreachable!("credal nodes own row blocks")
                };
                let w = crate::model::grid::index_to_config(&parent_cards, row);
                for c in 0..card {
                    num.push(read(&num_factor, c, &w));
                    den.push(read(&den_factor, c, &w));
                }
                blocks.push(Block {
                    candidates: block
                        .row_options
                        .iter()
                        .map(|pmf| pmf.0.clone())
                        .collect(),
                });
            }
        }
        NodeModel::Extensive(ecpt) => {
            let rows = ecpt.tables[0].rows.len();
            for r in 0..rows {
                let w = crate::model::grid::index_to_config(&parent_cards, r);
                for c in 0..card {
                    num.push(read(&num_factor, c, &w));
                    den.push(read(&den_factor, c, &w));
                }
            }
            blocks.push(Block {
                candidates: ecpt
                    .tables
                    .iter()
                    .map(|t| t.rows.iter().flat_map(|row| row.0.iter().copied()).collect())
                    .collect(),
            });
        }
    }
    (num, den, blocks)
}

/// One coordinate-descent run from a given starting combination. Returns
/// the best (value, combination) found, or `None` when no node step was
/// feasible from this start.
#[allow(clippy::too_many_arguments)]
fn descend(
    net: &CredalNetwork,
    space: &ChoiceSpace,
    groups: &[NodeBlocks],
    q: &Query,
    state: usize,
    goal: Goal,
    cfg: &EngineConfig,
    mut choice: Vec<usize>,
) -> Result<Option<(f64, Vec<usize>)>> {
    let mut cur: Option<f64> = None;
    for _ in 0..cfg.max_sweeps {
        let mut improved = false;
        for group in groups {
            let bn = space.instantiate(net, &choice);
            let (num, den, blocks) = node_step_problem(net, space, group, &bn, q, state);
            match solve_fractional(&num, &den, &blocks, goal) {
                Ok(opt) => {
                    let better = match (cur, goal) {
                        (None, _) => true,
                        (Some(v), Goal::Minimize) => opt.value < v - cfg.tolerance,
                        (Some(v), Goal::Maximize) => opt.value > v + cfg.tolerance,
                    };
                    for (slot, &ci) in group.block_indices.iter().zip(&opt.choice) {
                        choice[*slot] = ci;
                    }
                    cur = Some(opt.value);
                    if better {
                        improved = true;
                    }
                }
                // This node cannot rescue a zero-probability-evidence
                // combination on its own; try the next one.
                Err(Error::InconsistentEvidence(_)) => {}
                Err(e) => return Err(e),
            }
        }
        if cur.is_none() {
            return Ok(None);
        }
        if !improved {
            break;
        }
    }
    Ok(cur.map(|v| (v, choice)))
}

/// Inner-approximation posterior bounds by multi-start coordinate descent;
/// exact when the network has at most one credal node.
pub fn approxlp_update(
    net: &CredalNetwork,
    q: &Query,
    cfg: &EngineConfig,
) -> Result<IntervalPosterior> {
    cfg.check()?;
    q.check(|i| net.cardinality(i))?;
    let space = ChoiceSpace::new(net)?;
    let t_card = net.cardinality(q.target);

    if space.blocks.is_empty() {
        let bn = net.as_bayesian().expect("no blocks means every node is sharp");
        let p = posterior(&bn, q)?;
        return Ok(IntervalPosterior {
            target: q.target,
            lower: p.0.clone(),
            upper: p.0,
            method: Method::Approxlp,
            certificates: Some(Certificates {
                lower: vec![Vec::new(); t_card],
                upper: vec![Vec::new(); t_card],
            }),
        });
    }

    let groups = group_blocks(&space, net);
    let counts = space.counts();
    let mut master = ChaCha8Rng::seed_from_u64(cfg.seed);

    let mut lower = vec![0.0; t_card];
    let mut upper = vec![0.0; t_card];
    let mut cert_lower = Vec::with_capacity(t_card);
    let mut cert_upper = Vec::with_capacity(t_card);

    for s in 0..t_card {
        for goal in [Goal::Minimize, Goal::Maximize] {
            let restart_seeds: Vec<u64> = (0..cfg.restarts).map(|_| master.random()).collect();
            let mut best: Option<(f64, Vec<usize>)> = None;
            for (r, &seed) in restart_seeds.iter().enumerate() {
                let start: Vec<usize> = if r == 0 {
                    vec![0; counts.len()]
                } else {
                    let mut rng = ChaCha8Rng::seed_from_u64(seed);
                    counts.iter().map(|&c| rng.random_range(0..c)).collect()
                };
                let Some((value, choice)) =
                    descend(net, &space, &groups, q, s, goal, cfg, start)?
                else {
                    continue;
                };
                let replace = match (&best, goal) {
                    (None, _) => true,
                    (Some((b, _)), Goal::Minimize) => value < *b,
                    (Some((b, _)), Goal::Maximize) => value > *b,
                };
                if replace {
                    best = Some((value, choice));
                }
            }
            let Some((value, choice)) = best else {
                return Err(Error::InconsistentEvidence(
                    "evidence has probability zero under every local-model combination \
                     reached by coordinate descent"
                        .into(),
                ));
            };
            match goal {
                Goal::Minimize => {
                    lower[s] = value;
                    cert_lower.push(choice);
                }
                Goal::Maximize => {
                    upper[s] = value;
                    cert_upper.push(choice);
                }
            }
        }
    }

    Ok(IntervalPosterior {
        target: q.target,
        lower,
        upper,
        method: Method::Approxlp,
        certificates: Some(Certificates {
            lower: cert_lower,
            upper: cert_upper,
        }),
    })
}
