//! Seeded generators shared by the property, acceptance, and benchmark
//! suites: random networks (sharp, credal, binary polytree), distributions,
//! likelihood boxes, and shady credal sets, all reproducible from a u64 seed.

use std::collections::BTreeSet;

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use credal::model::{
    BayesianNetwork, Ccpt, Cpt, CredalNetwork, CredalRow, CredalSet, IntervalCs, NodeModel, Pmf,
    Variable,
};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A random distribution with every entry at least `floor / card`.
pub fn random_pmf(rng: &mut ChaCha8Rng, card: usize, floor: f64) -> Pmf {
    let weights: Vec<f64> = (0..card).map(|_| rng.random_range(floor..1.0)).collect();
    Pmf::normalized(&weights).expect("positive weights")
}

fn state_labels(card: usize) -> Vec<String> {
    (0..card).map(|s| s.to_string()).collect()
}

fn make_variable(name: &str, card: usize) -> Variable {
    let labels = state_labels(card);
    let refs: Vec<&str> = labels.iter().map(String::as_str).collect();
    Variable::new(name, &refs).expect("distinct labels")
}

/// Picks up to `max` distinct parents for node `i` from nodes 0..i.
fn pick_parents(rng: &mut ChaCha8Rng, i: usize, max: usize) -> Vec<usize> {
    let available = i.min(max);
    let k = if available == 0 {
        0
    } else {
        rng.random_range(0..=available)
    };
    let mut pool: Vec<usize> = (0..i).collect();
    pool.shuffle(rng);
    pool.truncate(k);
    pool.sort_unstable();
    pool
}

/// A random sharp network: DAG with in-degree ≤ 2, state counts in
/// 2..=`max_card`, and all probabilities bounded away from zero.
pub fn random_bn(rng: &mut ChaCha8Rng, nodes: usize, max_card: usize) -> BayesianNetwork {
    let cards: Vec<usize> = (0..nodes).map(|_| rng.random_range(2..=max_card)).collect();
    let variables: Vec<Variable> = cards
        .iter()
        .enumerate()
        .map(|(i, &c)| make_variable(&format!("N{i}"), c))
        .collect();
    let mut cpts = Vec::with_capacity(nodes);
    for i in 0..nodes {
        let parents = pick_parents(rng, i, 2);
        let n_rows: usize = parents.iter().map(|&p| cards[p]).product();
        let rows: Vec<Pmf> = (0..n_rows)
            .map(|_| random_pmf(rng, cards[i], 0.05))
            .collect();
        let names: Vec<String> = parents.iter().map(|&p| format!("N{p}")).collect();
        let refs: Vec<&str> = names.iter().map(String::as_str).collect();
        cpts.push(Cpt::new(format!("N{i}"), &refs, rows));
    }
    BayesianNetwork::new(variables, cpts).expect("generated network is valid")
}

/// A feasible interval row over two states: state 0 ranges over
/// [lo, hi] ⊂ (0, 1) and state 1 over the complement.
pub fn random_binary_interval(rng: &mut ChaCha8Rng) -> IntervalCs {
    let a = rng.random_range(0.1..0.9);
    let b = rng.random_range(0.1..0.9);
    let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
    IntervalCs::new(vec![lo, 1.0 - hi], vec![hi, 1.0 - lo]).expect("feasible by construction")
}

/// A random all-binary polytree credal network. Grows a forest one node at
/// a time — each new node takes zero, one, or two parents, two only when
/// they come from distinct components — and turns `credal_nodes` of the
/// local models into interval-valued ones.
pub fn random_binary_polytree(
    rng: &mut ChaCha8Rng,
    nodes: usize,
    credal_nodes: usize,
) -> CredalNetwork {
    let mut component: Vec<usize> = Vec::with_capacity(nodes);
    let mut parent_sets: Vec<Vec<usize>> = Vec::with_capacity(nodes);
    for i in 0..nodes {
        let roll: f64 = rng.random_range(0.0..1.0);
        let distinct: BTreeSet<usize> = component.iter().copied().collect();
        let mut parents = Vec::new();
        if i > 0 && roll >= 0.15 {
            if roll < 0.5 && distinct.len() >= 2 {
                let comps: Vec<usize> = distinct.iter().copied().collect();
                let mut picks = comps.clone();
                picks.shuffle(rng);
                for &c in picks.iter().take(2) {
                    let members: Vec<usize> = (0..i).filter(|&n| component[n] == c).collect();
                    parents.push(members[rng.random_range(0..members.len())]);
                }
                parents.sort_unstable();
            } else {
                parents.push(rng.random_range(0..i));
            }
        }
        // The new node absorbs its parents' components.
        component.push(i);
        for &p in &parents.clone() {
            let pc = component[p];
            for c in component.iter_mut() {
                if *c == pc {
                    *c = i;
                }
            }
        }
        parent_sets.push(parents);
    }

    let variables: Vec<Variable> = (0..nodes)
        .map(|i| make_variable(&format!("N{i}"), 2))
        .collect();
    let mut credal: BTreeSet<usize> = BTreeSet::new();
    while credal.len() < credal_nodes.min(nodes) {
        credal.insert(rng.random_range(0..nodes));
    }
    let mut models = Vec::with_capacity(nodes);
    for (i, parents) in parent_sets.iter().enumerate() {
        let n_rows = 1usize << parents.len();
        let names: Vec<String> = parents.iter().map(|&p| format!("N{p}")).collect();
        let refs: Vec<&str> = names.iter().map(String::as_str).collect();
        if credal.contains(&i) {
            let rows: Vec<CredalRow> = (0..n_rows)
                .map(|_| CredalRow::Interval(random_binary_interval(rng)))
                .collect();
            models.push(NodeModel::Credal(Ccpt {
                child: format!("N{i}"),
                parents: names.clone(),
                rows,
            }));
        } else {
            let rows: Vec<Pmf> = (0..n_rows).map(|_| random_pmf(rng, 2, 0.1)).collect();
            models.push(NodeModel::Sharp(Cpt::new(format!("N{i}"), &refs, rows)));
        }
    }
    CredalNetwork::new(variables, models).expect("generated polytree is valid")
}

/// A random general credal network: DAG with in-degree ≤ 2, cards up to
/// `max_card`, and `credal_nodes` local models given as two-vertex sets.
pub fn random_credal_net(
    rng: &mut ChaCha8Rng,
    nodes: usize,
    max_card: usize,
    credal_nodes: usize,
) -> CredalNetwork {
    let cards: Vec<usize> = (0..nodes).map(|_| rng.random_range(2..=max_card)).collect();
    let variables: Vec<Variable> = cards
        .iter()
        .enumerate()
        .map(|(i, &c)| make_variable(&format!("N{i}"), c))
        .collect();
    let mut credal: BTreeSet<usize> = BTreeSet::new();
    while credal.len() < credal_nodes.min(nodes) {
        credal.insert(rng.random_range(0..nodes));
    }
    let mut models = Vec::with_capacity(nodes);
    for i in 0..nodes {
        // Credal nodes keep at most one parent so vertex enumeration over
        // their rows stays firmly below the oracle cap.
        let parents = pick_parents(rng, i, if credal.contains(&i) { 1 } else { 2 });
        let n_rows: usize = parents.iter().map(|&p| cards[p]).product();
        let names: Vec<String> = parents.iter().map(|&p| format!("N{p}")).collect();
        let refs: Vec<&str> = names.iter().map(String::as_str).collect();
        if credal.contains(&i) {
            let rows: Vec<CredalRow> = (0..n_rows)
                .map(|_| {
                    let points = vec![
                        random_pmf(rng, cards[i], 0.05),
                        random_pmf(rng, cards[i], 0.05),
                    ];
                    CredalRow::Set(CredalSet::new(points).expect("nonempty vertex list"))
                })
                .collect();
            models.push(NodeModel::Credal(Ccpt {
                child: format!("N{i}"),
                parents: names.clone(),
                rows,
            }));
        } else {
            let rows: Vec<Pmf> = (0..n_rows)
                .map(|_| random_pmf(rng, cards[i], 0.05))
                .collect();
            models.push(NodeModel::Sharp(Cpt::new(format!("N{i}"), &refs, rows)));
        }
    }
    CredalNetwork::new(variables, models).expect("generated network is valid")
}

/// A tight interval set over `card` states: the componentwise hull of a few
/// random distributions, so every bound is attained.
pub fn random_tight_box(rng: &mut ChaCha8Rng, card: usize) -> IntervalCs {
    let points: Vec<Pmf> = (0..3).map(|_| random_pmf(rng, card, 0.05)).collect();
    CredalSet::new(points).expect("three points").shadow()
}

/// A credal set equal to its own interval hull (every bound attainable).
pub fn random_shady_set(rng: &mut ChaCha8Rng, card: usize) -> CredalSet {
    random_tight_box(rng, card)
        .to_vertices()
        .expect("tight boxes have vertices")
}

/// Interval likelihoods with positive lower bounds.
pub fn random_likelihood_box(rng: &mut ChaCha8Rng, card: usize) -> (Vec<f64>, Vec<f64>) {
    let mut lower = Vec::with_capacity(card);
    let mut upper = Vec::with_capacity(card);
    for _ in 0..card {
        let a: f64 = rng.random_range(0.1..1.0);
        let b: f64 = rng.random_range(0.1..1.0);
        lower.push(a.min(b));
        upper.push(a.max(b));
    }
    (lower, upper)
}
