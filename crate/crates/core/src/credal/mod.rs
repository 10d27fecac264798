//! Updating in credal networks: posterior probability bounds by three
//! interchangeable engines.
//!
//! - [`oracle::oracle_update`] — exact enumeration of every combination of
//!   local-model vertices; the ground truth at desk scale.
//! - [`two_u::two_u_update`] — exact interval propagation on binary
//!   polytrees.
//! - [`approxlp::approxlp_update`] — coordinate descent over credal nodes
//!   with exact linear-fractional steps; an inner approximation everywhere,
//!   exact when at most one node is credal.
//!
//! [`cn_update`] picks an engine per [`EngineConfig::method`].
//!
//! Zero-probability evidence is handled by regular extension throughout:
//! local-model combinations under which the evidence is impossible are
//! excluded rather than propagated.

pub mod approxlp;
pub mod cpk;
pub mod fractional;
pub mod hardness;
pub mod oracle;
pub mod two_u;

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::bn::Query;
use crate::error::{Error, Result};
use crate::model::{BayesianNetwork, Cpt, CredalNetwork, NodeModel, Pmf};

pub use fractional::{solve_fractional, Block, FractionalOpt, Goal};

/// Which engine produced a result.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Oracle,
    TwoU,
    Approxlp,
}

impl std::fmt::Display for Method {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Method::Oracle => "oracle",
            Method::TwoU => "two_u",
            Method::Approxlp => "approxlp",
        })
    }
}

/// Engine selection: a fixed engine, or automatic dispatch.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MethodChoice {
    #[default]
    Auto,
    Oracle,
    TwoU,
    Approxlp,
}

/// Tuning knobs shared by the engines.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EngineConfig {
    pub method: MethodChoice,
    /// Multi-start count for coordinate descent.
    pub restarts: usize,
    /// Sweep limit per coordinate-descent start.
    pub max_sweeps: usize,
    /// Improvement threshold for convergence.
    pub tolerance: f64,
    pub seed: u64,
}

impl Default for EngineConfig {
    fn default() -> Self {
        EngineConfig {
            method: MethodChoice::Auto,
            restarts: 10,
            max_sweeps: 50,
            tolerance: 1e-9,
            seed: 0,
        }
    }
}

impl EngineConfig {
    pub fn check(&self) -> Result<()> {
        if self.restarts == 0 || self.max_sweeps == 0 || !(self.tolerance > 0.0) {
            return Err(Error::Precondition(
                "engine config needs positive restarts, sweeps, and tolerance".into(),
            ));
        }
        Ok(())
    }
}

/// The local-model combination achieving each bound, as per-block candidate
/// indices aligned with [`ChoiceSpace::blocks`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Certificates {
    /// One combination per target state, achieving the lower bound.
    pub lower: Vec<Vec<usize>>,
    pub upper: Vec<Vec<usize>>,
}

/// Per-state posterior probability bounds for one query variable.
#[derive(Debug, Clone, PartialEq)]
pub struct IntervalPosterior {
    pub target: usize,
    pub lower: Vec<f64>,
    pub upper: Vec<f64>,
    pub method: Method,
    pub certificates: Option<Certificates>,
}

impl IntervalPosterior {
    /// lower ≤ upper per state; Σ lower ≤ 1 ≤ Σ upper.
    pub fn check(&self) -> Result<()> {
        let tol = crate::model::SUM_TOLERANCE;
        if self
            .lower
            .iter()
            .zip(&self.upper)
            .any(|(&l, &u)| l > u + tol)
        {
            return Err(Error::Precondition(
                "interval posterior has lower > upper".into(),
            ));
        }
        let sl: f64 = self.lower.iter().sum();
        let su: f64 = self.upper.iter().sum();
        if sl > 1.0 + tol || su < 1.0 - tol {
            return Err(Error::Precondition(
                "interval posterior misses every normalized point".into(),
            ));
        }
        Ok(())
    }

    /// True when every state's interval has zero width.
    pub fn is_sharp(&self, tol: f64) -> bool {
        self.lower
            .iter()
            .zip(&self.upper)
            .all(|(&l, &u)| (u - l).abs() <= tol)
    }
}

/// Where one free choice in a credal network lives.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BlockSource {
    /// One parent-configuration row of a per-row credal table.
    Row { node: usize, row: usize },
    /// One whole table of an extensive table list.
    Table { node: usize },
}

impl BlockSource {
    pub fn node(&self) -> usize {
        match self {
            BlockSource::Row { node, .. } | BlockSource::Table { node } => *node,
        }
    }
}

/// One independent choice: pick a candidate PMF for a row, or a candidate
/// table for an extensive node.
#[derive(Debug, Clone)]
pub struct ChoiceBlock {
    pub source: BlockSource,
    /// For `Row`: candidate PMFs. For `Table`: empty (candidates live in
    /// the node's table list; see [`ChoiceSpace::table_count`]).
    pub row_options: Vec<Pmf>,
    pub count: usize,
}

/// All free choices of a credal network, flattened into independent blocks
/// ordered by node index, then row index. A combination is one candidate
/// index per block; enumerating combinations in row-major order (last block
/// fastest) gives every sharp network the credal network contains.
#[derive(Debug, Clone)]
pub struct ChoiceSpace {
    pub blocks: Vec<ChoiceBlock>,
}

impl ChoiceSpace {
    pub fn new(net: &CredalNetwork) -> Result<ChoiceSpace> {
        let mut blocks = Vec::new();
        for node in 0..net.len() {
            match net.model(node) {
                NodeModel::Sharp(_) => {}
                NodeModel::Credal(ccpt) => {
                    for (row, cs_row) in ccpt.rows.iter().enumerate() {
                        let options = cs_row.to_vertex_set()?.vertices().to_vec();
                        let count = options.len();
                        blocks.push(ChoiceBlock {
                            source: BlockSource::Row { node, row },
                            row_options: options,
                            count,
                        });
                    }
                }
                NodeModel::Extensive(ecpt) => {
                    blocks.push(ChoiceBlock {
                        source: BlockSource::Table { node },
                        row_options: Vec::new(),
                        count: ecpt.tables.len(),
                    });
                }
            }
        }
        Ok(ChoiceSpace { blocks })
    }

    pub fn counts(&self) -> Vec<usize> {
        self.blocks.iter().map(|b| b.count).collect()
    }

    /// Number of combinations, or `None` on overflow.
    pub fn combinations(&self) -> Option<usize> {
        crate::model::grid::grid_size(&self.counts())
    }

    /// The sharp network selected by one combination.
    pub fn instantiate(&self, net: &CredalNetwork, choice: &[usize]) -> BayesianNetwork {
        debug_assert_eq!(choice.len(), self.blocks.len());
        let mut cpts: Vec<Cpt> = Vec::with_capacity(net.len());
        for node in 0..net.len() {
            match net.model(node) {
                NodeModel::Sharp(cpt) => cpts.push(cpt.clone()),
                NodeModel::Credal(ccpt) => {
                    let mut rows: Vec<Pmf> = Vec::with_capacity(ccpt.rows.len());
                    for (b, block) in self.blocks.iter().enumerate() {
                        if let BlockSource::Row { node: n, .. } = block.source {
                            if n == node {
                                rows.push(block.row_options[choice[b]].clone());
                            }
                        }
                    }
                    let parent_names: Vec<&str> =
                        ccpt.parents.iter().map(|p| p.as_str()).collect();
                    cpts.push(Cpt::new(ccpt.child.clone(), &parent_names, rows));
                }
                NodeModel::Extensive(ecpt) => {
                    let b = self
                        .blocks
                        .iter()
                        .position(|blk| blk.source == BlockSource::Table { node })
                        .expect("every extensive node owns a block");
                    cpts.push(ecpt.tables[choice[b]].clone());
                }
            }
        }
        BayesianNetwork::new(net.variables().to_vec(), cpts)
            .expect("instantiating a valid credal network yields a valid sharp network")
    }
}

/// Updates a credal network by the engine chosen in `cfg`: `auto` takes the
/// oracle while its enumeration stays under `oracle::ENUMERATION_CAP`, then
/// interval propagation on binary polytrees, then coordinate descent.
pub fn cn_update(net: &CredalNetwork, q: &Query, cfg: &EngineConfig) -> Result<IntervalPosterior> {
    cfg.check()?;
    q.check(|i| net.cardinality(i))?;
    match cfg.method {
        MethodChoice::Oracle => oracle::oracle_update(net, q, oracle::ENUMERATION_CAP),
        MethodChoice::TwoU => two_u::two_u_update(net, q),
        MethodChoice::Approxlp => approxlp::approxlp_update(net, q, cfg),
        MethodChoice::Auto => {
            let space = ChoiceSpace::new(net)?;
            if space
                .combinations()
                .is_some_and(|n| n <= oracle::ENUMERATION_CAP)
            {
                return oracle::oracle_update(net, q, oracle::ENUMERATION_CAP);
            }
            if net.is_binary() && net.is_polytree() {
                match two_u::two_u_update(net, q) {
                    Ok(ip) => return Ok(ip),
                    Err(Error::Precondition(_)) => {}
                    Err(e) => return Err(e),
                }
            }
            approxlp::approxlp_update(net, q, cfg)
        }
    }
}

/// Posterior bounds on `target` under interval likelihoods: absorbs the
/// evidence through an auxiliary child and updates the resulting one-credal-
/// node network.
pub fn cve_update(
    net: &BayesianNetwork,
    cve: &crate::evidence::CredalVirtualEvidence,
    target: &str,
    cfg: &EngineConfig,
) -> Result<IntervalPosterior> {
    let aug = crate::evidence::cve_augment(net, cve)?;
    let t = aug
        .net
        .node(target)
        .ok_or_else(|| Error::InvalidEvidence(format!("unknown variable {target:?}")))?;
    let q = Query {
        target: t,
        hard_evidence: aug.observe.iter().copied().collect::<HashMap<_, _>>(),
    };
    cn_update(&aug.net, &q, cfg)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{Ccpt, CredalRow, CredalSet, IntervalCs, Variable};

    #[test]
    fn choice_space_orders_blocks_by_node_then_row() {
        let a = Variable::binary("A", "a", "na").unwrap();
        let b = Variable::binary("B", "b", "nb").unwrap();
        let models = vec![
            NodeModel::Credal(Ccpt {
                child: "A".into(),
                parents: vec![],
                rows: vec![CredalRow::Interval(
                    IntervalCs::new(vec![0.2, 0.4], vec![0.6, 0.8]).unwrap(),
                )],
            }),
            NodeModel::Credal(Ccpt {
                child: "B".into(),
                parents: vec!["A".into()],
                rows: vec![
                    CredalRow::Set(CredalSet::sharp(Pmf::new(vec![0.5, 0.5]).unwrap()).unwrap()),
                    CredalRow::Interval(IntervalCs::new(vec![0.1, 0.3], vec![0.7, 0.9]).unwrap()),
                ],
            }),
        ];
        let net = CredalNetwork::new(vec![a, b], models).unwrap();
        let space = ChoiceSpace::new(&net).unwrap();
        assert_eq!(space.blocks.len(), 3);
        assert_eq!(space.counts(), vec![2, 1, 2]);
        assert_eq!(space.combinations(), Some(4));
        assert_eq!(
            space.blocks[0].source,
            BlockSource::Row { node: 0, row: 0 }
        );
        assert_eq!(
            space.blocks[2].source,
            BlockSource::Row { node: 1, row: 1 }
        );
    }

    #[test]
    fn instantiate_selects_vertices() {
        let a = Variable::binary("A", "a", "na").unwrap();
        let models = vec![NodeModel::Credal(Ccpt {
            child: "A".into(),
            parents: vec![],
            rows: vec![CredalRow::Interval(
                IntervalCs::new(vec![0.2, 0.4], vec![0.6, 0.8]).unwrap(),
            )],
        })];
        let net = CredalNetwork::new(vec![a], models).unwrap();
        let space = ChoiceSpace::new(&net).unwrap();
        let bn0 = space.instantiate(&net, &[0]);
        let bn1 = space.instantiate(&net, &[1]);
        let mut firsts = vec![bn0.cpt(0).rows[0][0], bn1.cpt(0).rows[0][0]];
        firsts.sort_by(f64::total_cmp);
        assert_eq!(firsts, vec![0.2, 0.6]);
    }
}
