use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result, Violation};
use crate::model::tables::{Ccpt, Ecpt};
use crate::model::{Cpt, Variable};

/// The local model attached to one network node.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum NodeModel {
    /// A single conditional probability table.
    Sharp(Cpt),
    /// A credal set of rows per parent configuration.
    Credal(Ccpt),
    /// An explicit finite list of candidate tables.
    Extensive(Ecpt),
}

impl NodeModel {
    pub fn child(&self) -> &str {
        match self {
            NodeModel::Sharp(t) => &t.child,
            NodeModel::Credal(t) => &t.child,
            NodeModel::Extensive(t) => &t.child,
        }
    }

    pub fn parents(&self) -> &[String] {
        match self {
            NodeModel::Sharp(t) => &t.parents,
            NodeModel::Credal(t) => &t.parents,
            NodeModel::Extensive(t) => &t.parents,
        }
    }

    pub fn is_sharp(&self) -> bool {
        matches!(self, NodeModel::Sharp(_))
    }
}

/// A credal network: a DAG over discrete variables where each node carries a
/// sharp, credal, or extensive conditional table. Arcs are implied by the
/// tables' parent lists.
#[derive(Debug, Clone, PartialEq)]
pub struct CredalNetwork {
    variables: Vec<Variable>,
    models: Vec<NodeModel>,
    /// Parent node indices, aligned with `variables`.
    parents: Vec<Vec<usize>>,
    index: HashMap<String, usize>,
    topo: Vec<usize>,
}

/// A Bayesian network: the all-sharp special case, kept as its own type
/// because exact inference only makes sense there.
#[derive(Debug, Clone, PartialEq)]
pub struct BayesianNetwork {
    net: CredalNetwork,
}

/// Checks every structural invariant and reports all violations at once:
/// unique names, known parents, per-node table shape, row normalization,
/// and acyclicity.
pub fn validate_network(variables: &[Variable], models: &[NodeModel]) -> Vec<Violation> {
    let mut out = Vec::new();
    let mut index = HashMap::new();
    for (i, v) in variables.iter().enumerate() {
        out.extend(v.violations());
        if index.insert(v.name.clone(), i).is_some() {
            out.push(Violation::new(&v.name, "duplicate variable name"));
        }
    }

    let mut covered = vec![false; variables.len()];
    for m in models {
        let Some(&child) = index.get(m.child()) else {
            out.push(Violation::new(m.child(), "table references unknown variable"));
            continue;
        };
        if covered[child] {
            out.push(Violation::new(m.child(), "variable has more than one table"));
            continue;
        }
        covered[child] = true;
        let mut parent_cards = Vec::new();
        let mut ok = true;
        for p in m.parents() {
            match index.get(p) {
                Some(&pi) if pi != child => parent_cards.push(variables[pi].cardinality()),
                Some(_) => {
                    out.push(Violation::new(m.child(), "variable cannot be its own parent"));
                    ok = false;
                }
                None => {
                    out.push(Violation::new(
                        m.child(),
                        format!("unknown parent {p:?}"),
                    ));
                    ok = false;
                }
            }
        }
        if ok {
            let card = variables[child].cardinality();
            out.extend(match m {
                NodeModel::Sharp(t) => t.violations(card, &parent_cards),
                NodeModel::Credal(t) => t.violations(card, &parent_cards),
                NodeModel::Extensive(t) => t.violations(card, &parent_cards),
            });
        }
    }
    for (i, &c) in covered.iter().enumerate() {
        if !c {
            out.push(Violation::new(&variables[i].name, "variable has no table"));
        }
    }

    if out.is_empty() {
        // Structure is sound; check acyclicity via Kahn's algorithm.
        let parents: Vec<Vec<usize>> = models
            .iter()
            .map(|m| m.parents().iter().map(|p| index[p]).collect())
            .collect();
        let order: HashMap<&str, usize> = models
            .iter()
            .enumerate()
            .map(|(i, m)| (m.child(), i))
            .collect();
        let aligned: Vec<&Vec<usize>> = variables
            .iter()
            .map(|v| &parents[order[v.name.as_str()]])
            .collect();
        if toposort(&aligned).is_none() {
            out.push(Violation::global("arcs form a directed cycle"));
        }
    }
    out
}

/// Kahn's algorithm over parent lists; `None` on a cycle.
fn toposort<P: AsRef<[usize]>>(parents: &[P]) -> Option<Vec<usize>> {
    let n = parents.len();
    let mut remaining: Vec<usize> = parents.iter().map(|p| p.as_ref().len()).collect();
    let mut children = vec![Vec::new(); n];
    for (c, ps) in parents.iter().enumerate() {
        for &p in ps.as_ref() {
            children[p].push(c);
        }
    }
    let mut queue: Vec<usize> = (0..n).filter(|&i| remaining[i] == 0).collect();
    let mut order = Vec::with_capacity(n);
    while let Some(node) = queue.pop() {
        order.push(node);
        for &c in &children[node] {
            remaining[c] -= 1;
            if remaining[c] == 0 {
                queue.push(c);
            }
        }
    }
    (order.len() == n).then_some(order)
}

impl CredalNetwork {
    pub fn new(variables: Vec<Variable>, models: Vec<NodeModel>) -> Result<Self> {
        let violations = validate_network(&variables, &models);
        if !violations.is_empty() {
            return Err(Error::Validation(violations));
        }
        let index: HashMap<String, usize> = variables
            .iter()
            .enumerate()
            .map(|(i, v)| (v.name.clone(), i))
            .collect();
        // Align models with variable order.
        let mut slots: Vec<Option<NodeModel>> = vec![None; variables.len()];
        for m in models {
            let i = index[m.child()];
            slots[i] = Some(m);
        }
        let models: Vec<NodeModel> = slots.into_iter().map(Option::unwrap).collect();
        let parents: Vec<Vec<usize>> = models
            .iter()
            .map(|m| m.parents().iter().map(|p| index[p]).collect())
            .collect();
        let topo = toposort(&parents).expect("validated networks are acyclic");
        Ok(CredalNetwork {
            variables,
            models,
            parents,
            index,
            topo,
        })
    }

    pub fn len(&self) -> usize {
        self.variables.len()
    }

    pub fn is_empty(&self) -> bool {
        self.variables.is_empty()
    }

    pub fn variables(&self) -> &[Variable] {
        &self.variables
    }

    pub fn variable(&self, i: usize) -> &Variable {
        &self.variables[i]
    }

    pub fn models(&self) -> &[NodeModel] {
        &self.models
    }

    pub fn model(&self, i: usize) -> &NodeModel {
        &self.models[i]
    }

    pub fn parents(&self, i: usize) -> &[usize] {
        &self.parents[i]
    }

    pub fn parent_cards(&self, i: usize) -> Vec<usize> {
        self.parents[i]
            .iter()
            .map(|&p| self.variables[p].cardinality())
            .collect()
    }

    pub fn cardinality(&self, i: usize) -> usize {
        self.variables[i].cardinality()
    }

    /// Node index by variable name.
    pub fn node(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    /// Node indices in a topological order (parents before children).
    pub fn topo_order(&self) -> &[usize] {
        &self.topo
    }

    /// Indices of nodes whose local model is not a single table.
    pub fn credal_nodes(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| !self.models[i].is_sharp()).collect()
    }

    /// True iff the underlying undirected graph has no cycle.
    pub fn is_polytree(&self) -> bool {
        // Union-find over undirected arcs; a repeated root means a cycle.
        let mut root: Vec<usize> = (0..self.len()).collect();
        fn find(root: &mut Vec<usize>, mut i: usize) -> usize {
            while root[i] != i {
                root[i] = root[root[i]];
                i = root[i];
            }
            i
        }
        for c in 0..self.len() {
            for &p in &self.parents[c] {
                let (a, b) = (find(&mut root, c), find(&mut root, p));
                if a == b {
                    return false;
                }
                root[a] = b;
            }
        }
        true
    }

    /// True iff every variable is binary.
    pub fn is_binary(&self) -> bool {
        self.variables.iter().all(|v| v.is_binary())
    }

    /// Downgrades to a Bayesian network if every node is sharp.
    pub fn as_bayesian(&self) -> Option<BayesianNetwork> {
        self.models
            .iter()
            .all(NodeModel::is_sharp)
            .then(|| BayesianNetwork { net: self.clone() })
    }
}

impl BayesianNetwork {
    pub fn new(variables: Vec<Variable>, cpts: Vec<Cpt>) -> Result<Self> {
        let net = CredalNetwork::new(variables, cpts.into_iter().map(NodeModel::Sharp).collect())?;
        Ok(BayesianNetwork { net })
    }

    pub fn cpt(&self, i: usize) -> &Cpt {
        match self.net.model(i) {
            NodeModel::Sharp(t) => t,
            _ => unreachable!("Bayesian networks hold only sharp tables"),
        }
    }

    /// The general-network view (shared graph accessors).
    pub fn as_credal(&self) -> &CredalNetwork {
        &self.net
    }

    pub fn into_credal(self) -> CredalNetwork {
        self.net
    }

    /// Rebuilds with one node's table replaced and/or nodes appended.
    /// Used by evidence absorption to graft auxiliary children.
    pub fn with_nodes(&self, extra_vars: Vec<Variable>, extra_models: Vec<NodeModel>) -> Result<CredalNetwork> {
        let mut variables = self.net.variables.clone();
        variables.extend(extra_vars);
        let mut models = self.net.models.clone();
        models.extend(extra_models);
        CredalNetwork::new(variables, models)
    }

    pub fn len(&self) -> usize {
        self.net.len()
    }

    pub fn is_empty(&self) -> bool {
        self.net.is_empty()
    }

    pub fn variables(&self) -> &[Variable] {
        self.net.variables()
    }

    pub fn variable(&self, i: usize) -> &Variable {
        self.net.variable(i)
    }

    pub fn parents(&self, i: usize) -> &[usize] {
        self.net.parents(i)
    }

    pub fn parent_cards(&self, i: usize) -> Vec<usize> {
        self.net.parent_cards(i)
    }

    pub fn cardinality(&self, i: usize) -> usize {
        self.net.cardinality(i)
    }

    pub fn node(&self, name: &str) -> Option<usize> {
        self.net.node(name)
    }

    pub fn topo_order(&self) -> &[usize] {
        self.net.topo_order()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::Pmf;

    fn chain() -> (Vec<Variable>, Vec<Cpt>) {
        let a = Variable::binary("A", "a", "na").unwrap();
        let b = Variable::binary("B", "b", "nb").unwrap();
        let cpt_a = Cpt::root("A", Pmf::new(vec![0.3, 0.7]).unwrap());
        let cpt_b = Cpt::new(
            "B",
            &["A"],
            vec![
                Pmf::new(vec![0.9, 0.1]).unwrap(),
                Pmf::new(vec![0.2, 0.8]).unwrap(),
            ],
        );
        (vec![a, b], vec![cpt_a, cpt_b])
    }

    #[test]
    fn well_formed_chain_validates() {
        let (vars, cpts) = chain();
        let models: Vec<NodeModel> = cpts.into_iter().map(NodeModel::Sharp).collect();
        assert!(validate_network(&vars, &models).is_empty());
    }

    #[test]
    fn bad_row_sum_is_reported() {
        let (vars, mut cpts) = chain();
        cpts[1].rows[0] = Pmf(vec![0.5, 0.4]);
        let models: Vec<NodeModel> = cpts.into_iter().map(NodeModel::Sharp).collect();
        let v = validate_network(&vars, &models);
        assert_eq!(v.len(), 1);
        assert_eq!(v[0].node.as_deref(), Some("B"));
    }

    #[test]
    fn two_cycle_is_reported() {
        let a = Variable::binary("A", "a", "na").unwrap();
        let b = Variable::binary("B", "b", "nb").unwrap();
        let rows = || {
            vec![
                Pmf::new(vec![0.9, 0.1]).unwrap(),
                Pmf::new(vec![0.2, 0.8]).unwrap(),
            ]
        };
        let models = vec![
            NodeModel::Sharp(Cpt::new("A", &["B"], rows())),
            NodeModel::Sharp(Cpt::new("B", &["A"], rows())),
        ];
        let v = validate_network(&[a, b], &models);
        assert_eq!(v.len(), 1);
        assert!(v[0].rule.contains("cycle"));
    }

    #[test]
    fn polytree_and_loopy_detection() {
        let (vars, cpts) = chain();
        let bn = BayesianNetwork::new(vars, cpts).unwrap();
        assert!(bn.as_credal().is_polytree());
        assert!(bn.as_credal().is_binary());

        // Diamond A -> B, A -> C, B/C -> D: directed-acyclic but loopy.
        let mk = |n: &str| Variable::binary(n, "t", "f").unwrap();
        let prior = Pmf::new(vec![0.5, 0.5]).unwrap();
        let rows2 = vec![
            Pmf::new(vec![0.9, 0.1]).unwrap(),
            Pmf::new(vec![0.2, 0.8]).unwrap(),
        ];
        let rows4 = vec![
            Pmf::new(vec![0.9, 0.1]).unwrap(),
            Pmf::new(vec![0.8, 0.2]).unwrap(),
            Pmf::new(vec![0.3, 0.7]).unwrap(),
            Pmf::new(vec![0.1, 0.9]).unwrap(),
        ];
        let diamond = BayesianNetwork::new(
            vec![mk("A"), mk("B"), mk("C"), mk("D")],
            vec![
                Cpt::root("A", prior),
                Cpt::new("B", &["A"], rows2.clone()),
                Cpt::new("C", &["A"], rows2),
                Cpt::new("D", &["B", "C"], rows4),
            ],
        )
        .unwrap();
        assert!(!diamond.as_credal().is_polytree());
    }

    #[test]
    fn topo_order_respects_parents() {
        let (vars, cpts) = chain();
        let bn = BayesianNetwork::new(vars, cpts).unwrap();
        let topo = bn.topo_order();
        let pos_a = topo.iter().position(|&i| i == bn.node("A").unwrap()).unwrap();
        let pos_b = topo.iter().position(|&i| i == bn.node("B").unwrap()).unwrap();
        assert!(pos_a < pos_b);
    }
}
