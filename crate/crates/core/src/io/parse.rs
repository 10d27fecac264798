//! Reading network and evidence documents into validated models.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result, Violation};
use crate::evidence::{
    idm_to_cve, CredalSoftEvidence, CredalVirtualEvidence, Evidence, IdmCounts,
    IncompleteObservation, SoftEvidence, VirtualEvidence,
};
use crate::io::documents::{
    CredalRowDoc, EvidenceDocument, EvidenceItem, NetworkDocument, OpinionDoc, VariableDecl,
};
use crate::model::{
    BayesianNetwork, Ccpt, Cpt, CredalNetwork, CredalRow, CredalSet, Ecpt, IntervalCs, NodeModel,
    Pmf, Variable,
};
use crate::pooling::{Opinion, OpinionSet};

use super::documents::sig12;

/// A parsed network file: sharp if every local model is a plain CPT,
/// credal otherwise.
#[derive(Debug, Clone)]
pub enum ParsedNetwork {
    Sharp(BayesianNetwork),
    Credal(CredalNetwork),
}

impl ParsedNetwork {
    /// Both cases viewed as a credal network (a BN is the singleton case).
    pub fn as_credal(&self) -> &CredalNetwork {
        match self {
            ParsedNetwork::Sharp(bn) => bn.as_credal(),
            ParsedNetwork::Credal(cn) => cn,
        }
    }

    pub fn is_sharp(&self) -> bool {
        matches!(self, ParsedNetwork::Sharp(_))
    }
}

/// Parses and fully validates a network document.
///
/// Syntax and schema problems come back as [`Error::Parse`] with serde's
/// line/column diagnostics; semantic problems as [`Error::Validation`] with
/// one violation per broken rule, each naming the offending node.
pub fn parse_network(text: &str) -> Result<ParsedNetwork> {
    let doc: NetworkDocument =
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    network_from_document(&doc)
}

/// Builds a network from an already-deserialized document.
pub fn network_from_document(doc: &NetworkDocument) -> Result<ParsedNetwork> {
    if doc.version != "1" {
        return Err(Error::Parse(format!(
            "unsupported document version {:?}, expected \"1\"",
            doc.version
        )));
    }

    let mut violations = Vec::new();
    let declared: BTreeSet<&str> = doc.variables.iter().map(|v| v.name.as_str()).collect();

    // Every key in a model or parents map must name a declared variable.
    let key_sources: [(&str, Vec<&String>); 4] = [
        ("parents", doc.parents.keys().collect()),
        ("cpts", doc.cpts.keys().collect()),
        ("ccpts", doc.ccpts.keys().collect()),
        ("ecpts", doc.ecpts.keys().collect()),
    ];
    for (block, keys) in &key_sources {
        for key in keys {
            if !declared.contains(key.as_str()) {
                violations.push(Violation::new(
                    key.as_str(),
                    format!("{block} entry does not match any declared variable"),
                ));
            }
        }
    }
    for (child, parents) in &doc.parents {
        for p in parents {
            if !declared.contains(p.as_str()) {
                violations.push(Violation::new(
                    child,
                    format!("parent {p:?} is not a declared variable"),
                ));
            }
        }
    }

    // Exactly one local model per declared variable.
    for decl in &doc.variables {
        let n = &decl.name;
        let sources = usize::from(doc.cpts.contains_key(n))
            + usize::from(doc.ccpts.contains_key(n))
            + usize::from(doc.ecpts.contains_key(n));
        match sources {
            1 => {}
            0 => violations.push(Violation::new(
                n,
                "no local model; add a cpts, ccpts, or ecpts entry",
            )),
            _ => violations.push(Violation::new(
                n,
                "more than one local model; use exactly one of cpts, ccpts, ecpts",
            )),
        }
    }
    if !violations.is_empty() {
        return Err(Error::Validation(violations));
    }

    let mut variables = Vec::with_capacity(doc.variables.len());
    for VariableDecl { name, states } in &doc.variables {
        let labels: Vec<&str> = states.iter().map(String::as_str).collect();
        match Variable::new(name, &labels) {
            Ok(v) => variables.push(v),
            Err(Error::Validation(vs)) => {
                violations.extend(vs);
                variables.push(Variable {
                    name: name.clone(),
                    states: states.clone(),
                });
            }
            Err(e) => return Err(e),
        }
    }

    let empty: Vec<String> = Vec::new();
    let mut models = Vec::with_capacity(doc.variables.len());
    for decl in &doc.variables {
        let name = &decl.name;
        let parents = doc.parents.get(name).unwrap_or(&empty).clone();
        if let Some(rows) = doc.cpts.get(name) {
            models.push(NodeModel::Sharp(Cpt {
                child: name.clone(),
                parents,
                rows: rows.iter().map(|r| Pmf(r.clone())).collect(),
            }));
        } else if let Some(rows) = doc.ccpts.get(name) {
            let mut parsed_rows = Vec::with_capacity(rows.len());
            for (i, row) in rows.iter().enumerate() {
                match credal_row(row) {
                    Ok(r) => parsed_rows.push(r),
                    Err(msg) => {
                        violations.push(Violation::new(name, format!("credal row {i}: {msg}")));
                        // Placeholder so shape checks can continue.
                        parsed_rows.push(CredalRow::Interval(IntervalCs {
                            lower: vec![0.0; decl.states.len()],
                            upper: vec![1.0; decl.states.len()],
                        }));
                    }
                }
            }
            models.push(NodeModel::Credal(Ccpt {
                child: name.clone(),
                parents,
                rows: parsed_rows,
            }));
        } else {
            let tables = doc.ecpts.get(name).expect("model source checked above");
            models.push(NodeModel::Extensive(Ecpt {
                child: name.clone(),
                parents: parents.clone(),
                tables: tables
                    .iter()
                    .map(|table| Cpt {
                        child: name.clone(),
                        parents: parents.clone(),
                        rows: table.iter().map(|r| Pmf(r.clone())).collect(),
                    })
                    .collect(),
            }));
        }
    }
    if !violations.is_empty() {
        return Err(Error::Validation(violations));
    }

    let net = CredalNetwork::new(variables, models)?;
    Ok(match net.as_bayesian() {
        Some(bn) => ParsedNetwork::Sharp(bn),
        None => ParsedNetwork::Credal(net),
    })
}

fn credal_row(doc: &CredalRowDoc) -> std::result::Result<CredalRow, String> {
    match (&doc.vertices, &doc.lower, &doc.upper) {
        (Some(vs), None, None) => {
            let points = vs.iter().map(|v| Pmf(v.clone())).collect();
            CredalSet::new(points)
                .map(CredalRow::Set)
                .map_err(|e| e.to_string())
        }
        (None, Some(lo), Some(hi)) => Ok(CredalRow::Interval(IntervalCs {
            lower: lo.clone(),
            upper: hi.clone(),
        })),
        _ => Err("give either vertices or both lower and upper bounds".into()),
    }
}

/// Renders a network back into document form, with probabilities rounded to
/// 12 significant digits.
pub fn network_to_document(net: &CredalNetwork) -> NetworkDocument {
    let mut doc = NetworkDocument {
        version: "1".into(),
        variables: net
            .variables()
            .iter()
            .map(|v| VariableDecl {
                name: v.name.clone(),
                states: v.states.clone(),
            })
            .collect(),
        parents: BTreeMap::new(),
        cpts: BTreeMap::new(),
        ccpts: BTreeMap::new(),
        ecpts: BTreeMap::new(),
    };
    let round = |row: &Pmf| row.iter().copied().map(sig12).collect::<Vec<f64>>();
    for i in 0..net.len() {
        let name = net.variable(i).name.clone();
        let model = net.model(i);
        if !model.parents().is_empty() {
            doc.parents.insert(name.clone(), model.parents().to_vec());
        }
        match model {
            NodeModel::Sharp(cpt) => {
                doc.cpts.insert(name, cpt.rows.iter().map(round).collect());
            }
            NodeModel::Credal(ccpt) => {
                let rows = ccpt
                    .rows
                    .iter()
                    .map(|row| match row {
                        CredalRow::Set(cs) => CredalRowDoc {
                            lower: None,
                            upper: None,
                            vertices: Some(cs.vertices().iter().map(&round).collect()),
                        },
                        CredalRow::Interval(ics) => CredalRowDoc {
                            lower: Some(ics.lower.iter().copied().map(sig12).collect()),
                            upper: Some(ics.upper.iter().copied().map(sig12).collect()),
                            vertices: None,
                        },
                    })
                    .collect();
                doc.ccpts.insert(name, rows);
            }
            NodeModel::Extensive(ecpt) => {
                let tables = ecpt
                    .tables
                    .iter()
                    .map(|t| t.rows.iter().map(&round).collect())
                    .collect();
                doc.ecpts.insert(name, tables);
            }
        }
    }
    doc
}

/// Parses an evidence document against a network, resolving state labels and
/// expanding count-based items into interval likelihoods.
pub fn parse_evidence(text: &str, net: &CredalNetwork) -> Result<Vec<Evidence>> {
    let doc: EvidenceDocument =
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    evidence_from_document(&doc, net)
}

/// Converts an already-deserialized evidence document.
pub fn evidence_from_document(doc: &EvidenceDocument, net: &CredalNetwork) -> Result<Vec<Evidence>> {
    doc.0.iter().map(|item| evidence_item(item, net)).collect()
}

fn evidence_item(item: &EvidenceItem, net: &CredalNetwork) -> Result<Evidence> {
    match item {
        EvidenceItem::Hard { variable, state } => {
            let var = find_var(net, variable)?;
            let idx = var.state_index(state).ok_or_else(|| {
                Error::InvalidEvidence(format!("{variable}: unknown state {state:?}"))
            })?;
            Ok(Evidence::Hard {
                variable: variable.clone(),
                state: idx,
            })
        }
        EvidenceItem::Virtual {
            variable,
            likelihoods,
        } => {
            let var = find_var(net, variable)?;
            let ve = VirtualEvidence {
                variable: variable.clone(),
                likelihoods: by_state(var, likelihoods, "likelihoods")?,
            };
            ve.check()?;
            Ok(Evidence::Virtual(ve))
        }
        EvidenceItem::Soft { variable, pmf } => {
            let var = find_var(net, variable)?;
            let values = by_state(var, pmf, "pmf")?;
            let pmf = Pmf::new(values).map_err(|e| ev_err(variable, e))?;
            Ok(Evidence::Soft(SoftEvidence {
                variable: variable.clone(),
                pmf,
            }))
        }
        EvidenceItem::CredalVirtual {
            variable,
            lower,
            upper,
        } => {
            let var = find_var(net, variable)?;
            let lo = by_state(var, lower, "lower")?;
            let hi = by_state(var, upper, "upper")?;
            Ok(Evidence::CredalVirtual(CredalVirtualEvidence::new(
                variable.clone(),
                lo,
                hi,
            )?))
        }
        EvidenceItem::CredalSoft { variable, vertices } => {
            let var = find_var(net, variable)?;
            let mut points = Vec::with_capacity(vertices.len());
            for v in vertices {
                let values = by_state(var, v, "vertex")?;
                points.push(Pmf::new(values).map_err(|e| ev_err(variable, e))?);
            }
            let cs = CredalSet::new(points).map_err(|e| ev_err(variable, e))?;
            Ok(Evidence::CredalSoft(CredalSoftEvidence {
                variable: variable.clone(),
                cs,
            }))
        }
        EvidenceItem::Vacuous { variable } => {
            find_var(net, variable)?;
            Ok(Evidence::Vacuous {
                variable: variable.clone(),
            })
        }
        EvidenceItem::Incomplete { variable, possible } => {
            let var = find_var(net, variable)?;
            let mut indices = Vec::with_capacity(possible.len());
            for label in possible {
                indices.push(var.state_index(label).ok_or_else(|| {
                    Error::InvalidEvidence(format!("{variable}: unknown state {label:?}"))
                })?);
            }
            let obs = IncompleteObservation {
                variable: variable.clone(),
                possible: indices,
            };
            obs.check(var.cardinality())?;
            Ok(Evidence::Incomplete(obs))
        }
        EvidenceItem::Idm {
            variable,
            positives,
            negatives,
            counts,
            s,
        } => {
            let var = find_var(net, variable)?;
            let pairs = match (positives, negatives, counts) {
                (Some(p), Some(ng), None) => {
                    if var.cardinality() != 2 {
                        return Err(Error::InvalidEvidence(format!(
                            "{variable}: positives/negatives shorthand needs a binary variable; give per-state counts instead"
                        )));
                    }
                    vec![(p.n, p.total), (ng.n, ng.total)]
                }
                (None, None, Some(map)) => {
                    let mut pairs = Vec::with_capacity(var.cardinality());
                    for key in map.keys() {
                        if var.state_index(key).is_none() {
                            return Err(Error::InvalidEvidence(format!(
                                "{variable}: unknown state {key:?} in counts"
                            )));
                        }
                    }
                    for state in &var.states {
                        let pair = map.get(state).ok_or_else(|| {
                            Error::InvalidEvidence(format!(
                                "{variable}: counts is missing state {state:?}"
                            ))
                        })?;
                        pairs.push((pair.n, pair.total));
                    }
                    pairs
                }
                _ => {
                    return Err(Error::InvalidEvidence(format!(
                        "{variable}: give either positives and negatives, or a counts map"
                    )))
                }
            };
            let idm = IdmCounts {
                variable: variable.clone(),
                counts: pairs,
                s: *s,
            };
            idm.check()?;
            Ok(Evidence::CredalVirtual(idm_to_cve(&idm)?))
        }
        EvidenceItem::OpinionPool {
            variable,
            opinions,
            weights,
        } => {
            let var = find_var(net, variable)?;
            let mut parsed = Vec::with_capacity(opinions.len());
            for (j, op) in opinions.iter().enumerate() {
                parsed.push(opinion(var, op).map_err(|msg| {
                    Error::InvalidEvidence(format!("{variable}: opinion {j}: {msg}"))
                })?);
            }
            let pool = OpinionSet::new(variable.clone(), parsed, weights.clone())
                .map_err(|e| ev_err(variable, e))?;
            Ok(Evidence::Pool(pool))
        }
    }
}

fn opinion(var: &Variable, doc: &OpinionDoc) -> std::result::Result<Opinion, String> {
    match (&doc.pmf, &doc.vertices, &doc.lower, &doc.upper) {
        (Some(map), None, None, None) => {
            let values = by_state(var, map, "pmf").map_err(|e| e.to_string())?;
            Ok(Opinion::Sharp(Pmf::new(values).map_err(|e| e.to_string())?))
        }
        (None, Some(vs), None, None) => {
            let mut points = Vec::with_capacity(vs.len());
            for v in vs {
                let values = by_state(var, v, "vertex").map_err(|e| e.to_string())?;
                points.push(Pmf::new(values).map_err(|e| e.to_string())?);
            }
            Ok(Opinion::Credal(
                CredalSet::new(points).map_err(|e| e.to_string())?,
            ))
        }
        (None, None, Some(lo), Some(hi)) => {
            let lower = by_state(var, lo, "lower").map_err(|e| e.to_string())?;
            let upper = by_state(var, hi, "upper").map_err(|e| e.to_string())?;
            let ics = IntervalCs::new(lower, upper).map_err(|e| e.to_string())?;
            Ok(Opinion::Credal(
                CredalRow::Interval(ics)
                    .to_vertex_set()
                    .map_err(|e| e.to_string())?,
            ))
        }
        _ => Err("give exactly one of pmf, vertices, or lower and upper bounds".into()),
    }
}

fn find_var<'a>(net: &'a CredalNetwork, name: &str) -> Result<&'a Variable> {
    net.node(name)
        .map(|i| net.variable(i))
        .ok_or_else(|| Error::InvalidEvidence(format!("unknown variable {name:?}")))
}

/// Reads a state-keyed map into declaration order, requiring every state to
/// appear exactly once.
fn by_state(var: &Variable, map: &BTreeMap<String, f64>, what: &str) -> Result<Vec<f64>> {
    for key in map.keys() {
        if var.state_index(key).is_none() {
            return Err(Error::InvalidEvidence(format!(
                "{}: unknown state {key:?} in {what}",
                var.name
            )));
        }
    }
    var.states
        .iter()
        .map(|s| {
            map.get(s).copied().ok_or_else(|| {
                Error::InvalidEvidence(format!("{}: {what} is missing state {s:?}", var.name))
            })
        })
        .collect()
}

/// Rewraps a constructor error as invalid evidence naming the variable.
fn ev_err(variable: &str, e: Error) -> Error {
    match e {
        Error::Precondition(msg) | Error::Infeasible(msg) => {
            Error::InvalidEvidence(format!("{variable}: {msg}"))
        }
        other => other,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const TRAFFIC_LIGHT: &str = r#"{
        "version": "1",
        "variables": [{"name": "X", "states": ["g", "y", "r"]}],
        "cpts": {"X": [[0.8, 0.0, 0.2]]}
    }"#;

    #[test]
    fn single_node_document_parses_sharp() {
        let parsed = parse_network(TRAFFIC_LIGHT).unwrap();
        assert!(parsed.is_sharp());
        let net = parsed.as_credal();
        assert_eq!(net.len(), 1);
        assert_eq!(net.variable(0).states, ["g", "y", "r"]);
        match net.model(0) {
            NodeModel::Sharp(cpt) => assert_eq!(cpt.rows[0].0, [0.8, 0.0, 0.2]),
            other => panic!("expected sharp model, got {other:?}"),
        }
    }

    #[test]
    fn bad_row_sum_names_node_and_row() {
        let text = r#"{
            "version": "1",
            "variables": [{"name": "A", "states": ["0", "1"]}],
            "cpts": {"A": [[0.5, 0.4]]}
        }"#;
        let err = parse_network(text).unwrap_err();
        let Error::Validation(violations) = err else {
            panic!("expected validation error, got {err:?}");
        };
        assert!(violations.iter().any(|v| {
            v.node.as_deref() == Some("A") && v.rule.contains("row 0")
        }));
    }

    #[test]
    fn ccpt_block_yields_a_credal_network() {
        let text = r#"{
            "version": "1",
            "variables": [
                {"name": "A", "states": ["0", "1"]},
                {"name": "B", "states": ["0", "1"]}
            ],
            "parents": {"B": ["A"]},
            "cpts": {"B": [[0.9, 0.1], [0.3, 0.7]]},
            "ccpts": {"A": [{"lower": [0.2, 0.3], "upper": [0.7, 0.8]}]}
        }"#;
        let parsed = parse_network(text).unwrap();
        assert!(!parsed.is_sharp());
        assert_eq!(parsed.as_credal().credal_nodes(), vec![0]);
    }

    #[test]
    fn unknown_field_is_a_parse_error() {
        let text = r#"{"version": "1", "variables": [], "cpt": {}}"#;
        assert!(matches!(parse_network(text), Err(Error::Parse(_))));
    }

    #[test]
    fn wrong_version_is_rejected() {
        let text = r#"{"version": "2", "variables": []}"#;
        assert!(matches!(parse_network(text), Err(Error::Parse(msg)) if msg.contains("version")));
    }

    #[test]
    fn missing_and_doubled_models_are_flagged() {
        let text = r#"{
            "version": "1",
            "variables": [
                {"name": "A", "states": ["0", "1"]},
                {"name": "B", "states": ["0", "1"]}
            ],
            "cpts": {"A": [[0.5, 0.5]]},
            "ccpts": {"A": [{"lower": [0, 0], "upper": [1, 1]}]}
        }"#;
        let Error::Validation(violations) = parse_network(text).unwrap_err() else {
            panic!("expected validation error");
        };
        assert!(violations.iter().any(|v| v.node.as_deref() == Some("A")
            && v.rule.contains("more than one")));
        assert!(violations.iter().any(|v| v.node.as_deref() == Some("B")
            && v.rule.contains("no local model")));
    }

    #[test]
    fn model_entry_for_undeclared_variable_is_flagged() {
        let text = r#"{
            "version": "1",
            "variables": [{"name": "A", "states": ["0", "1"]}],
            "cpts": {"A": [[0.5, 0.5]], "Z": [[1.0, 0.0]]}
        }"#;
        let Error::Validation(violations) = parse_network(text).unwrap_err() else {
            panic!("expected validation error");
        };
        assert!(violations
            .iter()
            .any(|v| v.node.as_deref() == Some("Z") && v.rule.contains("declared")));
    }

    #[test]
    fn documents_round_trip_through_emission() {
        let text = r#"{
            "version": "1",
            "variables": [
                {"name": "A", "states": ["0", "1"]},
                {"name": "B", "states": ["0", "1"]},
                {"name": "C", "states": ["0", "1"]}
            ],
            "parents": {"B": ["A"], "C": ["A"]},
            "ccpts": {"A": [{"vertices": [[0.2, 0.8], [0.6, 0.4]]}]},
            "cpts": {"B": [[0.9, 0.1], [0.3, 0.7]]},
            "ecpts": {"C": [[[0.5, 0.5], [0.25, 0.75]], [[0.4, 0.6], [0.1, 0.9]]]}
        }"#;
        let net = parse_network(text).unwrap();
        let doc = network_to_document(net.as_credal());
        let reparsed = network_from_document(&doc).unwrap();
        let json = serde_json::to_string(&doc).unwrap();
        let doc2: NetworkDocument = serde_json::from_str(&json).unwrap();
        assert_eq!(doc, doc2);
        let doc3 = network_to_document(reparsed.as_credal());
        assert_eq!(doc, doc3);
    }

    fn traffic_net() -> CredalNetwork {
        parse_network(TRAFFIC_LIGHT).unwrap().as_credal().clone()
    }

    #[test]
    fn virtual_item_resolves_state_labels() {
        let net = traffic_net();
        let text = r#"[{"kind": "virtual", "variable": "X",
                        "likelihoods": {"g": 1, "y": 1, "r": 5}}]"#;
        let evidence = parse_evidence(text, &net).unwrap();
        match &evidence[0] {
            Evidence::Virtual(ve) => assert_eq!(ve.likelihoods, [1.0, 1.0, 5.0]),
            other => panic!("expected virtual evidence, got {other:?}"),
        }
    }

    #[test]
    fn unknown_state_is_invalid_evidence() {
        let net = traffic_net();
        let text = r#"[{"kind": "virtual", "variable": "X",
                        "likelihoods": {"g": 1, "y": 1, "blue": 5}}]"#;
        let err = parse_evidence(text, &net).unwrap_err();
        assert!(matches!(err, Error::InvalidEvidence(msg) if msg.contains("blue")));
    }

    #[test]
    fn missing_state_is_invalid_evidence() {
        let net = traffic_net();
        let text = r#"[{"kind": "soft", "variable": "X", "pmf": {"g": 0.5, "r": 0.5}}]"#;
        let err = parse_evidence(text, &net).unwrap_err();
        assert!(matches!(err, Error::InvalidEvidence(msg) if msg.contains("\"y\"")));
    }

    #[test]
    fn idm_shorthand_expands_to_interval_likelihoods() {
        let net = parse_network(
            r#"{
                "version": "1",
                "variables": [{"name": "D", "states": ["x", "not_x"]}],
                "cpts": {"D": [[0.5, 0.5]]}
            }"#,
        )
        .unwrap()
        .as_credal()
        .clone();
        let text = r#"[{"kind": "idm", "variable": "D",
                        "positives": {"n": 17, "N": 23},
                        "negatives": {"n": 3, "N": 17}, "s": 1}]"#;
        let evidence = parse_evidence(text, &net).unwrap();
        match &evidence[0] {
            Evidence::CredalVirtual(cve) => {
                assert!((cve.lower[0] - 17.0 / 24.0).abs() < 1e-15);
                assert!((cve.upper[0] - 18.0 / 24.0).abs() < 1e-15);
                assert!((cve.lower[1] - 3.0 / 18.0).abs() < 1e-15);
                assert!((cve.upper[1] - 4.0 / 18.0).abs() < 1e-15);
            }
            other => panic!("expected interval likelihoods, got {other:?}"),
        }
    }

    #[test]
    fn idm_shorthand_requires_binary_variable() {
        let net = traffic_net();
        let text = r#"[{"kind": "idm", "variable": "X",
                        "positives": {"n": 1, "N": 2},
                        "negatives": {"n": 1, "N": 2}, "s": 1}]"#;
        let err = parse_evidence(text, &net).unwrap_err();
        assert!(matches!(err, Error::InvalidEvidence(msg) if msg.contains("binary")));
    }

    #[test]
    fn opinion_pool_parses_mixed_opinions() {
        let net = parse_network(
            r#"{
                "version": "1",
                "variables": [{"name": "W", "states": ["a", "b"]}],
                "cpts": {"W": [[0.5, 0.5]]}
            }"#,
        )
        .unwrap()
        .as_credal()
        .clone();
        let text = r#"[{"kind": "opinion-pool", "variable": "W",
                        "opinions": [
                            {"pmf": {"a": 0.9, "b": 0.1}},
                            {"lower": {"a": 0.2, "b": 0.3}, "upper": {"a": 0.7, "b": 0.8}}
                        ],
                        "weights": [0.6, 0.4]}]"#;
        let evidence = parse_evidence(text, &net).unwrap();
        match &evidence[0] {
            Evidence::Pool(pool) => {
                assert_eq!(pool.len(), 2);
                assert!(pool.is_credal());
                assert_eq!(pool.weights, [0.6, 0.4]);
            }
            other => panic!("expected an opinion pool, got {other:?}"),
        }
    }

    #[test]
    fn hard_item_maps_label_to_index() {
        let net = traffic_net();
        let text = r#"[{"kind": "hard", "variable": "X", "state": "r"}]"#;
        let evidence = parse_evidence(text, &net).unwrap();
        assert!(matches!(evidence[0], Evidence::Hard { state: 2, .. }));
    }

    #[test]
    fn malformed_interval_bounds_are_rejected() {
        let net = traffic_net();
        let text = r#"[{"kind": "credal-virtual", "variable": "X",
                        "lower": {"g": 0.9, "y": 0.0, "r": 0.5},
                        "upper": {"g": 0.3, "y": 1.0, "r": 1.0}}]"#;
        assert!(matches!(
            parse_evidence(text, &net),
            Err(Error::InvalidEvidence(_))
        ));
    }
}
