//! The end-to-end query pipeline: parse, absorb, update, round.

use std::time::Instant;

use crate::bn::Query;
use crate::credal::{cn_update, EngineConfig, MethodChoice};
use crate::error::{Error, Result};
use crate::evidence::{absorb_all, Evidence};
use crate::io::documents::{sig12, ResultDocument, StateBounds};
use crate::io::parse::{parse_evidence, parse_network, ParsedNetwork};
use crate::model::CredalNetwork;

/// Attached to every answer computed under interval-valued evidence.
pub const BOX_WARNING: &str = "interval-valued evidence is absorbed as a likelihood box: each \
     state's bound varies independently, and the posterior bounds are extremes over that box";

/// One query against a network file, with optional evidence.
#[derive(Debug, Clone)]
pub struct QueryRequest<'a> {
    /// Network document text.
    pub network: &'a str,
    /// Evidence document text, if any.
    pub evidence: Option<&'a str>,
    /// Name of the query variable.
    pub target: &'a str,
    pub method: MethodChoice,
    pub seed: u64,
}

/// Runs a query end to end and returns the rounded result document.
///
/// A sharp network absorbs any mix of evidence kinds by grafting auxiliary
/// children; a network that is already credal only accepts hard evidence,
/// since its local models are not a single distribution to revise.
pub fn run_query(req: &QueryRequest) -> Result<ResultDocument> {
    let started = Instant::now();
    let parsed = parse_network(req.network)?;
    let evidence = match req.evidence {
        Some(text) => parse_evidence(text, parsed.as_credal())?,
        None => Vec::new(),
    };

    let mut warnings = Vec::new();
    let (net, observe): (CredalNetwork, Vec<(usize, usize)>) = match &parsed {
        ParsedNetwork::Sharp(bn) => {
            let absorbed = absorb_all(bn, &evidence)?;
            if evidence.iter().any(Evidence::is_credal) {
                warnings.push(BOX_WARNING.to_string());
            }
            (absorbed.net, absorbed.observe)
        }
        ParsedNetwork::Credal(cn) => {
            let mut observe = Vec::new();
            for item in &evidence {
                let Evidence::Hard { variable, state } = item else {
                    return Err(Error::InvalidEvidence(format!(
                        "{}: the network is already credal, so only hard evidence can be absorbed",
                        item.variable()
                    )));
                };
                let node = cn.node(variable).ok_or_else(|| {
                    Error::InvalidEvidence(format!("unknown variable {variable:?}"))
                })?;
                if observe.iter().any(|&(n, _)| n == node) {
                    return Err(Error::InvalidEvidence(format!(
                        "{variable}: multiple evidence items on one variable"
                    )));
                }
                observe.push((node, *state));
            }
            (cn.clone(), observe)
        }
    };

    let target = net.node(req.target).ok_or_else(|| {
        Error::InvalidEvidence(format!("unknown query variable {:?}", req.target))
    })?;
    let query = Query {
        target,
        hard_evidence: observe.into_iter().collect(),
    };
    let config = EngineConfig {
        method: req.method,
        seed: req.seed,
        ..EngineConfig::default()
    };
    let answer = cn_update(&net, &query, &config)?;

    let states = &net.variable(target).states;
    let posterior = states
        .iter()
        .zip(answer.lower.iter().zip(&answer.upper))
        .map(|(state, (&lo, &hi))| StateBounds {
            state: state.clone(),
            lower: sig12(lo.clamp(0.0, 1.0)),
            upper: sig12(hi.clamp(0.0, 1.0)),
        })
        .collect();
    // Certificates are only worth reporting when there was a choice to make.
    let certificates = answer.certificates.filter(|c| {
        c.lower.iter().chain(&c.upper).any(|combo| !combo.is_empty())
    });
    Ok(ResultDocument {
        target: req.target.to_string(),
        method: answer.method.to_string(),
        posterior,
        certificates,
        warnings,
        wall_time_ms: Some(started.elapsed().as_secs_f64() * 1e3),
    })
}
