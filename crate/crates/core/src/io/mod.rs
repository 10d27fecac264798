//! File formats and the query pipeline behind the command-line tool.
//!
//! Networks and evidence travel as JSON documents ([`NetworkDocument`],
//! [`EvidenceDocument`]); answers come back as a [`ResultDocument`] whose
//! numbers are rounded to 12 significant digits so identical inputs always
//! emit identical bytes. [`run_query`] ties the stages together: parse,
//! absorb evidence, pick an engine, round.

mod documents;
mod emit;
mod parse;
mod run;

pub use documents::{
    sig12, CountPair, CredalRowDoc, EvidenceDocument, EvidenceItem, NetworkDocument, OpinionDoc,
    ResultDocument, StateBounds, VariableDecl,
};
pub use emit::{emit_result, OutputFormat};
pub use parse::{
    evidence_from_document, network_from_document, network_to_document, parse_evidence,
    parse_network, ParsedNetwork,
};
pub use run::{run_query, QueryRequest, BOX_WARNING};
