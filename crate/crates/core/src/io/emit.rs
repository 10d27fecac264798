//! Rendering result documents for files and terminals.

use std::fmt::Write as _;

use crate::error::Error;
use crate::io::documents::ResultDocument;

/// Output renderings: machine-readable JSON (canonical field order, 12
/// significant digits) or an aligned human-readable table.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OutputFormat {
    #[default]
    Json,
    Table,
}

impl std::str::FromStr for OutputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "json" => Ok(OutputFormat::Json),
            "table" => Ok(OutputFormat::Table),
            other => Err(Error::Parse(format!(
                "unknown format {other:?}, expected json or table"
            ))),
        }
    }
}

/// Renders a result document. Identical documents render to identical text,
/// so emitted files can be compared byte for byte.
pub fn emit_result(doc: &ResultDocument, format: OutputFormat) -> String {
    match format {
        OutputFormat::Json => {
            let mut text = serde_json::to_string_pretty(doc).expect("document serializes");
            text.push('\n');
            text
        }
        OutputFormat::Table => {
            let mut out = String::new();
            let _ = writeln!(out, "target: {}", doc.target);
            let _ = writeln!(out, "method: {}", doc.method);
            let width = doc
                .posterior
                .iter()
                .map(|b| b.state.chars().count())
                .max()
                .unwrap_or(0);
            for bounds in &doc.posterior {
                let pad = width - bounds.state.chars().count();
                let _ = write!(out, "  {}{:pad$}  ", bounds.state, "");
                if bounds.lower == bounds.upper {
                    let _ = writeln!(out, "= {}", bounds.lower);
                } else {
                    let _ = writeln!(out, "[{}, {}]", bounds.lower, bounds.upper);
                }
            }
            for warning in &doc.warnings {
                let _ = writeln!(out, "warning: {warning}");
            }
            out
        }
    }
}
