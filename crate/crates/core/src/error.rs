use thiserror::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// A single validation failure, naming the node and the rule it breaks.
#[derive(Debug, Clone, PartialEq)]
pub struct Violation {
    /// Node (variable) the violation is attached to, if any.
    pub node: Option<String>,
    /// The rule that failed.
    pub rule: String,
}

impl Violation {
    pub fn new(node: impl Into<String>, rule: impl Into<String>) -> Self {
        Violation {
            node: Some(node.into()),
            rule: rule.into(),
        }
    }

    pub fn global(rule: impl Into<String>) -> Self {
        Violation {
            node: None,
            rule: rule.into(),
        }
    }
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match &self.node {
            Some(node) => write!(f, "{node}: {}", self.rule),
            None => write!(f, "{}", self.rule),
        }
    }
}

#[derive(Debug, Error)]
pub enum Error {
    /// Input document could not be parsed.
    #[error("parse error: {0}")]
    Parse(String),

    /// A model or evidence object violates a structural invariant.
    #[error("validation failed: {}", format_violations(.0))]
    Validation(Vec<Violation>),

    /// Evidence has probability zero in every consistent completion.
    #[error("inconsistent evidence: {0}")]
    InconsistentEvidence(String),

    /// Soft-style evidence tries to revise a state that is impossible
    /// in the original network.
    #[error("invalid evidence: {0}")]
    InvalidEvidence(String),

    /// The interval constraints admit no normalized distribution.
    #[error("infeasible intervals: {0}")]
    Infeasible(String),

    /// Exact enumeration would exceed the configured cap.
    #[error("resource cap exceeded: {0}")]
    ResourceCap(String),

    /// An engine was invoked on a network outside its contract.
    #[error("precondition violated: {0}")]
    Precondition(String),

    /// Pooling annihilated every state.
    #[error("degenerate pool: {0}")]
    DegeneratePool(String),
}

fn format_violations(violations: &[Violation]) -> String {
    violations
        .iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join("; ")
}
