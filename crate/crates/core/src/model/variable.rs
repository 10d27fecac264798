use serde::{Deserialize, Serialize};

use crate::error::{Error, Result, Violation};

/// A discrete variable: a name plus an ordered list of state labels.
///
/// State order is significant everywhere: probability vectors, CPT rows and
/// parent-configuration indexing all follow the declaration order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Variable {
    pub name: String,
    pub states: Vec<String>,
}

impl Variable {
    pub fn new(name: impl Into<String>, states: &[&str]) -> Result<Self> {
        let var = Variable {
            name: name.into(),
            states: states.iter().map(|s| s.to_string()).collect(),
        };
        var.check()?;
        Ok(var)
    }

    /// A binary variable with states `x` and `not_x`.
    pub fn binary(name: impl Into<String>, x: &str, not_x: &str) -> Result<Self> {
        Self::new(name, &[x, not_x])
    }

    pub fn cardinality(&self) -> usize {
        self.states.len()
    }

    pub fn is_binary(&self) -> bool {
        self.states.len() == 2
    }

    /// Index of a state label, if declared.
    pub fn state_index(&self, label: &str) -> Option<usize> {
        self.states.iter().position(|s| s == label)
    }

    pub(crate) fn violations(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        if self.states.len() < 2 {
            out.push(Violation::new(
                &self.name,
                format!("cardinality must be >= 2, got {}", self.states.len()),
            ));
        }
        for (i, s) in self.states.iter().enumerate() {
            if self.states[..i].contains(s) {
                out.push(Violation::new(
                    &self.name,
                    format!("duplicate state label {s:?}"),
                ));
            }
        }
        out
    }

    fn check(&self) -> Result<()> {
        let violations = self.violations();
        if violations.is_empty() {
            Ok(())
        } else {
            Err(Error::Validation(violations))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_single_state() {
        assert!(Variable::new("X", &["only"]).is_err());
    }

    #[test]
    fn rejects_duplicate_labels() {
        assert!(Variable::new("X", &["a", "a"]).is_err());
    }

    #[test]
    fn state_lookup() {
        let v = Variable::new("light", &["g", "y", "r"]).unwrap();
        assert_eq!(v.state_index("r"), Some(2));
        assert_eq!(v.state_index("b"), None);
        assert_eq!(v.cardinality(), 3);
        assert!(!v.is_binary());
    }
}
