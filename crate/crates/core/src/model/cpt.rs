use serde::{Deserialize, Serialize};

use crate::error::Violation;
use crate::model::grid;
use crate::model::pmf::Pmf;

/// A conditional probability table P(child | parents).
///
/// `rows` holds one PMF over the child's states per parent configuration,
/// ranked row-major over parent state indices (last parent fastest). A root
/// node has no parents and exactly one row: its marginal.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Cpt {
    pub child: String,
    pub parents: Vec<String>,
    pub rows: Vec<Pmf>,
}

impl Cpt {
    pub fn root(child: impl Into<String>, marginal: Pmf) -> Self {
        Cpt {
            child: child.into(),
            parents: Vec::new(),
            rows: vec![marginal],
        }
    }

    pub fn new(child: impl Into<String>, parents: &[&str], rows: Vec<Pmf>) -> Self {
        Cpt {
            child: child.into(),
            parents: parents.iter().map(|p| p.to_string()).collect(),
            rows,
        }
    }

    /// The row for one parent configuration (state indices in parent order).
    pub fn row(&self, parent_cards: &[usize], parent_states: &[usize]) -> &Pmf {
        &self.rows[grid::config_index(parent_cards, parent_states)]
    }

    /// Structural and normalization checks against known cardinalities.
    pub(crate) fn violations(
        &self,
        child_card: usize,
        parent_cards: &[usize],
    ) -> Vec<Violation> {
        let mut out = Vec::new();
        let expected = match grid::grid_size(parent_cards) {
            Some(n) => n,
            None => {
                out.push(Violation::new(&self.child, "parent grid size overflows"));
                return out;
            }
        };
        if self.rows.len() != expected {
            out.push(Violation::new(
                &self.child,
                format!("expected {expected} CPT rows, got {}", self.rows.len()),
            ));
        }
        for (i, row) in self.rows.iter().enumerate() {
            if row.len() != child_card {
                out.push(Violation::new(
                    &self.child,
                    format!(
                        "row {i} has {} entries, child has {child_card} states",
                        row.len()
                    ),
                ));
            } else if let Err(e) = row.check() {
                out.push(Violation::new(&self.child, format!("row {i}: {e}")));
            }
        }
        out
    }
}
