use serde::{Deserialize, Serialize};

use crate::error::{Error, Result, Violation};
use crate::model::credal_set::{CredalSet, IntervalCs};
use crate::model::grid;
use crate::model::pmf::Pmf;
use crate::model::Cpt;

/// Default ceiling on how many explicit tables an ECPT expansion may produce.
pub const ECPT_PRODUCT_CAP: usize = 1_000_000;

/// One row of a credal CPT: either an explicit vertex set or probability
/// intervals (the latter converted to vertices on demand).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CredalRow {
    Set(CredalSet),
    Interval(IntervalCs),
}

impl CredalRow {
    pub fn to_vertex_set(&self) -> Result<CredalSet> {
        match self {
            CredalRow::Set(cs) => Ok(cs.clone()),
            CredalRow::Interval(ics) => ics.to_vertices(),
        }
    }

    pub fn cardinality(&self) -> usize {
        match self {
            CredalRow::Set(cs) => cs.cardinality(),
            CredalRow::Interval(ics) => ics.cardinality(),
        }
    }
}

/// A credal CPT: one credal set per parent configuration, same row ranking
/// as [`Cpt`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Ccpt {
    pub child: String,
    pub parents: Vec<String>,
    pub rows: Vec<CredalRow>,
}

impl Ccpt {
    pub(crate) fn violations(&self, child_card: usize, parent_cards: &[usize]) -> Vec<Violation> {
        let mut out = Vec::new();
        let expected = grid::grid_size(parent_cards).unwrap_or(usize::MAX);
        if self.rows.len() != expected {
            out.push(Violation::new(
                &self.child,
                format!("expected {expected} credal rows, got {}", self.rows.len()),
            ));
        }
        for (i, row) in self.rows.iter().enumerate() {
            if row.cardinality() != child_card {
                out.push(Violation::new(
                    &self.child,
                    format!(
                        "credal row {i} is over {} states, child has {child_card}",
                        row.cardinality()
                    ),
                ));
            } else if let CredalRow::Interval(ics) = row {
                if let Err(e) = ics.check() {
                    out.push(Violation::new(&self.child, format!("credal row {i}: {e}")));
                }
            }
        }
        out
    }
}

/// An extensive CPT: an explicit finite list of candidate tables.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Ecpt {
    pub child: String,
    pub parents: Vec<String>,
    pub tables: Vec<Cpt>,
}

impl Ecpt {
    pub(crate) fn violations(&self, child_card: usize, parent_cards: &[usize]) -> Vec<Violation> {
        let mut out = Vec::new();
        if self.tables.is_empty() {
            out.push(Violation::new(&self.child, "extensive CPT has no tables"));
            return out;
        }
        for t in &self.tables {
            if t.child != self.child || t.parents != self.parents {
                out.push(Violation::new(
                    &self.child,
                    "extensive CPT member disagrees on child or parents",
                ));
            }
            out.extend(t.violations(child_card, parent_cards));
        }
        out
    }
}

/// Expands a credal CPT into the equivalent extensive CPT by taking every
/// combination of per-row vertex choices.
///
/// Rows vary independently, so the result has Π_row |vertices(row)| tables;
/// anything beyond `cap` aborts with a resource error before allocation.
/// Construction prunes each row's vertex list, which already rules out
/// near-duplicate tables; exact duplicates are dropped defensively.
pub fn ccpt_to_ecpt(ccpt: &Ccpt, cap: usize) -> Result<Ecpt> {
    let row_sets: Vec<CredalSet> = ccpt
        .rows
        .iter()
        .map(|r| r.to_vertex_set())
        .collect::<Result<_>>()?;
    let counts: Vec<usize> = row_sets.iter().map(|cs| cs.vertices().len()).collect();
    let total = grid::grid_size(&counts).filter(|&n| n <= cap).ok_or_else(|| {
        Error::ResourceCap(format!(
            "extensive expansion of {} needs more than {cap} tables",
            ccpt.child
        ))
    })?;

    let mut tables = Vec::with_capacity(total);
    let mut seen = std::collections::HashSet::with_capacity(total);
    for choice in grid::configs(&counts) {
        let rows: Vec<Pmf> = choice
            .iter()
            .zip(&row_sets)
            .map(|(&v, cs)| cs.vertices()[v].clone())
            .collect();
        let key: Vec<u64> = rows
            .iter()
            .flat_map(|r| r.iter().map(|p| p.to_bits()))
            .collect();
        if seen.insert(key) {
            tables.push(Cpt {
                child: ccpt.child.clone(),
                parents: ccpt.parents.clone(),
                rows,
            });
        }
    }
    Ok(Ecpt {
        child: ccpt.child.clone(),
        parents: ccpt.parents.clone(),
        tables,
    })
}
