use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom;
use crate::model::pmf::{approx_eq_slice, Pmf, SUM_TOLERANCE};

/// Absolute tolerance for set comparisons (hull membership, dedup, shadow).
pub const SET_TOLERANCE: f64 = 1e-9;

/// A credal set over one variable, represented by its extreme points.
///
/// Construction removes inner points, so `vertices` holds only points that
/// are not convex combinations of the others.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CredalSet {
    vertices: Vec<Pmf>,
}

impl CredalSet {
    /// Builds a credal set from candidate points, dropping duplicates and
    /// convex combinations of other candidates.
    pub fn new(points: Vec<Pmf>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::Precondition("credal set needs at least one point".into()));
        }
        let card = points[0].len();
        for p in &points {
            if p.len() != card {
                return Err(Error::Precondition(
                    "credal set points must share one variable".into(),
                ));
            }
            p.check()?;
        }
        Ok(CredalSet {
            vertices: prune_inner_points(points),
        })
    }

    /// A single-point ("sharp") credal set.
    pub fn sharp(p: Pmf) -> Result<Self> {
        Self::new(vec![p])
    }

    /// The vacuous credal set over `n` states: all degenerate PMFs, whose
    /// hull is the whole probability simplex.
    pub fn vacuous(n: usize) -> Self {
        CredalSet {
            vertices: (0..n).map(|i| Pmf::degenerate(n, i)).collect(),
        }
    }

    pub fn vertices(&self) -> &[Pmf] {
        &self.vertices
    }

    pub fn cardinality(&self) -> usize {
        self.vertices[0].len()
    }

    pub fn is_sharp(&self) -> bool {
        self.vertices.len() == 1
    }

    /// True iff `p` lies in the convex hull of the vertices.
    pub fn contains(&self, p: &[f64]) -> bool {
        geom::in_hull(&self.raw_vertices(), p, SET_TOLERANCE)
    }

    /// Hull equality within `SET_TOLERANCE`: mutual vertex containment.
    pub fn same_hull(&self, other: &CredalSet) -> bool {
        self.vertices.iter().all(|v| other.contains(&v.0))
            && other.vertices.iter().all(|v| self.contains(&v.0))
    }

    /// Componentwise probability bounds over the vertices.
    pub fn shadow(&self) -> IntervalCs {
        let n = self.cardinality();
        let mut lower = vec![f64::INFINITY; n];
        let mut upper = vec![f64::NEG_INFINITY; n];
        for v in &self.vertices {
            for (i, &p) in v.iter().enumerate() {
                lower[i] = lower[i].min(p);
                upper[i] = upper[i].max(p);
            }
        }
        IntervalCs { lower, upper }
    }

    /// A credal set coincides with its shadow iff every extreme point of the
    /// shadow's polytope already lies in the set's hull (the converse
    /// inclusion always holds).
    pub fn is_shady(&self) -> bool {
        let shadow_vertices = self
            .shadow()
            .to_vertices()
            .expect("shadow of a nonempty credal set is feasible");
        let own = self.raw_vertices();
        shadow_vertices
            .vertices
            .iter()
            .all(|v| geom::in_hull(&own, &v.0, SET_TOLERANCE))
    }

    fn raw_vertices(&self) -> Vec<Vec<f64>> {
        self.vertices.iter().map(|p| p.0.clone()).collect()
    }
}

/// Per-state probability intervals with a reachable normalized point.
///
/// Encodes the polytope {P : lower ≤ P ≤ upper, Σ P(x) = 1}. Also the
/// output type of [`CredalSet::shadow`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IntervalCs {
    pub lower: Vec<f64>,
    pub upper: Vec<f64>,
}

impl IntervalCs {
    pub fn new(lower: Vec<f64>, upper: Vec<f64>) -> Result<Self> {
        let ics = IntervalCs { lower, upper };
        ics.check()?;
        Ok(ics)
    }

    pub fn cardinality(&self) -> usize {
        self.lower.len()
    }

    pub fn check(&self) -> Result<()> {
        if self.lower.len() != self.upper.len() || self.lower.is_empty() {
            return Err(Error::Precondition(
                "interval bounds must be nonempty and equal-length".into(),
            ));
        }
        for (i, (&l, &u)) in self.lower.iter().zip(&self.upper).enumerate() {
            if !l.is_finite() || !u.is_finite() || l < -SUM_TOLERANCE || u > 1.0 + SUM_TOLERANCE || l > u + SUM_TOLERANCE {
                return Err(Error::Precondition(format!(
                    "state {i}: need 0 <= lower <= upper <= 1, got [{l}, {u}]"
                )));
            }
        }
        let lo: f64 = self.lower.iter().sum();
        let hi: f64 = self.upper.iter().sum();
        if lo > 1.0 + SUM_TOLERANCE || hi < 1.0 - SUM_TOLERANCE {
            return Err(Error::Infeasible(format!(
                "no normalized point satisfies the intervals (Σlower={lo}, Σupper={hi})"
            )));
        }
        Ok(())
    }

    /// Enumerates the extreme points of the interval polytope.
    ///
    /// A point of {lower ≤ P ≤ upper, ΣP = 1} is extreme iff at most one
    /// coordinate sits strictly between its bounds, so it suffices to pick a
    /// free coordinate and drive every other one to an endpoint.
    pub fn to_vertices(&self) -> Result<CredalSet> {
        self.check()?;
        let n = self.cardinality();
        let mut found: Vec<Vec<f64>> = Vec::new();
        for free in 0..n {
            let others: Vec<usize> = (0..n).filter(|&i| i != free).collect();
            for mask in 0u32..(1 << others.len()) {
                let mut p = vec![0.0; n];
                let mut partial = 0.0;
                for (bit, &i) in others.iter().enumerate() {
                    p[i] = if mask >> bit & 1 == 1 {
                        self.upper[i]
                    } else {
                        self.lower[i]
                    };
                    partial += p[i];
                }
                let rest = 1.0 - partial;
                if rest < self.lower[free] - SET_TOLERANCE
                    || rest > self.upper[free] + SET_TOLERANCE
                {
                    continue;
                }
                p[free] = rest.clamp(self.lower[free], self.upper[free]);
                if !found.iter().any(|q| approx_eq_slice(q, &p, SET_TOLERANCE)) {
                    found.push(p);
                }
            }
        }
        if found.is_empty() {
            return Err(Error::Infeasible(
                "interval polytope has no extreme points".into(),
            ));
        }
        CredalSet::new(found.into_iter().map(Pmf).collect())
    }

    /// Width-zero test: the polytope is a single point.
    pub fn is_point(&self) -> bool {
        self.lower
            .iter()
            .zip(&self.upper)
            .all(|(&l, &u)| (u - l).abs() <= SET_TOLERANCE)
    }
}

/// Removes every point expressible as a convex combination of the remaining
/// ones (duplicates included), keeping first occurrences.
fn prune_inner_points(points: Vec<Pmf>) -> Vec<Pmf> {
    let mut kept = points;
    let mut i = 0;
    while i < kept.len() {
        if kept.len() == 1 {
            break;
        }
        let others: Vec<Vec<f64>> = kept
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, p)| p.0.clone())
            .collect();
        if geom::in_hull(&others, &kept[i].0, SET_TOLERANCE) {
            kept.remove(i);
        } else {
            i += 1;
        }
    }
    kept
}
