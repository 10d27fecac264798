use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Tolerance used when checking that a probability vector sums to one.
pub const SUM_TOLERANCE: f64 = 1e-9;

/// A probability mass function over the states of one variable, stored in
/// state-declaration order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Pmf(pub Vec<f64>);

impl Pmf {
    /// Validates entries in [0, 1] and total mass 1 (within `SUM_TOLERANCE`).
    pub fn new(probs: Vec<f64>) -> Result<Self> {
        let pmf = Pmf(probs);
        pmf.check()?;
        Ok(pmf)
    }

    /// Normalizes a nonnegative weight vector into a distribution.
    pub fn normalized(weights: &[f64]) -> Result<Self> {
        if weights.iter().any(|&w| !w.is_finite() || w < 0.0) {
            return Err(Error::Precondition(
                "weights must be finite and nonnegative".into(),
            ));
        }
        let total: f64 = weights.iter().sum();
        if total <= 0.0 {
            return Err(Error::Precondition(
                "cannot normalize an all-zero weight vector".into(),
            ));
        }
        Ok(Pmf(weights.iter().map(|w| w / total).collect()))
    }

    /// The uniform distribution over `n` states.
    pub fn uniform(n: usize) -> Self {
        Pmf(vec![1.0 / n as f64; n])
    }

    /// A point mass on state `i`.
    pub fn degenerate(n: usize, i: usize) -> Self {
        let mut p = vec![0.0; n];
        p[i] = 1.0;
        Pmf(p)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn check(&self) -> Result<()> {
        for (i, &p) in self.0.iter().enumerate() {
            if !p.is_finite() || !(-SUM_TOLERANCE..=1.0 + SUM_TOLERANCE).contains(&p) {
                return Err(Error::Precondition(format!(
                    "probability out of range at state {i}: {p}"
                )));
            }
        }
        let total: f64 = self.0.iter().sum();
        if (total - 1.0).abs() > SUM_TOLERANCE {
            return Err(Error::Precondition(format!(
                "probabilities sum to {total}, expected 1"
            )));
        }
        Ok(())
    }

    pub fn iter(&self) -> std::slice::Iter<'_, f64> {
        self.0.iter()
    }
}

impl std::ops::Index<usize> for Pmf {
    type Output = f64;
    fn index(&self, i: usize) -> &f64 {
        &self.0[i]
    }
}

/// Componentwise `|a - b| <= tol` for equal-length vectors.
pub fn approx_eq_slice(a: &[f64], b: &[f64], tol: f64) -> bool {
    a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x - y).abs() <= tol)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn accepts_valid_distribution() {
        let p = Pmf::new(vec![0.2, 0.3, 0.5]).unwrap();
        assert_eq!(p.len(), 3);
        assert_eq!(p[2], 0.5);
    }

    #[test]
    fn rejects_bad_sum() {
        assert!(Pmf::new(vec![0.5, 0.6]).is_err());
    }

    #[test]
    fn rejects_negative() {
        assert!(Pmf::new(vec![-0.1, 1.1]).is_err());
    }

    #[test]
    fn normalizes_weights() {
        let p = Pmf::normalized(&[2.0, 3.0, 5.0]).unwrap();
        assert!(approx_eq_slice(&p.0, &[0.2, 0.3, 0.5], 1e-15));
    }

    #[test]
    fn normalize_rejects_zero_mass() {
        assert!(Pmf::normalized(&[0.0, 0.0]).is_err());
    }

    #[test]
    fn uniform_and_degenerate() {
        assert_eq!(Pmf::uniform(4).0, vec![0.25; 4]);
        assert_eq!(Pmf::degenerate(3, 1).0, vec![0.0, 1.0, 0.0]);
    }
}
