//! Absorbing uncertain evidence into discrete Bayesian networks.
//!
//! Hard evidence fixes a variable's state; real observations are rarely that
//! clean. This crate models the softer cases — likelihood ratios from an
//! unreliable sensor, a revised marginal, interval-valued versions of either,
//! set-valued observations, and small-sample frequency counts — and absorbs
//! any mix of them into a network by grafting auxiliary child nodes, so that
//! a single updating pass answers queries under all of them at once.
//!
//! When the evidence itself carries imprecision, the augmented model is a
//! credal network and posteriors become intervals. Three updating engines
//! cover the range: exhaustive vertex enumeration (exact, small models),
//! interval propagation on binary polytrees (exact, fast), and iterated
//! linear-fractional coordinate ascent (an inner approximation for
//! everything else). A geometric pooling operator combines multiple expert
//! opinions on one variable before absorption.
//!
//! Entry points:
//! - [`model`]: variables, tables, credal sets, networks.
//! - [`bn`]: exact inference in sharp networks.
//! - [`evidence`]: evidence types, conversions, and absorption.
//! - [`credal`]: interval posteriors in credal networks.
//! - [`pooling`]: merging several opinions on one variable.
//! - [`io`]: JSON documents and the query runner the CLI drives.

pub mod bn;
pub mod credal;
pub mod error;
pub mod evidence;
pub mod geom;
pub mod io;
pub mod model;
pub mod pooling;

pub use error::{Error, Result, Violation};
pub use model::{
    BayesianNetwork, Ccpt, Cpt, CredalNetwork, CredalRow, CredalSet, Ecpt, IntervalCs, NodeModel,
    Pmf, Variable,
};
