//! Network building blocks: variables, distributions, sharp and credal
//! conditional tables, and the network graphs that tie them together.

pub mod cpt;
pub mod credal_set;
pub mod grid;
pub mod network;
pub mod pmf;
pub mod tables;
pub mod variable;

pub use cpt::Cpt;
pub use credal_set::{CredalSet, IntervalCs, SET_TOLERANCE};
pub use network::{validate_network, BayesianNetwork, CredalNetwork, NodeModel};
pub use pmf::{approx_eq_slice, Pmf, SUM_TOLERANCE};
pub use tables::{ccpt_to_ecpt, Ccpt, CredalRow, Ecpt, ECPT_PRODUCT_CAP};
pub use variable::Variable;
