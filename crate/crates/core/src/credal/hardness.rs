//! Generator for a family of polytree credal networks whose exact interval
//! updating is expensive despite the friendly topology.
//!
//! The instance has 2k+1 nodes. Binary nodes X_0 … X_{k-1} are roots whose
//! priors are vacuous credal sets, so every corner of the k-dimensional
//! unit cube is a candidate prior combination. A ternary chain
//! X_k → X_{k+1} → … → X_{2k} runs alongside, X_k uniform and each later
//! chain node also fed by one binary root: X_{k+i} has parents X_{i-1} and
//! X_{k+i-1}. Querying the chain tail therefore mixes contributions from
//! all binary roots, and the optimal corner cannot be read off locally.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result, Violation};
use crate::model::{Ccpt, Cpt, CredalNetwork, CredalRow, CredalSet, NodeModel, Pmf, Variable};

/// Builds the 2k+1-node instance described above.
///
/// `ternary_cpts`, when given, supplies the tables of X_{k+1} … X_{2k} in
/// chain order: k tables of six rows (binary parent major, ternary parent
/// minor), each row a PMF over three states. When absent, rows are drawn
/// from `seed` with every entry kept away from zero so the chain never
/// degenerates.
pub fn gen_hard_instance(
    k: usize,
    ternary_cpts: Option<&[Vec<Pmf>]>,
    seed: u64,
) -> Result<CredalNetwork> {
    if k == 0 {
        return Err(Error::Precondition("instance size k must be positive".into()));
    }
    if let Some(tables) = ternary_cpts {
        if tables.len() != k {
            return Err(Error::Validation(vec![Violation::global(format!(
                "expected {k} ternary tables, got {}",
                tables.len()
            ))]));
        }
        for (i, rows) in tables.iter().enumerate() {
            let child = format!("X{}", k + 1 + i);
            if rows.len() != 6 {
                return Err(Error::Validation(vec![Violation::new(
                    child,
                    format!("expected 6 rows, got {}", rows.len()),
                )]));
            }
            for row in rows {
                if row.len() != 3 {
                    return Err(Error::Validation(vec![Violation::new(
                        child,
                        format!("expected 3-state rows, got {}", row.len()),
                    )]));
                }
                row.check().map_err(|e| {
                    Error::Validation(vec![Violation::new(&child, e.to_string())])
                })?;
            }
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut random_row = || {
        let raw: Vec<f64> = (0..3).map(|_| rng.random_range(0.05..1.0)).collect();
        let total: f64 = raw.iter().sum();
        Pmf::new(raw.into_iter().map(|v| v / total).collect()).expect("positive entries normalize")
    };

    let mut variables = Vec::with_capacity(2 * k + 1);
    let mut models = Vec::with_capacity(2 * k + 1);
    for i in 0..k {
        let name = format!("X{i}");
        variables.push(Variable::binary(&name, "0", "1")?);
        models.push(NodeModel::Credal(Ccpt {
            child: name,
            parents: vec![],
            rows: vec![CredalRow::Set(CredalSet::vacuous(2))],
        }));
    }
    let root = format!("X{k}");
    variables.push(Variable::new(&root, &["0", "1", "2"])?);
    models.push(NodeModel::Sharp(Cpt::root(
        &root,
        Pmf::new(vec![1.0 / 3.0; 3])?,
    )));
    for i in 1..=k {
        let name = format!("X{}", k + i);
        variables.push(Variable::new(&name, &["0", "1", "2"])?);
        let rows = match ternary_cpts {
            Some(tables) => tables[i - 1].clone(),
            None => (0..6).map(|_| random_row()).collect(),
        };
        let side = format!("X{}", i - 1);
        let prev = format!("X{}", k + i - 1);
        models.push(NodeModel::Sharp(Cpt::new(
            &name,
            &[side.as_str(), prev.as_str()],
            rows,
        )));
    }
    CredalNetwork::new(variables, models)
}
