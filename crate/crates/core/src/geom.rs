//! Convex-combination feasibility.
//!
//! The single geometric question the credal machinery keeps asking is
//! "does this point lie in the convex hull of those points?". That is a
//! linear feasibility problem, solved here by a small dense phase-1 simplex
//! with Bland's rule. Problem sizes are tiny (hull dimension = variable
//! cardinality), so no sparse or revised variants are warranted.

/// Pivot threshold; well below the 1e-9 comparison tolerance used by callers.
const PIVOT_EPS: f64 = 1e-12;

/// Least total constraint violation achievable when writing `target` as a
/// convex combination of `points` (the phase-1 optimum). Zero up to roundoff
/// iff `target` lies in the hull.
pub fn hull_residual(points: &[Vec<f64>], target: &[f64]) -> f64 {
    let m = points.len();
    let dim = target.len();
    if m == 0 {
        return f64::INFINITY;
    }
    debug_assert!(points.iter().all(|p| p.len() == dim));

    // Equality system A w = b over weights w >= 0:
    //   dim coordinate rows (sum_i w_i * points[i][k] = target[k])
    //   one normalization row (sum_i w_i = 1).
    let rows = dim + 1;
    let rhs_col = m + rows;
    let mut t = vec![vec![0.0; rhs_col + 1]; rows];
    for (i, row) in t.iter_mut().enumerate() {
        for (j, p) in points.iter().enumerate() {
            row[j] = if i < dim { p[i] } else { 1.0 };
        }
        row[rhs_col] = if i < dim { target[i] } else { 1.0 };
        if row[rhs_col] < 0.0 {
            for v in row.iter_mut() {
                *v = -*v;
            }
        }
        row[m + i] = 1.0; // artificial variable, basic at start
    }

    // Objective: minimize the sum of artificials. Price out the initial
    // basis by subtracting every constraint row.
    let mut cost = vec![0.0; rhs_col + 1];
    for j in m..m + rows {
        cost[j] = 1.0;
    }
    for row in &t {
        for (c, v) in cost.iter_mut().zip(row) {
            *c -= v;
        }
    }

    let mut basis: Vec<usize> = (m..m + rows).collect();
    loop {
        // Bland: entering column is the lowest index with negative reduced cost.
        let Some(enter) = (0..rhs_col).find(|&j| cost[j] < -PIVOT_EPS) else {
            break;
        };
        // Ratio test, ties broken by lowest basis variable index.
        let mut leave: Option<usize> = None;
        let mut best = f64::INFINITY;
        for (i, row) in t.iter().enumerate() {
            if row[enter] > PIVOT_EPS {
                let ratio = row[rhs_col] / row[enter];
                let better = ratio < best - PIVOT_EPS
                    || (ratio < best + PIVOT_EPS
                        && leave.is_some_and(|l| basis[i] < basis[l]));
                if better {
                    best = ratio;
                    leave = Some(i);
                }
            }
        }
        let Some(leave) = leave else {
            break; // unbounded direction cannot occur here, but stay safe
        };
        pivot(&mut t, &mut cost, leave, enter);
        basis[leave] = enter;
    }

    // cost[rhs] holds the negated objective after pricing out.
    (-cost[rhs_col]).max(0.0)
}

fn pivot(t: &mut [Vec<f64>], cost: &mut [f64], leave: usize, enter: usize) {
    let scale = t[leave][enter];
    for v in t[leave].iter_mut() {
        *v /= scale;
    }
    let pivot_row = t[leave].clone();
    for (i, row) in t.iter_mut().enumerate() {
        if i != leave {
            let f = row[enter];
            if f != 0.0 {
                for (v, p) in row.iter_mut().zip(&pivot_row) {
                    *v -= f * p;
                }
            }
        }
    }
    let f = cost[enter];
    if f != 0.0 {
        for (c, p) in cost.iter_mut().zip(&pivot_row) {
            *c -= f * p;
        }
    }
}

/// True iff `target` is a convex combination of `points` within `tol`.
pub fn in_hull(points: &[Vec<f64>], target: &[f64], tol: f64) -> bool {
    hull_residual(points, target) <= tol
}

#[cfg(test)]
mod tests {
    use super::*;

    const TOL: f64 = 1e-9;

    #[test]
    fn point_equals_single_vertex() {
        assert!(in_hull(&[vec![0.3, 0.7]], &[0.3, 0.7], TOL));
        assert!(!in_hull(&[vec![0.3, 0.7]], &[0.4, 0.6], TOL));
    }

    #[test]
    fn segment_membership() {
        let pts = vec![vec![0.0, 1.0], vec![1.0, 0.0]];
        assert!(in_hull(&pts, &[0.25, 0.75], TOL));
        assert!(!in_hull(&pts, &[0.25, 0.5], TOL));
    }

    #[test]
    fn triangle_interior_and_exterior() {
        let pts = vec![
            vec![0.5, 0.3, 0.2],
            vec![0.2, 0.5, 0.3],
            vec![0.3, 0.2, 0.5],
        ];
        // Barycenter is inside.
        assert!(in_hull(&pts, &[1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0], TOL));
        // A shadow-box corner that the triangle misses.
        assert!(!in_hull(&pts, &[0.2, 0.3, 0.5], TOL));
    }

    #[test]
    fn empty_point_set_rejects_everything() {
        assert!(!in_hull(&[], &[1.0], TOL));
    }

    #[test]
    fn degenerate_duplicate_vertices() {
        let pts = vec![vec![0.4, 0.6], vec![0.4, 0.6]];
        assert!(in_hull(&pts, &[0.4, 0.6], TOL));
        assert!(!in_hull(&pts, &[0.5, 0.5], TOL));
    }
}
