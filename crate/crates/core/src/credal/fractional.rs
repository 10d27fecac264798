//! Exact optimization of linear-fractional objectives over products of
//! finite candidate sets.
//!
//! The recurring subproblem of credal updating: optimize
//!
//! ```text
//!     f(θ) = (num · θ) / (den · θ)
//! ```
//!
//! where θ is assembled by picking, independently for each *block*, one
//! candidate sub-vector from a finite list (a credal set's vertices, or the
//! two endpoints of an interval). The optimum over the convex hull of such a
//! product is always attained at one of the picks, and Dinkelbach's scheme
//! finds it without enumerating the full product: given a current ratio `q`,
//! the auxiliary objective `(num − q·den)·θ` decomposes across blocks, so
//! each block's best candidate is found by a linear scan. Each round either
//! certifies optimality or strictly improves the ratio, and with finitely
//! many candidate combinations the loop terminates exactly.

use crate::error::{Error, Result};

/// One independent choice: a list of candidate sub-vectors, all of the same
/// length, occupying one contiguous slice of the assembled θ.
#[derive(Debug, Clone)]
pub struct Block {
    pub candidates: Vec<Vec<f64>>,
}

impl Block {
    pub fn width(&self) -> usize {
        self.candidates[0].len()
    }

    /// A block with two candidates per scalar coordinate: the endpoints of
    /// an interval.
    pub fn interval(lo: f64, hi: f64) -> Block {
        if lo == hi {
            Block {
                candidates: vec![vec![lo]],
            }
        } else {
            Block {
                candidates: vec![vec![lo], vec![hi]],
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Goal {
    Minimize,
    Maximize,
}

/// An exact optimum: the ratio value, the candidate index chosen per block,
/// and the assembled coordinate vector.
#[derive(Debug, Clone)]
pub struct FractionalOpt {
    pub value: f64,
    pub choice: Vec<usize>,
    pub point: Vec<f64>,
}

fn assemble(blocks: &[Block], choice: &[usize]) -> Vec<f64> {
    let mut point = Vec::new();
    for (b, &c) in blocks.iter().zip(choice) {
        point.extend_from_slice(&b.candidates[c]);
    }
    point
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Optimizes `(num·θ)/(den·θ)` over per-block candidate picks.
///
/// Requirements: `den·θ ≥ 0` for every pick, with strict positivity
/// somewhere, and `num·θ = 0` whenever `den·θ = 0` (zero-denominator picks
/// then carry no mass and are skipped, mirroring how updating ignores
/// parameter choices that make the evidence impossible). Ties between picks
/// are broken toward lower candidate indices, so results are reproducible.
pub fn solve_fractional(
    num: &[f64],
    den: &[f64],
    blocks: &[Block],
    goal: Goal,
) -> Result<FractionalOpt> {
    let width: usize = blocks.iter().map(Block::width).sum();
    if width != num.len() || width != den.len() {
        return Err(Error::Precondition(format!(
            "coefficient length {} does not match block width {width}",
            num.len()
        )));
    }

    // Start from the pick with the largest denominator: it exists whenever
    // the problem is well-posed, and maximizing a linear form decomposes
    // across blocks.
    let mut choice: Vec<usize> = Vec::with_capacity(blocks.len());
    let mut offset = 0;
    for b in blocks {
        let best = (0..b.candidates.len())
            .max_by(|&i, &j| {
                let di = dot(&b.candidates[i], &den[offset..offset + b.width()]);
                let dj = dot(&b.candidates[j], &den[offset..offset + b.width()]);
                di.partial_cmp(&dj).unwrap()
            })
            .unwrap();
        choice.push(best);
        offset += b.width();
    }
    let mut point = assemble(blocks, &choice);
    let d0 = dot(den, &point);
    if d0 <= 0.0 {
        return Err(Error::InconsistentEvidence(
            "denominator vanishes over the whole feasible set".into(),
        ));
    }
    let mut q = dot(num, &point) / d0;

    // Dinkelbach rounds. The sign flip folds Maximize into the same code.
    let sign = match goal {
        Goal::Minimize => 1.0,
        Goal::Maximize => -1.0,
    };
    // At most one strict improvement per distinct combination.
    let max_rounds = 1 + blocks.iter().map(|b| b.candidates.len()).sum::<usize>() * 64;
    for _ in 0..max_rounds {
        // Per block, pick the candidate minimizing sign·(num − q·den)·θ.
        let mut next = Vec::with_capacity(blocks.len());
        let mut g = 0.0;
        let mut offset = 0;
        for b in blocks {
            let w = b.width();
            let mut best = 0;
            let mut best_val = f64::INFINITY;
            for (i, cand) in b.candidates.iter().enumerate() {
                let val = sign
                    * (dot(cand, &num[offset..offset + w]) - q * dot(cand, &den[offset..offset + w]));
                if val < best_val - 1e-15 {
                    best_val = val;
                    best = i;
                }
            }
            g += best_val;
            next.push(best);
            offset += w;
        }
        if g >= -1e-14 {
            // No pick beats ratio q: optimal.
            break;
        }
        let cand_point = assemble(blocks, &next);
        let d = dot(den, &cand_point);
        if d <= 0.0 {
            // A negative auxiliary value with a vanishing denominator means
            // num·θ < 0 there; such instances are outside the contract.
            return Err(Error::Precondition(
                "numerator is negative where the denominator vanishes".into(),
            ));
        }
        choice = next;
        point = cand_point;
        q = dot(num, &point) / d;
    }

    Ok(FractionalOpt {
        value: q,
        choice,
        point,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn point_blocks_evaluate_directly() {
        let blocks = vec![Block::interval(0.5, 0.5), Block::interval(0.25, 0.25)];
        let opt = solve_fractional(&[1.0, 0.0], &[1.0, 1.0], &blocks, Goal::Minimize).unwrap();
        assert!((opt.value - 0.5 / 0.75).abs() < 1e-12);
    }

    #[test]
    fn equal_coefficients_give_constant_one() {
        let blocks = vec![Block::interval(0.1, 0.9), Block::interval(0.2, 0.7)];
        let a = [0.4, 1.3];
        let opt = solve_fractional(&a, &a, &blocks, Goal::Minimize).unwrap();
        assert!((opt.value - 1.0).abs() < 1e-12);
        let opt = solve_fractional(&a, &a, &blocks, Goal::Maximize).unwrap();
        assert!((opt.value - 1.0).abs() < 1e-12);
    }

    /// Two-interval diagnostic-test bounds: P(x) = 0.2, λ_x ∈ [17/24, 18/24],
    /// λ_¬x ∈ [3/18, 4/18]; the posterior of x is
    /// 0.2·λ_x / (0.2·λ_x + 0.8·λ_¬x).
    #[test]
    fn diagnostic_test_box_bounds() {
        let blocks = vec![
            Block::interval(17.0 / 24.0, 18.0 / 24.0),
            Block::interval(3.0 / 18.0, 4.0 / 18.0),
        ];
        let num = [0.2, 0.0];
        let den = [0.2, 0.8];
        let lo = solve_fractional(&num, &den, &blocks, Goal::Minimize).unwrap();
        let hi = solve_fractional(&num, &den, &blocks, Goal::Maximize).unwrap();
        assert!((lo.value - 51.0 / 115.0).abs() < 1e-12, "lower = {}", lo.value);
        assert!((hi.value - 9.0 / 17.0).abs() < 1e-12, "upper = {}", hi.value);
        // The optimizers sit at opposite corners of the box.
        assert_eq!(lo.choice, vec![0, 1]);
        assert_eq!(hi.choice, vec![1, 0]);
    }

    #[test]
    fn vertex_blocks_beat_corner_scan() {
        // Three-candidate block: optimum need not be at an "extreme" of
        // each coordinate separately, only at some candidate.
        let blocks = vec![Block {
            candidates: vec![vec![0.2, 0.8], vec![0.5, 0.5], vec![0.9, 0.1]],
        }];
        let num = [1.0, 0.0];
        let den = [1.0, 1.0];
        let lo = solve_fractional(&num, &den, &blocks, Goal::Minimize).unwrap();
        assert!((lo.value - 0.2).abs() < 1e-12);
        let hi = solve_fractional(&num, &den, &blocks, Goal::Maximize).unwrap();
        assert!((hi.value - 0.9).abs() < 1e-12);
    }

    #[test]
    fn zero_denominator_everywhere_errors() {
        let blocks = vec![Block::interval(0.0, 1.0)];
        assert!(matches!(
            solve_fractional(&[1.0], &[0.0], &blocks, Goal::Minimize),
            Err(Error::InconsistentEvidence(_))
        ));
    }

    #[test]
    fn zero_denominator_picks_are_skipped() {
        // λ ∈ {0, 1} per state with P = (0.5, 0.5); the all-zero pick makes
        // the evidence impossible and must not pollute the minimum.
        let blocks = vec![Block::interval(0.0, 1.0), Block::interval(0.0, 1.0)];
        let num = [0.5, 0.0];
        let den = [0.5, 0.5];
        let lo = solve_fractional(&num, &den, &blocks, Goal::Minimize).unwrap();
        assert!((lo.value - 0.0).abs() < 1e-12);
        let hi = solve_fractional(&num, &den, &blocks, Goal::Maximize).unwrap();
        assert!((hi.value - 1.0).abs() < 1e-12);
    }

    /// Brute-force agreement on randomized instances.
    #[test]
    fn matches_exhaustive_enumeration() {
        use rand::prelude::*;
        use rand_chacha::ChaCha8Rng;
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let n_blocks = rng.random_range(1..=4);
            let blocks: Vec<Block> = (0..n_blocks)
                .map(|_| {
                    let w = rng.random_range(1..=2);
                    let k = rng.random_range(1..=3);
                    Block {
                        candidates: (0..k)
                            .map(|_| (0..w).map(|_| rng.random_range(0.05..1.0)).collect())
                            .collect(),
                    }
                })
                .collect();
            let width: usize = blocks.iter().map(Block::width).sum();
            let num: Vec<f64> = (0..width).map(|_| rng.random_range(0.0..1.0)).collect();
            let den: Vec<f64> = num
                .iter()
                .map(|&a| a + rng.random_range(0.0..1.0))
                .collect();

            // Exhaustive reference.
            let counts: Vec<usize> = blocks.iter().map(|b| b.candidates.len()).collect();
            let mut best_min = f64::INFINITY;
            let mut best_max = f64::NEG_INFINITY;
            for combo in crate::model::grid::configs(&counts) {
                let point = assemble(&blocks, &combo);
                let d = dot(&den, &point);
                if d > 0.0 {
                    let v = dot(&num, &point) / d;
                    best_min = best_min.min(v);
                    best_max = best_max.max(v);
                }
            }

            let lo = solve_fractional(&num, &den, &blocks, Goal::Minimize).unwrap();
            let hi = solve_fractional(&num, &den, &blocks, Goal::Maximize).unwrap();
            assert!((lo.value - best_min).abs() < 1e-10);
            assert!((hi.value - best_max).abs() < 1e-10);
        }
    }
}
