use crate::model::grid;

/// A nonnegative table over an ordered scope of node indices, the working
/// object of variable elimination. Values are ranked row-major over the
/// scope's state indices.
#[derive(Debug, Clone, PartialEq)]
pub struct Factor {
    pub scope: Vec<usize>,
    pub cards: Vec<usize>,
    pub values: Vec<f64>,
}

impl Factor {
    /// The neutral factor: empty scope, single value 1.
    pub fn unit() -> Self {
        Factor {
            scope: Vec::new(),
            cards: Vec::new(),
            values: vec![1.0],
        }
    }

    /// An indicator on one variable: 1 at `state`, 0 elsewhere.
    pub fn indicator(node: usize, card: usize, state: usize) -> Self {
        let mut values = vec![0.0; card];
        values[state] = 1.0;
        Factor {
            scope: vec![node],
            cards: vec![card],
            values,
        }
    }

    /// Builds a factor from per-configuration evaluation.
    pub fn from_fn(
        scope: Vec<usize>,
        cards: Vec<usize>,
        mut f: impl FnMut(&[usize]) -> f64,
    ) -> Self {
        let values = grid::configs(&cards).map(|cfg| f(&cfg)).collect();
        Factor {
            scope,
            cards,
            values,
        }
    }

    pub fn value_at(&self, config: &[usize]) -> f64 {
        self.values[grid::config_index(&self.cards, config)]
    }

    /// Pointwise product; the result's scope is the union of both scopes,
    /// ordered as self's scope followed by the new variables of `other`.
    pub fn product(&self, other: &Factor) -> Factor {
        let mut scope = self.scope.clone();
        let mut cards = self.cards.clone();
        for (i, &v) in other.scope.iter().enumerate() {
            if !scope.contains(&v) {
                scope.push(v);
                cards.push(other.cards[i]);
            }
        }
        // Positions of each operand's variables inside the result scope.
        let self_pos: Vec<usize> = self
            .scope
            .iter()
            .map(|v| scope.iter().position(|w| w == v).unwrap())
            .collect();
        let other_pos: Vec<usize> = other
            .scope
            .iter()
            .map(|v| scope.iter().position(|w| w == v).unwrap())
            .collect();
        let mut values = Vec::with_capacity(grid::grid_size(&cards).unwrap());
        let mut self_cfg = vec![0; self.scope.len()];
        let mut other_cfg = vec![0; other.scope.len()];
        for cfg in grid::configs(&cards) {
            for (slot, &p) in self_cfg.iter_mut().zip(&self_pos) {
                *slot = cfg[p];
            }
            for (slot, &p) in other_cfg.iter_mut().zip(&other_pos) {
                *slot = cfg[p];
            }
            values.push(self.value_at(&self_cfg) * other.value_at(&other_cfg));
        }
        Factor {
            scope,
            cards,
            values,
        }
    }

    /// Sums out one variable of the scope.
    pub fn marginalize(&self, node: usize) -> Factor {
        let pos = self
            .scope
            .iter()
            .position(|&v| v == node)
            .expect("node must be in scope");
        let mut scope = self.scope.clone();
        let mut cards = self.cards.clone();
        scope.remove(pos);
        let removed_card = cards.remove(pos);
        let mut values = vec![0.0; grid::grid_size(&cards).unwrap()];
        let mut full = vec![0usize; self.scope.len()];
        for (out_idx, cfg) in grid::configs(&cards).enumerate() {
            for s in 0..removed_card {
                full[..pos].copy_from_slice(&cfg[..pos]);
                full[pos] = s;
                full[pos + 1..].copy_from_slice(&cfg[pos..]);
                values[out_idx] += self.value_at(&full);
            }
        }
        Factor {
            scope,
            cards,
            values,
        }
    }

    /// Total mass (sum over all configurations).
    pub fn total(&self) -> f64 {
        self.values.iter().sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::approx_eq_slice;

    #[test]
    fn product_aligns_shared_variables() {
        // f(A) = [0.3, 0.7], g(B, A) with B fastest... scope order (B, A).
        let f = Factor {
            scope: vec![0],
            cards: vec![2],
            values: vec![0.3, 0.7],
        };
        let g = Factor {
            scope: vec![1, 0],
            cards: vec![2, 2],
            values: vec![0.9, 0.2, 0.1, 0.8], // g(b0,a0), g(b0,a1), g(b1,a0), g(b1,a1)
        };
        let fg = f.product(&g);
        assert_eq!(fg.scope, vec![0, 1]);
        // Value at (a1, b0) = 0.7 * g(b0, a1) = 0.7 * 0.2
        assert!((fg.value_at(&[1, 0]) - 0.14).abs() < 1e-12);
    }

    #[test]
    fn marginalize_sums_out() {
        let f = Factor {
            scope: vec![0, 1],
            cards: vec![2, 2],
            values: vec![0.1, 0.2, 0.3, 0.4],
        };
        let m = f.marginalize(0);
        assert_eq!(m.scope, vec![1]);
        assert!(approx_eq_slice(&m.values, &[0.4, 0.6], 1e-12));
        assert!((f.total() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn indicator_masks_states() {
        let ind = Factor::indicator(3, 3, 1);
        assert_eq!(ind.values, vec![0.0, 1.0, 0.0]);
    }
}
