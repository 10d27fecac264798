//! Row-major indexing over configuration grids.
//!
//! A configuration assigns one state index to each variable in an ordered
//! scope. Configurations are ranked row-major over state indices: the last
//! variable varies fastest. CPT rows, factor value arrays and document
//! serialization all share this ranking.

/// Ranks `states` (one index per card in `cards`) row-major.
pub fn config_index(cards: &[usize], states: &[usize]) -> usize {
    debug_assert_eq!(cards.len(), states.len());
    let mut idx = 0;
    for (&card, &s) in cards.iter().zip(states) {
        debug_assert!(s < card);
        idx = idx * card + s;
    }
    idx
}

/// Inverse of [`config_index`].
pub fn index_to_config(cards: &[usize], mut idx: usize) -> Vec<usize> {
    let mut states = vec![0; cards.len()];
    for (pos, &card) in cards.iter().enumerate().rev() {
        states[pos] = idx % card;
        idx /= card;
    }
    states
}

/// Number of configurations, or `None` on overflow.
pub fn grid_size(cards: &[usize]) -> Option<usize> {
    cards.iter().try_fold(1usize, |acc, &c| acc.checked_mul(c))
}

/// Iterates all configurations of `cards` in row-major order.
pub fn configs(cards: &[usize]) -> ConfigIter {
    ConfigIter {
        cards: cards.to_vec(),
        next: Some(vec![0; cards.len()]),
    }
}

pub struct ConfigIter {
    cards: Vec<usize>,
    next: Option<Vec<usize>>,
}

impl Iterator for ConfigIter {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.cards.iter().any(|&c| c == 0) {
            return None;
        }
        let current = self.next.take()?;
        let mut succ = current.clone();
        // Odometer increment, last position fastest.
        for pos in (0..self.cards.len()).rev() {
            succ[pos] += 1;
            if succ[pos] < self.cards[pos] {
                self.next = Some(succ);
                return Some(current);
            }
            succ[pos] = 0;
        }
        // Wrapped around: `current` was the last configuration.
        Some(current)
    }
}
