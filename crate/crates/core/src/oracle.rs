//! Brute-force reference rankings.
//!
//! These are the naive sort-based baselines used to arbitrate the bit-wise
//! ranker in differential tests and in `sonik verify`. They deliberately
//! share no code with [`crate::rank`] or [`crate::transform`].

use alloc::vec::Vec;

use crate::rank::Rank;

/// Selects which reference ranking to compute.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct OracleConfig {
    /// Rank only the given number of low bits of each value. Negative input
    /// is first shifted so its minimum lands on zero; non-negative input is
    /// masked as is. `None` ranks the full values. Must be at most 64.
    pub mask_bits: Option<u32>,
    pub descending: bool,
    pub stable: bool,
}

impl OracleConfig {
    pub fn ascending() -> Self {
        Self::default()
    }

    pub fn descending() -> Self {
        Self {
            descending: true,
            ..Self::default()
        }
    }

    pub fn masked(mut self, bits: u32) -> Self {
        self.mask_bits = Some(bits);
        self
    }

    pub fn stable(mut self) -> Self {
        self.stable = true;
        self
    }
}

/// Dispatches to [`dense_rank_oracle`] or [`stable_rank_oracle`] on
/// `config.stable`.
pub fn rank_oracle(elements: &[i64], config: OracleConfig) -> Vec<Rank> {
    if config.stable {
        stable_rank_oracle(elements, config)
    } else {
        dense_rank_oracle(elements, config)
    }
}

/// Dense ranks: `1 + |{distinct values strictly less than v}|` (strictly
/// greater in descending mode).
pub fn dense_rank_oracle(elements: &[i64], config: OracleConfig) -> Vec<Rank> {
    let keys = keys(elements, config.mask_bits);

    let mut distinct = keys.clone();
    distinct.sort_unstable();
    distinct.dedup();

    keys.iter()
        .map(|key| {
            let below = distinct.binary_search(key).expect("key is present");
            if config.descending {
                distinct.len() - below
            } else {
                below + 1
            }
        })
        .collect()
}

/// Stable ranks: `|{j : v[j] < v[i]}| + |{j <= i : v[j] = v[i]}|`, i.e. the
/// 1-based position of each element in a stable sort. Always a permutation
/// of `1..=n`.
pub fn stable_rank_oracle(elements: &[i64], config: OracleConfig) -> Vec<Rank> {
    let keys = keys(elements, config.mask_bits);

    let mut order: Vec<usize> = (0..keys.len()).collect();
    if config.descending {
        order.sort_by(|&a, &b| keys[b].cmp(&keys[a]));
    } else {
        order.sort_by_key(|&i| keys[i]);
    }

    let mut ranks = alloc::vec![0; keys.len()];
    for (sorted_pos, &i) in order.iter().enumerate() {
        ranks[i] = sorted_pos + 1;
    }
    ranks
}

// Non-negative, optionally masked keys; the same bit patterns the ranker sees.
fn keys(elements: &[i64], mask_bits: Option<u32>) -> Vec<u64> {
    let min = elements.iter().copied().min().unwrap_or(0).min(0);
    let mask = match mask_bits {
        Some(bits) if bits < 64 => (1u64 << bits) - 1,
        Some(bits) => {
            assert!(bits == 64, "mask_bits {bits} exceeds 64");
            u64::MAX
        }
        None => u64::MAX,
    };
    elements
        .iter()
        .map(|&v| (v as i128 - min as i128) as u64 & mask)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    const RUNNING: [i64; 5] = [7, 2, 1, 5, 4];

    #[test]
    fn dense_running_example() {
        assert_eq!(
            dense_rank_oracle(&RUNNING, OracleConfig::ascending()),
            [5, 2, 1, 4, 3]
        );
    }

    #[test]
    fn dense_with_duplicates() {
        assert_eq!(
            dense_rank_oracle(&[2, 4, 2], OracleConfig::ascending()),
            [1, 2, 1]
        );
    }

    #[test]
    fn dense_masked_one_bit() {
        // Low bits {1,0,1,1,0}.
        assert_eq!(
            dense_rank_oracle(&RUNNING, OracleConfig::ascending().masked(1)),
            [2, 1, 2, 2, 1]
        );
        // Two low bits {3,2,1,1,0}.
        assert_eq!(
            dense_rank_oracle(&RUNNING, OracleConfig::ascending().masked(2)),
            [4, 3, 2, 2, 1]
        );
    }

    #[test]
    fn negative_input_is_shifted_before_masking() {
        // Shifted by 3: {0, 8, 3}, low two bits {0, 0, 3}.
        assert_eq!(
            dense_rank_oracle(&[-3, 5, 0], OracleConfig::ascending().masked(2)),
            [1, 1, 2]
        );
    }

    #[test]
    fn dense_descending() {
        assert_eq!(
            dense_rank_oracle(&RUNNING, OracleConfig::descending()),
            [1, 4, 5, 2, 3]
        );
        assert_eq!(
            dense_rank_oracle(&[2, 4, 2], OracleConfig::descending()),
            [2, 1, 2]
        );
    }

    #[test]
    fn stable_examples() {
        assert_eq!(
            stable_rank_oracle(&[2, 4, 2], OracleConfig::ascending()),
            [1, 3, 2]
        );
        assert_eq!(
            stable_rank_oracle(&RUNNING, OracleConfig::ascending()),
            [5, 2, 1, 4, 3]
        );
        assert_eq!(
            stable_rank_oracle(&[5, 5, 5], OracleConfig::ascending()),
            [1, 2, 3]
        );
        assert_eq!(
            stable_rank_oracle(&[2, 4, 2], OracleConfig::descending()),
            [2, 1, 3]
        );
    }

    #[test]
    fn mask_zero_and_full() {
        assert_eq!(
            dense_rank_oracle(&RUNNING, OracleConfig::ascending().masked(0)),
            [1; 5]
        );
        assert_eq!(
            dense_rank_oracle(&RUNNING, OracleConfig::ascending().masked(64)),
            [5, 2, 1, 4, 3]
        );
    }

    #[test]
    fn extreme_values() {
        let v = [i64::MAX, i64::MIN, 0];
        assert_eq!(dense_rank_oracle(&v, OracleConfig::ascending()), [3, 1, 2]);
    }

    #[test]
    fn empty() {
        assert!(dense_rank_oracle(&[], OracleConfig::ascending()).is_empty());
        assert!(stable_rank_oracle(&[], OracleConfig::descending()).is_empty());
    }

    #[test]
    fn stable_matches_defining_formula() {
        let v = [3i64, -1, 3, 0, -1, 3, 7];
        let n = v.len();
        let formula: Vec<Rank> = (0..n)
            .map(|i| {
                (0..n).filter(|&j| v[j] < v[i]).count() + (0..=i).filter(|&j| v[j] == v[i]).count()
            })
            .collect();
        assert_eq!(stable_rank_oracle(&v, OracleConfig::ascending()), formula);
    }
}
