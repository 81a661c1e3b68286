//! Input normalization and output post-processing around the ranker.
//!
//! Signed values are translated so that they become non-negative before
//! ranking; translation preserves order, so ranks are unaffected. Dense ranks
//! can then be turned into stable (permutation) ranks, and stable ranks into
//! the sorted list with one placement pass.

use alloc::vec;
use alloc::vec::Vec;

use crate::rank::{Order, Rank, Ranker};
use crate::Error;

/// The translation applied by [`normalize`] or [`normalize_negatives`].
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct NormalizationOffset {
    /// Value mapped to key 0.
    pub offset: i64,
    /// Whether any shift took place.
    pub applied: bool,
}

impl NormalizationOffset {
    /// Maps a normalized key back to its original value.
    pub fn restore(&self, key: u64) -> i64 {
        (self.offset as i128 + key as i128) as i64
    }

    fn shift(&self, value: i64) -> u64 {
        (value as i128 - self.offset as i128) as u64
    }
}

/// Subtracts the minimum from every value so the smallest key is 0.
///
/// This both removes negatives and drops any high bits shared by all keys,
/// which can only reduce the number of bit iterations. The difference of two
/// `i64`s always fits in a `u64`, so this cannot overflow.
pub fn normalize(values: &[i64]) -> (Vec<u64>, NormalizationOffset) {
    let min = values.iter().copied().min().unwrap_or(0);
    translate(values, min)
}

/// Shifts the values only if some are negative, so that the most negative
/// becomes 0. Non-negative input keeps its own bit patterns, which matters
/// when ranking by a limited number of low bits.
pub fn normalize_negatives(values: &[i64]) -> (Vec<u64>, NormalizationOffset) {
    let min = values.iter().copied().min().unwrap_or(0).min(0);
    translate(values, min)
}

fn translate(values: &[i64], offset: i64) -> (Vec<u64>, NormalizationOffset) {
    let norm = NormalizationOffset {
        offset,
        applied: offset != 0,
    };
    (values.iter().map(|&v| norm.shift(v)).collect(), norm)
}

/// Turns dense ranks into stable ranks with one counting pass: elements that
/// share a dense rank get consecutive stable ranks in appearance order.
///
/// Works for dense ranks of either order. The result is a permutation of
/// `1..=n`.
pub fn stabilize_ranks<T>(elements: &[T], dense_ranks: &[Rank]) -> Result<Vec<Rank>, Error> {
    let n = elements.len();
    if dense_ranks.len() != n {
        return Err(Error::LengthMismatch {
            elements: n,
            ranks: dense_ranks.len(),
        });
    }

    // next[r] starts as the count of rank r, then becomes its first stable rank.
    let mut next = vec![0usize; n + 1];
    for &rank in dense_ranks {
        if rank == 0 || rank > n {
            return Err(Error::RankOutOfBounds { rank, bound: n });
        }
        next[rank] += 1;
    }
    let mut start = 1;
    for slot in next.iter_mut().skip(1) {
        let count = *slot;
        *slot = start;
        start += count;
    }

    Ok(dense_ranks
        .iter()
        .map(|&rank| {
            let stable = next[rank];
            next[rank] += 1;
            stable
        })
        .collect())
}

/// Places every element at its rank, producing the sorted list in one pass.
///
/// Ranks that are not already a permutation (dense ranks with ties) are
/// stabilized first. Descending ranks yield a non-increasing list.
pub fn sorted_from_ranks<T: Copy>(elements: &[T], ranks: &[Rank]) -> Result<Vec<T>, Error> {
    let n = elements.len();
    if ranks.len() != n {
        return Err(Error::LengthMismatch {
            elements: n,
            ranks: ranks.len(),
        });
    }

    let stabilized;
    let ranks = if is_permutation(ranks) {
        ranks
    } else {
        stabilized = stabilize_ranks(elements, ranks)?;
        &stabilized
    };

    let mut sorted: Vec<Option<T>> = vec![None; n];
    for (&element, &rank) in elements.iter().zip(ranks) {
        sorted[rank - 1] = Some(element);
    }
    sorted
        .into_iter()
        .collect::<Option<Vec<T>>>()
        .ok_or(Error::NotAPermutation(n))
}

fn is_permutation(ranks: &[Rank]) -> bool {
    let n = ranks.len();
    let mut seen = vec![false; n + 1];
    ranks
        .iter()
        .all(|&r| (1..=n).contains(&r) && !core::mem::replace(&mut seen[r], true))
}

/// Options for [`rank_values`].
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct RankOptions {
    pub order: Order,
    /// Break ties by appearance order, yielding a permutation.
    pub stable: bool,
    /// Rank by this many low bits only.
    pub bit_limit: Option<u32>,
}

/// Ranks signed values: normalize, rank, optionally stabilize.
///
/// Full rankings use the minimum-shift normalization. With a bit limit the
/// low bits must be those of the caller's values, so only negative input is
/// shifted.
pub fn rank_values(values: &[i64], options: RankOptions) -> Vec<Rank> {
    let (keys, _) = match options.bit_limit {
        None => normalize(values),
        Some(_) => normalize_negatives(values),
    };
    let ranks = Ranker::new(keys.len()).rank(&keys, options.order, options.bit_limit);
    if options.stable {
        stabilize_ranks(values, &ranks).expect("dense ranks lie in 1..=n")
    } else {
        ranks
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{dense_rank_oracle, stable_rank_oracle, OracleConfig};
    use crate::rank::compute_ranks;
    use proptest::prelude::*;

    #[test]
    fn normalize_examples() {
        let (keys, off) = normalize(&[-3, 5, 0]);
        assert_eq!(keys, [0, 8, 3]);
        assert_eq!(
            off,
            NormalizationOffset {
                offset: -3,
                applied: true
            }
        );

        let (keys, off) = normalize(&[7, 2, 1, 5, 4]);
        assert_eq!(keys, [6, 1, 0, 4, 3]);
        assert_eq!(off.offset, 1);
        assert_eq!(
            compute_ranks(&keys, Order::Ascending, None),
            [5, 2, 1, 4, 3]
        );

        let (keys, off) = normalize(&[0, 9]);
        assert_eq!(keys, [0, 9]);
        assert_eq!(
            off,
            NormalizationOffset {
                offset: 0,
                applied: false
            }
        );

        let (keys, off) = normalize(&[]);
        assert!(keys.is_empty());
        assert!(!off.applied);
    }

    #[test]
    fn normalize_full_i64_range() {
        let (keys, off) = normalize(&[i64::MAX, i64::MIN, 0]);
        assert_eq!(keys, [u64::MAX, 0, 1 << 63]);
        assert_eq!(off.restore(u64::MAX), i64::MAX);
        assert_eq!(off.restore(0), i64::MIN);
    }

    #[test]
    fn normalize_negatives_leaves_non_negative_input() {
        let (keys, off) = normalize_negatives(&[7, 2, 1, 5, 4]);
        assert_eq!(keys, [7, 2, 1, 5, 4]);
        assert!(!off.applied);
        let (keys, off) = normalize_negatives(&[-3, 5, 0]);
        assert_eq!(keys, [0, 8, 3]);
        assert_eq!(off.offset, -3);
    }

    #[test]
    fn stabilize_examples() {
        assert_eq!(stabilize_ranks(&[2, 4, 2], &[1, 2, 1]).unwrap(), [1, 3, 2]);
        assert_eq!(
            stabilize_ranks(&[7, 2, 1, 5, 4], &[5, 2, 1, 4, 3]).unwrap(),
            [5, 2, 1, 4, 3]
        );
        assert_eq!(stabilize_ranks(&[5, 5, 5], &[1, 1, 1]).unwrap(), [1, 2, 3]);
        assert!(stabilize_ranks::<i64>(&[], &[]).unwrap().is_empty());
    }

    #[test]
    fn stabilize_rejects_bad_input() {
        assert_eq!(
            stabilize_ranks(&[1, 2], &[1]),
            Err(Error::LengthMismatch {
                elements: 2,
                ranks: 1
            })
        );
        assert_eq!(
            stabilize_ranks(&[1, 2], &[1, 3]),
            Err(Error::RankOutOfBounds { rank: 3, bound: 2 })
        );
        assert_eq!(
            stabilize_ranks(&[1, 2], &[0, 1]),
            Err(Error::RankOutOfBounds { rank: 0, bound: 2 })
        );
    }

    #[test]
    fn sorted_examples() {
        assert_eq!(
            sorted_from_ranks(&[7, 2, 1, 5, 4], &[5, 2, 1, 4, 3]).unwrap(),
            [1, 2, 4, 5, 7]
        );
        assert_eq!(sorted_from_ranks(&[9], &[1]).unwrap(), [9]);
        assert_eq!(
            sorted_from_ranks(&[2, 4, 2], &[1, 2, 1]).unwrap(),
            [2, 2, 4]
        );
        assert_eq!(
            sorted_from_ranks(&[7, 2, 1, 5, 4], &[1, 4, 5, 2, 3]).unwrap(),
            [7, 5, 4, 2, 1]
        );
        assert_eq!(
            sorted_from_ranks(&[1, 2], &[1]),
            Err(Error::LengthMismatch {
                elements: 2,
                ranks: 1
            })
        );
    }

    #[test]
    fn pipeline_examples() {
        let v = [7, 2, 1, 5, 4];
        assert_eq!(rank_values(&v, RankOptions::default()), [5, 2, 1, 4, 3]);
        let desc = RankOptions {
            order: Order::Descending,
            ..Default::default()
        };
        assert_eq!(rank_values(&v, desc), [1, 4, 5, 2, 3]);
        let two_bits = RankOptions {
            bit_limit: Some(2),
            ..Default::default()
        };
        assert_eq!(rank_values(&v, two_bits), [4, 3, 2, 2, 1]);
        let stable = RankOptions {
            stable: true,
            ..Default::default()
        };
        assert_eq!(rank_values(&[2, 4, 2], stable), [1, 3, 2]);
        assert_eq!(rank_values(&[-3, 5, 0], RankOptions::default()), [1, 3, 2]);
    }

    fn config(order: Order) -> OracleConfig {
        match order {
            Order::Ascending => OracleConfig::ascending(),
            Order::Descending => OracleConfig::descending(),
        }
    }

    proptest! {
        #[test]
        fn shift_invariance(values in prop::collection::vec(any::<i64>(), 0..50), desc in any::<bool>()) {
            let order = if desc { Order::Descending } else { Order::Ascending };
            let opts = RankOptions { order, ..Default::default() };
            prop_assert_eq!(rank_values(&values, opts), dense_rank_oracle(&values, config(order)));
        }

        #[test]
        fn stable_ranks_match_stable_sort(values in prop::collection::vec(-20i64..20, 0..60), desc in any::<bool>()) {
            let order = if desc { Order::Descending } else { Order::Ascending };
            let opts = RankOptions { order, stable: true, bit_limit: None };
            let stable = rank_values(&values, opts);
            prop_assert_eq!(&stable, &stable_rank_oracle(&values, config(order)));

            let sorted = sorted_from_ranks(&values, &stable).unwrap();
            let mut expected = values.clone();
            if desc {
                expected.sort_by(|a, b| b.cmp(a));
            } else {
                expected.sort();
            }
            prop_assert_eq!(&sorted, &expected);

            // Re-ranking the sorted output gives the identity in stable mode.
            prop_assert_eq!(rank_values(&sorted, opts), (1..=values.len()).collect::<Vec<_>>());
        }
    }
}
