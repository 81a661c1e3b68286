use crate::rank::Rank;

/// Errors reported by the ranking and post-processing routines.
///
/// `RankOutOfBounds` signals a broken internal invariant (an intermediate
/// rank escaped the `[1, 2n]` window) rather than bad user input.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("length mismatch: {elements} elements but {ranks} ranks")]
    LengthMismatch { elements: usize, ranks: usize },

    #[error("rank {rank} outside the valid window [1, {bound}]")]
    RankOutOfBounds { rank: Rank, bound: Rank },

    #[error("bit index {0} outside 1..=64")]
    BitOutOfRange(u32),

    #[error("ranks do not form a permutation of 1..={0}")]
    NotAPermutation(usize),
}
