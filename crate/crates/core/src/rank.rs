//! Bit-wise rank refinement.
//!
//! Ranks start at 1 for every element. Iteration `i` looks at bit `i` of
//! every key and splits the current ranks into a *zeros* list and a *ones*
//! list (element positions kept in appearance order). Keys in the ones list
//! are larger once bit `i` is taken into account, so:
//!
//! 1. zeros ranks above the smallest ones rank are shifted down to close the
//!    gap the ones left behind, then compacted into a contiguous run;
//! 2. ones ranks are shifted up to start right after the largest zeros rank,
//!    then compacted the same way.
//!
//! After iteration `i` the rank list is exactly the dense ranking of the keys
//! truncated to their `i` low bits, so stopping early yields a valid answer
//! to a coarser question. Intermediate ranks never exceed `2n`, which bounds
//! the compaction buffer.

use alloc::vec;
use alloc::vec::Vec;

use crate::bits::{extract_bit, key_width};
use crate::Error;

/// A 1-based rank. Shares the width of element counts.
pub type Rank = usize;

/// An element position paired with its current rank.
pub type Entry = (usize, Rank);

/// Sort direction the ranks refer to.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub enum Order {
    #[default]
    Ascending,
    Descending,
}

/// The split of the current ranks by one key bit.
///
/// In ascending order `zeros` holds elements whose bit is 0 and `ones` those
/// whose bit is 1; descending order swaps the two. Both lists preserve
/// element-appearance order.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct BitPartition {
    bit: u32,
    zeros: Vec<Entry>,
    ones: Vec<Entry>,
}

impl BitPartition {
    pub fn with_capacity(n: usize) -> Self {
        Self {
            bit: 0,
            zeros: Vec::with_capacity(n),
            ones: Vec::with_capacity(n),
        }
    }

    /// Rebuilds the partition in place for bit `bit` (1-based).
    pub fn split(&mut self, elements: &[u64], ranks: &[Rank], bit: u32, order: Order) {
        debug_assert_eq!(elements.len(), ranks.len());
        self.bit = bit;
        self.zeros.clear();
        self.ones.clear();
        let flip = match order {
            Order::Ascending => 0,
            Order::Descending => 1,
        };
        for (position, (&value, &rank)) in elements.iter().zip(ranks).enumerate() {
            if extract_bit(value, bit) ^ flip == 0 {
                self.zeros.push((position, rank));
            } else {
                self.ones.push((position, rank));
            }
        }
    }

    pub fn bit(&self) -> u32 {
        self.bit
    }

    pub fn zeros(&self) -> &[Entry] {
        &self.zeros
    }

    pub fn ones(&self) -> &[Entry] {
        &self.ones
    }

    /// Total number of elements across both lists.
    pub fn len(&self) -> usize {
        self.zeros.len() + self.ones.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Copies the partition's ranks back into a full rank list.
    pub fn write_back(&self, ranks: &mut [Rank]) {
        for &(position, rank) in self.zeros.iter().chain(&self.ones) {
            ranks[position] = rank;
        }
    }
}

/// Splits `ranks` by bit `bit` of each element.
pub fn partition_by_bit(elements: &[u64], ranks: &[Rank], bit: u32, order: Order) -> BitPartition {
    let mut partition = BitPartition::with_capacity(elements.len());
    partition.split(elements, ranks, bit, order);
    partition
}

/// Parameters steering one iteration's rank updates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OperatingVars {
    /// Smallest rank in the ones list.
    pub min_one: Rank,
    /// Largest zeros rank that is `<= min_one`, or 0 if there is none.
    pub zero_floor: Rank,
    /// Smallest zeros rank that is `>= min_one`, or `zero_floor` if there is
    /// none.
    pub zero_ceiling: Rank,
    /// Amount subtracted from zeros ranks above `min_one`.
    pub zero_shift: Rank,
}

impl OperatingVars {
    /// Amount added to every ones rank once the zeros list has been compacted
    /// up to `max_assigned`.
    pub fn one_shift(&self, max_assigned: Rank) -> Rank {
        debug_assert!(max_assigned + 1 >= self.min_one);
        max_assigned + 1 - self.min_one
    }
}

/// Derives the operating variables from a partition, or `None` when the ones
/// list is empty (the iteration changes nothing).
pub fn compute_operating_vars(partition: &BitPartition) -> Option<OperatingVars> {
    let min_one = partition.ones.iter().map(|&(_, r)| r).min()?;

    let mut floor = 0;
    let mut ceiling = None::<Rank>;
    for &(_, rank) in &partition.zeros {
        if rank <= min_one {
            floor = floor.max(rank);
        }
        if rank >= min_one {
            ceiling = Some(ceiling.map_or(rank, |c| c.min(rank)));
        }
    }
    // Without a zeros rank at or above min_one the ceiling falls back to the
    // floor and there is nothing to shift.
    let zero_shift = match ceiling {
        Some(c) if floor != min_one => c - min_one,
        _ => 0,
    };
    let ceiling = ceiling.unwrap_or(floor);

    Some(OperatingVars {
        min_one,
        zero_floor: floor,
        zero_ceiling: ceiling,
        zero_shift,
    })
}

/// Shifts zeros ranks above `vars.min_one` down by `vars.zero_shift`; ranks at
/// or below `min_one` are kept.
pub fn update_zero_ranks(partition: &mut BitPartition, vars: &OperatingVars) {
    if vars.zero_shift == 0 {
        return;
    }
    for (_, rank) in &mut partition.zeros {
        if *rank > vars.min_one {
            *rank -= vars.zero_shift;
            // Shifted ranks stay at or above min_one, above every kept rank.
            debug_assert!(*rank >= vars.min_one);
        }
    }
}

/// Shifts every ones rank up by `max_assigned + 1 - min_one`, returning the
/// shift applied.
///
/// Fails if any shifted rank leaves `[1, 2n]`, which would mean the rank
/// bound was broken upstream.
pub fn update_one_ranks(
    partition: &mut BitPartition,
    vars: &OperatingVars,
    max_assigned: Rank,
) -> Result<Rank, Error> {
    let shift = vars.one_shift(max_assigned);
    let bound = 2 * partition.len();
    for (_, rank) in &mut partition.ones {
        *rank += shift;
        if *rank > bound {
            return Err(Error::RankOutOfBounds { rank: *rank, bound });
        }
    }
    Ok(shift)
}

/// Scatter buffer for rank compaction, indexed by rank value in `[1, 2n]`.
///
/// Ranks are marked in an occupancy bitmap, then a single walk from the
/// lowest to the highest marked word records how many marked ranks precede
/// each word. A rank's compacted value is the lowest rank plus the number of
/// marked ranks below it, so equal input ranks share a slot and an output
/// value. The bitmap keeps the scatter and gather passes cache resident.
#[derive(Debug, Clone)]
pub struct ConsolidationBuffer {
    capacity: usize,
    occupied: Vec<u64>,
    // Marked ranks in the words before this one, counted from the lowest
    // marked word of the current call.
    preceding: Vec<Rank>,
    max_assigned: Rank,
}

impl ConsolidationBuffer {
    /// A buffer able to hold any rank of an `n`-element list.
    pub fn new(n: usize) -> Self {
        let capacity = 2 * n;
        let words = capacity / 64 + 1;
        Self {
            capacity,
            occupied: vec![0; words],
            preceding: vec![0; words],
            max_assigned: 0,
        }
    }

    /// Largest rank accepted, `2n`.
    pub fn capacity(&self) -> usize {
        self.capacity
    }

    /// Largest value handed out by the last [`consolidate`](Self::consolidate)
    /// call; 0 if that call saw no entries.
    pub fn max_assigned(&self) -> Rank {
        self.max_assigned
    }

    /// Compacts the ranks in `entries` in place into a contiguous run that
    /// starts at their minimum, preserving relative order. Returns the
    /// largest rank assigned.
    pub fn consolidate(&mut self, entries: &mut [Entry]) -> Result<Rank, Error> {
        self.max_assigned = 0;
        if entries.is_empty() {
            return Ok(0);
        }

        let bound = self.capacity;
        let mut lo = Rank::MAX;
        let mut hi = 0;
        for &(_, rank) in entries.iter() {
            if rank == 0 || rank > bound {
                self.clear(lo, hi);
                return Err(Error::RankOutOfBounds { rank, bound });
            }
            self.occupied[rank / 64] |= 1 << (rank % 64);
            lo = lo.min(rank);
            hi = hi.max(rank);
        }

        let (first, last) = (lo / 64, hi / 64);
        let mut seen = 0;
        for (word, before) in self.occupied[first..=last]
            .iter()
            .zip(&mut self.preceding[first..=last])
        {
            *before = seen;
            seen += word.count_ones() as Rank;
        }

        for (_, rank) in entries.iter_mut() {
            let (w, b) = (*rank / 64, *rank % 64);
            let below = (self.occupied[w] & ((1u64 << b) - 1)).count_ones() as Rank;
            *rank = lo + self.preceding[w] + below;
        }
        self.clear(lo, hi);

        self.max_assigned = lo + seen - 1;
        Ok(self.max_assigned)
    }

    fn clear(&mut self, lo: Rank, hi: Rank) {
        if lo <= hi {
            self.occupied[lo / 64..=hi / 64].fill(0);
        }
    }
}

/// Compacts a list of `(position, rank)` entries belonging to an `n`-element
/// rank list. Returns the compacted entries and the largest rank assigned
/// (0 for an empty list).
pub fn consolidate_ranks(entries: &[Entry], n: usize) -> Result<(Vec<Entry>, Rank), Error> {
    let mut out = entries.to_vec();
    let max = ConsolidationBuffer::new(n).consolidate(&mut out)?;
    Ok((out, max))
}

/// Counters gathered while ranking.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct RankStats {
    /// Bits processed.
    pub iterations: u32,
    /// Iterations that found an empty ones list and changed nothing.
    pub skipped: u32,
    /// Largest rank seen during any update phase. Never exceeds `2n`.
    pub peak_rank: Rank,
}

/// What one iteration did.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Iteration {
    /// The ones list was empty.
    Skipped,
    Updated {
        vars: OperatingVars,
        one_shift: Rank,
        peak_rank: Rank,
    },
}

/// Reusable scratch space for ranking lists of up to `n` elements.
#[derive(Debug, Clone)]
pub struct Ranker {
    partition: BitPartition,
    buffer: ConsolidationBuffer,
    stats: RankStats,
}

impl Ranker {
    pub fn new(n: usize) -> Self {
        Self {
            partition: BitPartition::with_capacity(n),
            buffer: ConsolidationBuffer::new(n),
            stats: RankStats::default(),
        }
    }

    pub fn stats(&self) -> RankStats {
        self.stats
    }

    /// Refines `ranks` by bit `bit` of `elements`.
    ///
    /// `ranks` must be the dense ranking of the keys truncated to their
    /// `bit - 1` low bits (all ones for `bit == 1`).
    pub fn iterate(
        &mut self,
        elements: &[u64],
        ranks: &mut [Rank],
        bit: u32,
        order: Order,
    ) -> Result<Iteration, Error> {
        if elements.len() != ranks.len() {
            return Err(Error::LengthMismatch {
                elements: elements.len(),
                ranks: ranks.len(),
            });
        }
        if !(1..=64).contains(&bit) {
            return Err(Error::BitOutOfRange(bit));
        }
        if self.buffer.capacity() < 2 * elements.len() {
            self.buffer = ConsolidationBuffer::new(elements.len());
        }

        self.stats.iterations += 1;
        self.partition.split(elements, ranks, bit, order);
        let Some(vars) = compute_operating_vars(&self.partition) else {
            self.stats.skipped += 1;
            return Ok(Iteration::Skipped);
        };

        update_zero_ranks(&mut self.partition, &vars);
        let max_zero = self.buffer.consolidate(&mut self.partition.zeros)?;

        let one_shift = update_one_ranks(&mut self.partition, &vars, max_zero)?;
        let peak_rank = self
            .partition
            .ones
            .iter()
            .chain(&self.partition.zeros)
            .map(|&(_, r)| r)
            .max()
            .unwrap_or(0);
        self.stats.peak_rank = self.stats.peak_rank.max(peak_rank);
        self.buffer.consolidate(&mut self.partition.ones)?;

        self.partition.write_back(ranks);
        Ok(Iteration::Updated {
            vars,
            one_shift,
            peak_rank,
        })
    }

    /// Ranks `elements`, processing at most `bit_limit` low bits.
    pub fn rank(&mut self, elements: &[u64], order: Order, bit_limit: Option<u32>) -> Vec<Rank> {
        self.stats = RankStats::default();
        let mut ranks = vec![1; elements.len()];
        let width = key_width(elements);
        let bits = bit_limit.map_or(width, |limit| limit.min(width));
        for bit in 1..=bits {
            self.iterate(elements, &mut ranks, bit, order)
                .expect("rank state stays within [1, 2n]");
        }
        ranks
    }
}

/// Runs a single iteration on a copy of `ranks`.
pub fn rank_iteration(
    elements: &[u64],
    ranks: &[Rank],
    bit: u32,
    order: Order,
) -> Result<Vec<Rank>, Error> {
    let mut out = ranks.to_vec();
    Ranker::new(elements.len()).iterate(elements, &mut out, bit, order)?;
    Ok(out)
}

/// Ranks non-negative keys in place of appearance.
///
/// With `bit_limit = Some(i)` only the `i` low bits are considered, giving the
/// dense ranking of `value mod 2^i`. Equal keys share a rank.
pub fn compute_ranks(elements: &[u64], order: Order, bit_limit: Option<u32>) -> Vec<Rank> {
    Ranker::new(elements.len()).rank(elements, order, bit_limit)
}

/// [`compute_ranks`] plus the counters gathered along the way.
pub fn compute_ranks_with_stats(
    elements: &[u64],
    order: Order,
    bit_limit: Option<u32>,
) -> (Vec<Rank>, RankStats) {
    let mut ranker = Ranker::new(elements.len());
    let ranks = ranker.rank(elements, order, bit_limit);
    (ranks, ranker.stats())
}
