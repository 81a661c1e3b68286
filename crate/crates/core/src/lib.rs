//! In-situ integer ranking by least-significant-bit-first partitioning.
//!
//! Given a list of integers, [`compute_ranks`] returns the rank of every
//! element in sorted order, reported at the element's original position.
//! The input is never reordered and no comparison sort is invoked: the ranks
//! are refined one bit at a time, from the LSB upwards, so after `i` bits the
//! rank list is exactly the dense ranking of the values truncated to their
//! `i` low bits. Total work is `O(n k)` for `k`-bit keys.
//!
//! The crate is `no_std` and only needs `alloc`.
//!
//! ```
//! use sonik_core::{compute_ranks, Order};
//!
//! let ranks = compute_ranks(&[7, 2, 1, 5, 4], Order::Ascending, None);
//! assert_eq!(ranks, [5, 2, 1, 4, 3]);
//! ```
//!
//! Signed input, stable ranks and sorted reconstruction live in
//! [`transform`]; the brute-force reference rankings used for differential
//! testing live in [`oracle`].

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod bits;
mod error;
pub mod oracle;
pub mod rank;
pub mod transform;

pub use error::Error;
pub use rank::{compute_ranks, compute_ranks_with_stats, Order, Rank, RankStats, Ranker};
pub use transform::{rank_values, RankOptions};
