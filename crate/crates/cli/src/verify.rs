//! Differential verification of the ranker against the brute-force oracles.

use std::fmt;
use std::io::Write;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use sonik_core::bits::key_width;
use sonik_core::oracle::{rank_oracle, OracleConfig};
use sonik_core::transform::{normalize, normalize_negatives, rank_values, sorted_from_ranks};
use sonik_core::{compute_ranks_with_stats, Order, Rank, RankOptions};

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VerifyConfig {
    pub trials: u64,
    pub seed: u64,
    pub max_n: usize,
    pub lo: i64,
    pub hi: i64,
}

impl VerifyConfig {
    pub fn validate(&self) -> Result<(), CliError> {
        if self.trials == 0 {
            return Err(CliError::Config("--trials must be at least 1".into()));
        }
        if self.lo > self.hi {
            return Err(CliError::Config(format!(
                "--lo ({}) must not exceed --hi ({})",
                self.lo, self.hi
            )));
        }
        Ok(())
    }
}

/// A failed check, with everything needed to reproduce it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mismatch {
    pub check: &'static str,
    pub input: Vec<i64>,
    pub order: Order,
    pub stable: bool,
    pub bit_limit: Option<u32>,
    pub expected: String,
    pub got: String,
}

impl fmt::Display for Mismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "check:     {}", self.check)?;
        writeln!(f, "input:     {:?}", self.input)?;
        writeln!(
            f,
            "mode:      order={:?} stable={}",
            self.order, self.stable
        )?;
        match self.bit_limit {
            Some(b) => writeln!(f, "bit_limit: {b}")?,
            None => writeln!(f, "bit_limit: none")?,
        }
        writeln!(f, "expected:  {}", self.expected)?;
        write!(f, "got:       {}", self.got)
    }
}

/// Counters from checking one instance.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct InstanceReport {
    /// Individual rank lists compared against an oracle.
    pub comparisons: usize,
    /// Largest intermediate rank seen by the ranker.
    pub peak_rank: Rank,
}

/// Runs every check on one input: both orders, dense and stable ranks, every
/// bit-limit prefix, the `2n` rank bound, the untouched input and the sorted
/// reconstruction.
pub fn check_instance(values: &[i64]) -> Result<InstanceReport, Box<Mismatch>> {
    let snapshot = values.to_vec();
    let n = values.len();
    let mut report = InstanceReport::default();
    let width = key_width(&normalize_negatives(values).0);

    for order in [Order::Ascending, Order::Descending] {
        for stable in [false, true] {
            let mismatch = |check, bit_limit, expected: &dyn fmt::Debug, got: &dyn fmt::Debug| {
                Box::new(Mismatch {
                    check,
                    input: snapshot.clone(),
                    order,
                    stable,
                    bit_limit,
                    expected: format!("{expected:?}"),
                    got: format!("{got:?}"),
                })
            };

            let limits = std::iter::once(None).chain((1..=width).map(Some));
            for bit_limit in limits {
                let got = rank_values(
                    values,
                    RankOptions {
                        order,
                        stable,
                        bit_limit,
                    },
                );
                let expected = rank_oracle(values, oracle_config(order, stable, bit_limit));
                report.comparisons += 1;
                if got != expected {
                    return Err(mismatch("ranks", bit_limit, &expected, &got));
                }
                if values != snapshot.as_slice() {
                    return Err(mismatch("input unchanged", bit_limit, &snapshot, &values));
                }
            }

            let ranks = rank_values(
                values,
                RankOptions {
                    order,
                    stable,
                    bit_limit: None,
                },
            );
            let sorted = sorted_from_ranks(values, &ranks)
                .map_err(|e| mismatch("sorted reconstruction", None, &"a permutation", &e))?;
            let mut expected = snapshot.clone();
            match order {
                Order::Ascending => expected.sort(),
                Order::Descending => expected.sort_by(|a, b| b.cmp(a)),
            }
            if sorted != expected {
                return Err(mismatch("sorted reconstruction", None, &expected, &sorted));
            }
        }

        let keys = normalize(values).0;
        let (_, stats) = compute_ranks_with_stats(&keys, order, None);
        report.peak_rank = report.peak_rank.max(stats.peak_rank);
        if stats.peak_rank > 2 * n {
            return Err(Box::new(Mismatch {
                check: "peak rank <= 2n",
                input: snapshot.clone(),
                order,
                stable: false,
                bit_limit: None,
                expected: format!("<= {}", 2 * n),
                got: stats.peak_rank.to_string(),
            }));
        }
    }
    Ok(report)
}

fn oracle_config(order: Order, stable: bool, bit_limit: Option<u32>) -> OracleConfig {
    OracleConfig {
        mask_bits: bit_limit,
        descending: order == Order::Descending,
        stable,
    }
}

/// Draws one instance: a length in `0..=max_n`, then values in `[lo, hi]`.
pub fn random_instance(rng: &mut ChaCha8Rng, max_n: usize, lo: i64, hi: i64) -> Vec<i64> {
    let n = rng.random_range(0..=max_n);
    (0..n).map(|_| rng.random_range(lo..=hi)).collect()
}

/// Summary of a passing campaign.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct VerifySummary {
    pub trials: u64,
    pub comparisons: usize,
}

/// Runs a seeded campaign, writing a header and a final status line to `out`.
/// Stops at the first mismatch.
pub fn run_verify<W: Write>(config: &VerifyConfig, out: &mut W) -> Result<VerifySummary, CliError> {
    config.validate()?;
    writeln!(
        out,
        "verify: seed={} trials={} max_n={} range=[{}, {}] rng=ChaCha8",
        config.seed, config.trials, config.max_n, config.lo, config.hi
    )?;

    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut summary = VerifySummary::default();
    for trial in 0..config.trials {
        let values = random_instance(&mut rng, config.max_n, config.lo, config.hi);
        match check_instance(&values) {
            Ok(report) => {
                summary.trials += 1;
                summary.comparisons += report.comparisons;
            }
            Err(mismatch) => {
                writeln!(out, "FAIL at trial {trial}")?;
                return Err(CliError::Verify(mismatch));
            }
        }
    }
    writeln!(
        out,
        "ok: {} trials, {} rank lists compared, 0 mismatches",
        summary.trials, summary.comparisons
    )?;
    Ok(summary)
}
