//! Timing harness comparing the bit-wise ranker with the sort-based oracle.
//!
//! Output is CSV with header `n,k,algorithm,trial,elapsed_ns,checksum`. Both
//! algorithms rank the same input in each trial, and the checksum folds the
//! resulting rank list so the two rows of a trial must agree.

use std::fmt;
use std::hint::black_box;
use std::io::Write;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use sonik_core::oracle::{dense_rank_oracle, OracleConfig};
use sonik_core::{Order, Rank, Ranker};

use crate::CliError;

pub const CSV_HEADER: [&str; 6] = ["n", "k", "algorithm", "trial", "elapsed_ns", "checksum"];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Algorithm {
    Sonik,
    SortBaseline,
}

impl Algorithm {
    pub const ALL: [Algorithm; 2] = [Algorithm::Sonik, Algorithm::SortBaseline];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Sonik => "sonik",
            Algorithm::SortBaseline => "sort-baseline",
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BenchConfig {
    pub sizes: Vec<usize>,
    pub k_bits: u32,
    pub trials: u32,
    pub seed: u64,
}

impl BenchConfig {
    pub fn validate(&self) -> Result<(), CliError> {
        if self.sizes.is_empty() {
            return Err(CliError::Config(
                "--sizes must list at least one size".into(),
            ));
        }
        if !(1..=64).contains(&self.k_bits) {
            return Err(CliError::Config(format!(
                "--k-bits must be in 1..=64, got {}",
                self.k_bits
            )));
        }
        Ok(())
    }
}

/// One timed run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BenchRecord {
    pub n: usize,
    pub k: u32,
    pub algorithm: Algorithm,
    pub trial: u32,
    pub elapsed_ns: u64,
    pub checksum: u64,
}

impl BenchRecord {
    fn fields(&self) -> [String; 6] {
        [
            self.n.to_string(),
            self.k.to_string(),
            self.algorithm.to_string(),
            self.trial.to_string(),
            self.elapsed_ns.to_string(),
            self.checksum.to_string(),
        ]
    }
}

/// Order-sensitive fold of a rank list.
pub fn checksum(ranks: &[Rank]) -> u64 {
    ranks.iter().fold(0xcbf2_9ce4_8422_2325, |acc: u64, &r| {
        (acc ^ r as u64).wrapping_mul(0x0000_0100_0000_01b3)
    })
}

/// Uniform keys below `2^k_bits`.
pub fn random_keys(rng: &mut ChaCha8Rng, n: usize, k_bits: u32) -> Vec<u64> {
    let max = if k_bits >= 64 {
        u64::MAX
    } else {
        (1u64 << k_bits) - 1
    };
    (0..n).map(|_| rng.random_range(0..=max)).collect()
}

// Order-preserving u64 -> i64 map for the oracle.
fn to_signed(keys: &[u64]) -> Vec<i64> {
    keys.iter().map(|&k| (k ^ (1 << 63)) as i64).collect()
}

fn time_once(
    algorithm: Algorithm,
    keys: &[u64],
    signed: &[i64],
    ranker: &mut Ranker,
) -> (u64, u64) {
    let start = Instant::now();
    let ranks = match algorithm {
        Algorithm::Sonik => ranker.rank(black_box(keys), Order::Ascending, None),
        Algorithm::SortBaseline => dense_rank_oracle(black_box(signed), OracleConfig::ascending()),
    };
    let elapsed = start.elapsed().as_nanos().max(1) as u64;
    (elapsed, checksum(black_box(&ranks)))
}

/// Times both algorithms on `config.trials` fresh inputs per size, after one
/// discarded warm-up run per (size, algorithm).
pub fn measure(config: &BenchConfig) -> Result<Vec<BenchRecord>, CliError> {
    config.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut records = Vec::new();

    for &n in &config.sizes {
        let mut ranker = Ranker::new(n);
        let warm = random_keys(&mut rng, n, config.k_bits);
        let warm_signed = to_signed(&warm);
        for algorithm in Algorithm::ALL {
            time_once(algorithm, &warm, &warm_signed, &mut ranker);
        }

        for trial in 0..config.trials {
            let keys = random_keys(&mut rng, n, config.k_bits);
            let signed = to_signed(&keys);
            for algorithm in Algorithm::ALL {
                let (elapsed_ns, checksum) = time_once(algorithm, &keys, &signed, &mut ranker);
                records.push(BenchRecord {
                    n,
                    k: config.k_bits,
                    algorithm,
                    trial,
                    elapsed_ns,
                    checksum,
                });
            }
        }
    }
    Ok(records)
}

pub fn write_csv<W: Write>(records: &[BenchRecord], out: W) -> Result<(), CliError> {
    let mut writer = csv::Writer::from_writer(out);
    writer.write_record(CSV_HEADER)?;
    for record in records {
        writer.write_record(record.fields())?;
    }
    writer.flush()?;
    Ok(())
}

/// Measures and writes CSV to `out`.
pub fn run_bench<W: Write>(config: &BenchConfig, out: W) -> Result<Vec<BenchRecord>, CliError> {
    let records = measure(config)?;
    write_csv(&records, out)?;
    Ok(records)
}

/// Mean elapsed time of `algorithm` at size `n`, if any rows match.
pub fn mean_elapsed(records: &[BenchRecord], algorithm: Algorithm, n: usize) -> Option<f64> {
    let times: Vec<f64> = records
        .iter()
        .filter(|r| r.algorithm == algorithm && r.n == n)
        .map(|r| r.elapsed_ns as f64)
        .collect();
    (!times.is_empty()).then(|| times.iter().sum::<f64>() / times.len() as f64)
}
