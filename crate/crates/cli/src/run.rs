//! The `rank` subcommand.

use std::io::Write;

use sonik_core::transform::{rank_values, sorted_from_ranks};
use sonik_core::{Order, RankOptions};

use crate::CliError;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, clap::ValueEnum)]
pub enum Emit {
    #[default]
    Ranks,
    Sorted,
    Both,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    /// One value per line; `both` separates the lists with a blank line.
    #[default]
    Lines,
    /// One comma-separated line per emitted list.
    Csv,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct RunConfig {
    pub order: Order,
    pub stable: bool,
    pub bits: Option<u32>,
    pub emit: Emit,
    pub format: Format,
}

impl RunConfig {
    pub fn validate(&self) -> Result<(), CliError> {
        match self.bits {
            Some(b) if !(1..=64).contains(&b) => Err(CliError::Config(format!(
                "--bits must be in 1..=64, got {b}"
            ))),
            _ => Ok(()),
        }
    }
}

/// Ranks `values` and writes the requested lists to `out`.
pub fn run_rank<W: Write>(config: &RunConfig, values: &[i64], out: &mut W) -> Result<(), CliError> {
    config.validate()?;
    let ranks = rank_values(
        values,
        RankOptions {
            order: config.order,
            stable: config.stable,
            bit_limit: config.bits,
        },
    );

    if matches!(config.emit, Emit::Ranks | Emit::Both) {
        write_list(out, &ranks, config.format)?;
    }
    if config.emit == Emit::Both && config.format == Format::Lines {
        writeln!(out)?;
    }
    if matches!(config.emit, Emit::Sorted | Emit::Both) {
        let sorted = sorted_from_ranks(values, &ranks).expect("ranks come from the ranker");
        write_list(out, &sorted, config.format)?;
    }
    Ok(())
}

fn write_list<W: Write, T: std::fmt::Display>(
    out: &mut W,
    items: &[T],
    format: Format,
) -> std::io::Result<()> {
    match format {
        Format::Lines => {
            for item in items {
                writeln!(out, "{item}")?;
            }
        }
        Format::Csv => {
            let line: Vec<String> = items.iter().map(ToString::to_string).collect();
            writeln!(out, "{}", line.join(","))?;
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(config: RunConfig, values: &[i64]) -> String {
        let mut out = Vec::new();
        run_rank(&config, values, &mut out).unwrap();
        String::from_utf8(out).unwrap()
    }

    const RUNNING: [i64; 5] = [7, 2, 1, 5, 4];

    #[test]
    fn default_prints_one_rank_per_line() {
        assert_eq!(run(RunConfig::default(), &RUNNING), "5\n2\n1\n4\n3\n");
    }

    #[test]
    fn descending() {
        let cfg = RunConfig {
            order: Order::Descending,
            ..Default::default()
        };
        assert_eq!(run(cfg, &RUNNING), "1\n4\n5\n2\n3\n");
    }

    #[test]
    fn bit_limit() {
        let cfg = RunConfig {
            bits: Some(2),
            ..Default::default()
        };
        assert_eq!(run(cfg, &RUNNING), "4\n3\n2\n2\n1\n");
    }

    #[test]
    fn emit_variants() {
        let cfg = RunConfig {
            emit: Emit::Sorted,
            ..Default::default()
        };
        assert_eq!(run(cfg, &[2, 4, 2]), "2\n2\n4\n");
        let cfg = RunConfig {
            emit: Emit::Both,
            format: Format::Csv,
            ..Default::default()
        };
        assert_eq!(run(cfg, &RUNNING), "5,2,1,4,3\n1,2,4,5,7\n");
        let cfg = RunConfig {
            emit: Emit::Both,
            stable: true,
            ..Default::default()
        };
        assert_eq!(run(cfg, &[2, 4, 2]), "1\n3\n2\n\n2\n2\n4\n");
    }

    #[test]
    fn empty_input_prints_nothing() {
        assert_eq!(run(RunConfig::default(), &[]), "");
        let cfg = RunConfig {
            format: Format::Csv,
            ..Default::default()
        };
        assert_eq!(run(cfg, &[]), "\n");
    }

    #[test]
    fn rejects_bad_bits() {
        let cfg = RunConfig {
            bits: Some(0),
            ..Default::default()
        };
        let err = run_rank(&cfg, &RUNNING, &mut Vec::new()).unwrap_err();
        assert_eq!(err.exit_code(), 2);
    }
}
