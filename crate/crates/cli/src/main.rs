use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use sonik_cli::bench::{run_bench, BenchConfig};
use sonik_cli::input::read_input;
use sonik_cli::run::{run_rank, Emit, Format, RunConfig};
use sonik_cli::verify::{run_verify, VerifyConfig};
use sonik_cli::CliError;
use sonik_core::Order;

#[derive(Parser)]
#[command(
    name = "sonik",
    version,
    about = "In-situ integer ranking by LSB-first bit partitioning"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum OrderArg {
    Asc,
    Desc,
}

#[derive(Subcommand)]
enum Command {
    /// Rank whitespace-separated integers read from FILE or stdin.
    Rank {
        #[arg(long, value_enum, default_value = "asc")]
        order: OrderArg,
        /// Break ties by appearance order.
        #[arg(long)]
        stable: bool,
        /// Rank by the N least significant bits only.
        #[arg(long, value_name = "N")]
        bits: Option<u32>,
        #[arg(long, value_enum, default_value = "ranks")]
        emit: Emit,
        #[arg(long, value_enum, default_value = "lines")]
        format: Format,
        file: Option<PathBuf>,
    },
    /// Compare the ranker against brute-force oracles on random inputs.
    Verify {
        #[arg(long)]
        trials: u64,
        #[arg(long)]
        seed: u64,
        #[arg(long = "max-n")]
        max_n: usize,
        #[arg(long, allow_hyphen_values = true)]
        lo: i64,
        #[arg(long, allow_hyphen_values = true)]
        hi: i64,
    },
    /// Time the ranker and the sort baseline; CSV on stdout.
    Bench {
        #[arg(long, value_delimiter = ',', required = true)]
        sizes: Vec<usize>,
        #[arg(long = "k-bits")]
        k_bits: u32,
        #[arg(long)]
        trials: u32,
        #[arg(long)]
        seed: u64,
    },
}

fn run(cli: Cli) -> Result<(), CliError> {
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    match cli.command {
        Command::Rank {
            order,
            stable,
            bits,
            emit,
            format,
            file,
        } => {
            let values = match file {
                Some(path) => read_input(File::open(path)?)?,
                None => read_input(io::stdin().lock())?,
            };
            let config = RunConfig {
                order: match order {
                    OrderArg::Asc => Order::Ascending,
                    OrderArg::Desc => Order::Descending,
                },
                stable,
                bits,
                emit,
                format,
            };
            run_rank(&config, &values, &mut out)?;
        }
        Command::Verify {
            trials,
            seed,
            max_n,
            lo,
            hi,
        } => {
            let config = VerifyConfig {
                trials,
                seed,
                max_n,
                lo,
                hi,
            };
            let result = run_verify(&config, &mut out);
            out.flush()?;
            result?;
        }
        Command::Bench {
            sizes,
            k_bits,
            trials,
            seed,
        } => {
            let config = BenchConfig {
                sizes,
                k_bits,
                trials,
                seed,
            };
            eprintln!("# bench seed={seed} rng=ChaCha8");
            run_bench(&config, &mut out)?;
        }
    }
    out.flush()?;
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("sonik: {err}");
            ExitCode::from(err.exit_code() as u8)
        }
    }
}
