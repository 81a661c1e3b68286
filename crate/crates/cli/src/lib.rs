//! Library side of the `sonik` command: input parsing, the `rank` pipeline,
//! differential verification and the benchmark harness.

pub mod bench;
pub mod error;
pub mod input;
pub mod run;
pub mod verify;

pub use error::CliError;
