//! Parameter sweeps over the `fockent` library, written as CSV.

pub mod commands;
pub mod error;
pub mod params;
pub mod sweep;

pub use commands::{Command, Herald, Options, Scheme};
pub use error::CliError;
pub use params::ParamRange;
pub use sweep::{emit_csv, run, write_csv, SweepConfig, SweepResult};
