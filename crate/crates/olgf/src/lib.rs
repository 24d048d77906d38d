//! Command line, file formats and parallel sweeps on top of `olgf-core`.

pub mod cli;
pub mod error;
pub mod input;
pub mod render;
pub mod sweeps;
pub mod tables;

pub use error::CliError;
