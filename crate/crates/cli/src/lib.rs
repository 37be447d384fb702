//! Command-line front end for `evoderive-core`: analysis reports, matrix
//! verification, random graph generation and the batch property suite.

pub mod batch;
pub mod commands;
pub mod gen;
pub mod input;
pub mod report;

pub use commands::{run, Cli, CliError};
pub use report::{Report, Verdict};
