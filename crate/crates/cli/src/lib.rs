//! Command-line front end: runs rule programs and regenerates the reference
//! tables as CSV.

pub mod app;
pub mod fixtures;
pub mod tables;

pub use app::{execute, main_with, Cli, CliError};
