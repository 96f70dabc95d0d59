//! Command-line front end: solve instances, validate solution files, run
//! benchmark batches and generate random instances.

pub mod bench;
pub mod cli;
pub mod config;
pub mod gen;
pub mod record;
pub mod solve;
pub mod validate;

pub use cli::{run, Cli, Command};
