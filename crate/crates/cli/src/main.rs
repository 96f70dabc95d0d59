use std::process::ExitCode;

use clap::Parser;
use thop_cli::cli::EXIT_ERROR;
use thop_cli::{run, Cli};

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_ERROR)
        }
    }
}
