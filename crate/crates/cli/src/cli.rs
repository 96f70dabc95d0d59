use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand};

use crate::bench::{cmd_bench, read_reference, BenchOptions};
use crate::config::{resolve_params, BudgetArgs, GroupConfig, ParamOverrides};
use crate::gen::{cmd_gen, GenArgs};
use crate::record::fmt_time;
use crate::solve::{cmd_solve, instance_name, SolveSettings};
use crate::validate::cmd_validate;

/// Exit code for infeasible solutions in `validate`.
pub const EXIT_INFEASIBLE: u8 = 1;
/// Exit code for unreadable or invalid input.
pub const EXIT_ERROR: u8 = 2;

#[derive(Debug, Parser)]
#[command(name = "thop", version, about = "Thief Orienteering Problem solver")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Solve one instance with independent seeded runs
    Solve {
        instance: PathBuf,
        #[arg(long, default_value_t = 10)]
        runs: usize,
        /// Seed of the first run; run r uses seed + r - 1
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[command(flatten)]
        params: ParamOverrides,
        #[command(flatten)]
        budget: BudgetArgs,
        /// Output directory for solution, stats and summary files
        #[arg(long, default_value = "thop-out")]
        out: PathBuf,
        /// TOML file of per-group parameter overrides
        #[arg(long)]
        config: Option<PathBuf>,
        /// Build the ants' tours on all cores
        #[arg(long)]
        parallel: bool,
    },
    /// Check a solution file; exit 0 iff it is feasible
    Validate {
        instance: PathBuf,
        solution: PathBuf,
    },
    /// Solve every instance matching a glob and aggregate by group
    Bench {
        pattern: String,
        /// CSV with columns instance,best_known_profit
        #[arg(long)]
        reference: Option<PathBuf>,
        /// Per-instance CSV; group CSV is written beside it
        #[arg(long, default_value = "bench.csv")]
        out: PathBuf,
        /// Instances solved concurrently
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[arg(long, default_value_t = 10)]
        runs: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[command(flatten)]
        params: ParamOverrides,
        #[command(flatten)]
        budget: BudgetArgs,
        #[arg(long)]
        config: Option<PathBuf>,
        /// Also keep every instance's solution and stats files here
        #[arg(long)]
        runs_dir: Option<PathBuf>,
    },
    /// Write a random instance
    Gen {
        #[command(flatten)]
        args: GenArgs,
        /// Output file (default: stdout)
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn load_groups(path: Option<&PathBuf>) -> Result<Option<GroupConfig>> {
    path.map(|p| GroupConfig::load(p)).transpose()
}

pub fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Solve {
            instance,
            runs,
            seed,
            params,
            budget,
            out,
            config,
            parallel,
        } => {
            let groups = load_groups(config.as_ref())?;
            let name = instance_name(&instance);
            let params =
                resolve_params(&name, groups.as_ref(), &params, budget.budget()?, parallel)?;
            let settings = SolveSettings { runs, seed, params };
            let (outcome, files) = cmd_solve(&instance, &settings, &out)?;
            for r in &outcome.record.runs {
                println!(
                    "run {} seed {} profit {} weight {} time {} iterations {}",
                    r.run,
                    r.seed,
                    r.profit,
                    r.weight,
                    fmt_time(r.time),
                    r.iterations
                );
            }
            if let (Some(best), Some(mean)) =
                (outcome.record.best_run(), outcome.record.mean_profit())
            {
                println!("best profit {} (run {}) mean {mean}", best.profit, best.run);
            }
            println!("summary written to {}", files.summary.display());
            Ok(ExitCode::SUCCESS)
        }
        Command::Validate { instance, solution } => {
            let report = cmd_validate(&instance, &solution)?;
            print!("{report}");
            Ok(if report.is_feasible() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(EXIT_INFEASIBLE)
            })
        }
        Command::Bench {
            pattern,
            reference,
            out,
            jobs,
            runs,
            seed,
            params,
            budget,
            config,
            runs_dir,
        } => {
            let opts = BenchOptions {
                runs,
                seed,
                budget: budget.budget()?,
                overrides: params,
                groups: load_groups(config.as_ref())?,
                reference: match &reference {
                    Some(p) => read_reference(p)?,
                    None => Default::default(),
                },
                jobs,
                runs_dir,
            };
            let outcome = cmd_bench(&pattern, &opts, &out)?;
            let failed = outcome.records.iter().filter(|r| r.error.is_some()).count();
            println!(
                "{} instances, {} failed, {} groups; results in {}",
                outcome.records.len(),
                failed,
                outcome.groups.len(),
                out.display()
            );
            Ok(ExitCode::SUCCESS)
        }
        Command::Gen { args, out } => {
            let text = cmd_gen(&args)?;
            match out {
                Some(path) => fs::write(&path, text)
                    .with_context(|| format!("cannot write {}", path.display()))?,
                None => print!("{text}"),
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}
