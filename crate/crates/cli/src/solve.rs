//! `thop solve`: independent seeded runs on one instance.

use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use thop_core::evaluator::format_solution;
use thop_core::mmas::{self, Budget};
use thop_core::model::parse_instance;
use thop_core::{Instance, MmasParams, RunReport, Solution};

use crate::record::{bench_csv, runs_csv, stats_csv, BenchmarkRecord, RunSummary};

/// Everything a batch of runs needs besides the instance.
#[derive(Debug, Clone)]
pub struct SolveSettings {
    pub runs: usize,
    /// Run `r` (0-based) uses `seed + r`.
    pub seed: u64,
    pub params: MmasParams,
}

/// One finished run.
#[derive(Debug, Clone)]
pub struct RunOutcome {
    pub summary: RunSummary,
    pub solution: Solution,
    pub report: RunReport,
}

#[derive(Debug, Clone)]
pub struct SolveOutcome {
    pub record: BenchmarkRecord,
    pub runs: Vec<RunOutcome>,
}

/// Reads and parses an instance file.
pub fn load_instance(path: &Path) -> Result<Instance> {
    let text =
        fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    parse_instance(&text).with_context(|| format!("invalid instance {}", path.display()))
}

/// File stem used as the instance name in outputs.
pub fn instance_name(path: &Path) -> String {
    path.file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| path.display().to_string())
}

/// Runs `settings.runs` independent runs in memory.
pub fn solve_runs(
    name: &str,
    instance: &Instance,
    settings: &SolveSettings,
    reference: Option<u64>,
) -> Result<SolveOutcome> {
    let mut runs = Vec::with_capacity(settings.runs);
    for r in 0..settings.runs {
        let seed = settings.seed.wrapping_add(r as u64);
        let params = settings.params.clone().with_seed(seed);
        let report = mmas::solve(instance, &params)?;
        let summary = RunSummary::new(
            r + 1,
            seed,
            &report.evaluation,
            instance.capacity(),
            instance.max_time(),
            report.iterations(),
        );
        runs.push(RunOutcome {
            summary,
            solution: report.solution.clone(),
            report,
        });
    }
    let record = BenchmarkRecord {
        instance: name.to_string(),
        seed: settings.seed,
        runs: runs.iter().map(|r| r.summary.clone()).collect(),
        reference,
        error: None,
    };
    Ok(SolveOutcome { record, runs })
}

/// The `# key=value` lines heading every stats file.
pub fn param_preamble(name: &str, run: &RunSummary, params: &MmasParams) -> Vec<String> {
    let budget = match params.budget {
        Budget::PerItems => "per-items".to_string(),
        Budget::WallClock(d) => format!("seconds:{}", d.as_secs_f64()),
        Budget::Iterations(k) => format!("iterations:{k}"),
    };
    vec![
        format!("instance={name} run={} seed={}", run.run, run.seed),
        format!(
            "ants={} alpha={} beta={} rho={} ptries={} budget={budget}",
            params.ants, params.alpha, params.beta, params.rho, params.ptries
        ),
        format!(
            "candidate_list_size={} global_best_period={} stagnation_limit={} tau_min_divisor={} deposit={:?}",
            params.candidate_list_size,
            params.global_best_period,
            params.stagnation_limit,
            params.tau_min_divisor,
            params.deposit
        ),
    ]
}

/// Paths written by [`write_outputs`].
#[derive(Debug, Clone)]
pub struct OutputFiles {
    pub solutions: Vec<PathBuf>,
    pub stats: Vec<PathBuf>,
    pub runs: PathBuf,
    pub summary: PathBuf,
}

/// Writes `<name>_runNN.sol`, `<name>_runNN.stats.csv`, `<name>.runs.csv`
/// and `<name>.summary.csv` into `dir`.
pub fn write_outputs(
    dir: &Path,
    name: &str,
    outcome: &SolveOutcome,
    params: &MmasParams,
) -> Result<OutputFiles> {
    fs::create_dir_all(dir).with_context(|| format!("cannot create {}", dir.display()))?;
    let with_elapsed = !matches!(params.budget, Budget::Iterations(_));
    let mut files = OutputFiles {
        solutions: Vec::new(),
        stats: Vec::new(),
        runs: dir.join(format!("{name}.runs.csv")),
        summary: dir.join(format!("{name}.summary.csv")),
    };
    for run in &outcome.runs {
        let stem = format!("{name}_run{:02}", run.summary.run);
        let sol = dir.join(format!("{stem}.sol"));
        write(&sol, &format_solution(&run.solution))?;
        let stats = dir.join(format!("{stem}.stats.csv"));
        let preamble = param_preamble(name, &run.summary, params);
        write(
            &stats,
            &stats_csv(&preamble, &run.report.stats, with_elapsed)?,
        )?;
        files.solutions.push(sol);
        files.stats.push(stats);
    }
    write(&files.runs, &runs_csv(&outcome.record.runs)?)?;
    write(
        &files.summary,
        &bench_csv(std::slice::from_ref(&outcome.record))?,
    )?;
    Ok(files)
}

fn write(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).with_context(|| format!("cannot write {}", path.display()))
}

/// Loads `path`, runs it and writes all outputs into `out`.
pub fn cmd_solve(
    path: &Path,
    settings: &SolveSettings,
    out: &Path,
) -> Result<(SolveOutcome, OutputFiles)> {
    let instance = load_instance(path)?;
    let name = instance_name(path);
    let outcome = solve_runs(&name, &instance, settings, None)?;
    let files = write_outputs(out, &name, &outcome, &settings.params)?;
    Ok((outcome, files))
}
