//! `thop bench`: solve a batch of instances and aggregate by group.

use std::collections::HashMap;
use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use rayon::prelude::*;
use serde::Deserialize;
use thop_core::mmas::Budget;

use crate::config::{resolve_params, GroupConfig, ParamOverrides};
use crate::record::{bench_csv, group_stats, groups_csv, BenchmarkRecord, GroupStats};
use crate::solve::{instance_name, load_instance, solve_runs, write_outputs, SolveSettings};

#[derive(Debug, Clone)]
pub struct BenchOptions {
    pub runs: usize,
    pub seed: u64,
    pub budget: Budget,
    pub overrides: ParamOverrides,
    pub groups: Option<GroupConfig>,
    /// Best-known profits keyed by instance name.
    pub reference: HashMap<String, u64>,
    /// Instances solved concurrently.
    pub jobs: usize,
    /// Where to keep each instance's solution and stats files, if anywhere.
    pub runs_dir: Option<PathBuf>,
}

impl Default for BenchOptions {
    fn default() -> Self {
        Self {
            runs: 10,
            seed: 1,
            budget: Budget::PerItems,
            overrides: ParamOverrides::default(),
            groups: None,
            reference: HashMap::new(),
            jobs: 1,
            runs_dir: None,
        }
    }
}

#[derive(Debug, Deserialize)]
struct ReferenceRow {
    instance: String,
    best_known_profit: u64,
}

/// Reads a `instance,best_known_profit` table. A trailing `.thop` on the
/// instance column is ignored.
pub fn read_reference(path: &Path) -> Result<HashMap<String, u64>> {
    let text =
        fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    parse_reference(&text).with_context(|| format!("invalid reference table {}", path.display()))
}

pub fn parse_reference(text: &str) -> Result<HashMap<String, u64>> {
    let mut reader = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let mut table = HashMap::new();
    for row in reader.deserialize() {
        let row: ReferenceRow = row?;
        let name = row.instance.strip_suffix(".thop").unwrap_or(&row.instance);
        table.insert(name.to_string(), row.best_known_profit);
    }
    Ok(table)
}

/// Instance files matching `pattern`, sorted.
pub fn expand_glob(pattern: &str) -> Result<Vec<PathBuf>> {
    let mut paths = Vec::new();
    for entry in glob::glob(pattern).with_context(|| format!("bad pattern {pattern:?}"))? {
        let path = entry?;
        if path.is_file() {
            paths.push(path);
        }
    }
    paths.sort();
    if paths.is_empty() {
        bail!("no instance files match {pattern:?}");
    }
    Ok(paths)
}

fn bench_one(path: &Path, opts: &BenchOptions) -> BenchmarkRecord {
    let name = instance_name(path);
    let reference = opts.reference.get(&name).copied();
    let attempt = || -> Result<BenchmarkRecord> {
        let instance = load_instance(path)?;
        let params = resolve_params(
            &name,
            opts.groups.as_ref(),
            &opts.overrides,
            opts.budget,
            false,
        )?;
        let settings = SolveSettings {
            runs: opts.runs,
            seed: opts.seed,
            params,
        };
        let outcome = solve_runs(&name, &instance, &settings, reference)?;
        if let Some(dir) = &opts.runs_dir {
            write_outputs(dir, &name, &outcome, &settings.params)?;
        }
        Ok(outcome.record)
    };
    attempt().unwrap_or_else(|e| {
        BenchmarkRecord::failed(name.clone(), opts.seed, reference, format!("{e:#}"))
    })
}

/// Solves every path; a failing instance becomes a row with its error and
/// the batch continues. Rows follow the order of `paths`.
pub fn run_bench(paths: &[PathBuf], opts: &BenchOptions) -> Result<Vec<BenchmarkRecord>> {
    if opts.jobs <= 1 {
        return Ok(paths.iter().map(|p| bench_one(p, opts)).collect());
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(opts.jobs)
        .build()?;
    Ok(pool.install(|| paths.par_iter().map(|p| bench_one(p, opts)).collect()))
}

/// Path of the group table written next to `out`: `results.csv` gives
/// `results.groups.csv`.
pub fn groups_path(out: &Path) -> PathBuf {
    let stem = out
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "bench".into());
    out.with_file_name(format!("{stem}.groups.csv"))
}

#[derive(Debug, Clone)]
pub struct BenchOutcome {
    pub records: Vec<BenchmarkRecord>,
    pub groups: Vec<GroupStats>,
}

/// Runs the batch matching `pattern` and writes the per-instance CSV to
/// `out` and the per-group CSV beside it.
pub fn cmd_bench(pattern: &str, opts: &BenchOptions, out: &Path) -> Result<BenchOutcome> {
    let paths = expand_glob(pattern)?;
    let records = run_bench(&paths, opts)?;
    let groups = group_stats(&records);
    if let Some(parent) = out.parent().filter(|p| !p.as_os_str().is_empty()) {
        fs::create_dir_all(parent)?;
    }
    fs::write(out, bench_csv(&records)?)
        .with_context(|| format!("cannot write {}", out.display()))?;
    let gpath = groups_path(out);
    fs::write(&gpath, groups_csv(&groups)?)
        .with_context(|| format!("cannot write {}", gpath.display()))?;
    Ok(BenchOutcome { records, groups })
}
