//! Result records and their CSV layouts.

use std::collections::BTreeMap;

use anyhow::Result;
use thop_core::mmas::IterationStats;
use thop_core::Evaluation;

use crate::config::group_id;

/// Shortest decimal that round-trips, so files are reproducible.
pub fn fmt_f64(x: f64) -> String {
    format!("{x}")
}

/// Two decimals with trailing zeros dropped: `56`, `18.5`, `77.43`.
pub fn fmt_time(x: f64) -> String {
    let s = format!("{x:.2}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" {
        "0".to_string()
    } else {
        s.to_string()
    }
}

fn opt<T: ToString>(v: Option<T>) -> String {
    v.map(|v| v.to_string()).unwrap_or_default()
}

/// Final state of one run.
#[derive(Debug, Clone, PartialEq)]
pub struct RunSummary {
    /// 1-based.
    pub run: usize,
    pub seed: u64,
    pub profit: u64,
    pub weight: u64,
    pub time: f64,
    pub capacity: u64,
    pub max_time: f64,
    pub distance: u64,
    pub cities: usize,
    pub iterations: u64,
    pub feasible: bool,
}

impl RunSummary {
    pub fn new(
        run: usize,
        seed: u64,
        evaluation: &Evaluation,
        capacity: u64,
        max_time: f64,
        iterations: u64,
    ) -> Self {
        Self {
            run,
            seed,
            profit: evaluation.profit,
            weight: evaluation.weight,
            time: evaluation.time,
            capacity,
            max_time,
            distance: evaluation.distance,
            cities: evaluation.cities,
            iterations,
            feasible: evaluation.is_feasible(),
        }
    }

    /// Share of the time limit used, in percent. `None` when `T = 0`.
    pub fn pct_time(&self) -> Option<f64> {
        (self.max_time > 0.0).then(|| 100.0 * self.time / self.max_time)
    }

    /// Share of the knapsack capacity used, in percent.
    pub fn pct_weight(&self) -> f64 {
        100.0 * self.weight as f64 / self.capacity as f64
    }

    /// Distance traveled per city on the route (endpoints included).
    pub fn distance_per_city(&self) -> f64 {
        self.distance as f64 / self.cities as f64
    }
}

pub const RUNS_HEADER: [&str; 11] = [
    "run",
    "seed",
    "profit",
    "weight",
    "time",
    "pct_time",
    "pct_weight",
    "distance",
    "cities",
    "iterations",
    "feasible",
];

pub fn runs_csv(runs: &[RunSummary]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(RUNS_HEADER)?;
    for r in runs {
        w.write_record([
            r.run.to_string(),
            r.seed.to_string(),
            r.profit.to_string(),
            r.weight.to_string(),
            fmt_f64(r.time),
            opt(r.pct_time().map(fmt_f64)),
            fmt_f64(r.pct_weight()),
            r.distance.to_string(),
            r.cities.to_string(),
            r.iterations.to_string(),
            r.feasible.to_string(),
        ])?;
    }
    Ok(String::from_utf8(w.into_inner()?)?)
}

pub const STATS_HEADER: [&str; 6] = [
    "iteration",
    "elapsed_seconds",
    "iter_best_profit",
    "global_best_profit",
    "tau_min",
    "tau_max",
];

/// Per-iteration statistics of one run. `preamble` lines are written first
/// as `# ` comments. With `with_elapsed` false the elapsed column is left
/// empty so that iteration-capped runs are byte-identical.
pub fn stats_csv(
    preamble: &[String],
    stats: &[IterationStats<f64>],
    with_elapsed: bool,
) -> Result<String> {
    let mut out = String::new();
    for line in preamble {
        out.push_str("# ");
        out.push_str(line);
        out.push('\n');
    }
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(STATS_HEADER)?;
    for s in stats {
        let elapsed = if with_elapsed {
            format!("{:.6}", s.elapsed.as_secs_f64())
        } else {
            String::new()
        };
        w.write_record([
            s.iteration.to_string(),
            elapsed,
            s.iter_best_profit.to_string(),
            s.global_best_profit.to_string(),
            fmt_f64(s.tau_min),
            fmt_f64(s.tau_max),
        ])?;
    }
    out.push_str(std::str::from_utf8(&w.into_inner()?)?);
    Ok(out)
}

/// One benchmarked instance: all runs, the best run, and the comparison to
/// the best-known profit.
#[derive(Debug, Clone, PartialEq)]
pub struct BenchmarkRecord {
    pub instance: String,
    pub seed: u64,
    pub runs: Vec<RunSummary>,
    pub reference: Option<u64>,
    /// Set when the instance could not be solved; the other fields are empty.
    pub error: Option<String>,
}

impl BenchmarkRecord {
    pub fn failed(instance: String, seed: u64, reference: Option<u64>, error: String) -> Self {
        Self {
            instance,
            seed,
            runs: Vec::new(),
            reference,
            error: Some(error),
        }
    }

    pub fn group(&self) -> &str {
        group_id(&self.instance)
    }

    pub fn profits(&self) -> Vec<u64> {
        self.runs.iter().map(|r| r.profit).collect()
    }

    pub fn mean_profit(&self) -> Option<f64> {
        mean(
            &self
                .runs
                .iter()
                .map(|r| r.profit as f64)
                .collect::<Vec<_>>(),
        )
    }

    /// First run with the highest profit.
    pub fn best_run(&self) -> Option<&RunSummary> {
        self.runs
            .iter()
            .fold(None, |best: Option<&RunSummary>, r| match best {
                Some(b) if b.profit >= r.profit => Some(b),
                _ => Some(r),
            })
    }

    pub fn best_profit(&self) -> Option<u64> {
        self.best_run().map(|r| r.profit)
    }

    /// Mean profit over the best-known profit, where the best known is the
    /// larger of the reference value and this record's own best.
    pub fn approx_ratio(&self) -> Option<f64> {
        let reference = self.reference?;
        let mean = self.mean_profit()?;
        let best_known = reference.max(self.best_profit()?);
        (best_known > 0).then(|| mean / best_known as f64)
    }
}

pub const BENCH_HEADER: [&str; 17] = [
    "instance",
    "group",
    "seed",
    "runs",
    "run_profits",
    "mean_profit",
    "best_profit",
    "reference_profit",
    "approx_ratio",
    "weight",
    "time",
    "pct_time",
    "pct_weight",
    "distance",
    "cities",
    "distance_per_city",
    "error",
];

pub fn bench_csv(records: &[BenchmarkRecord]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(BENCH_HEADER)?;
    for rec in records {
        let best = rec.best_run();
        let profits: Vec<String> = rec.profits().iter().map(u64::to_string).collect();
        w.write_record([
            rec.instance.clone(),
            rec.group().to_string(),
            rec.seed.to_string(),
            rec.runs.len().to_string(),
            profits.join(" "),
            opt(rec.mean_profit().map(fmt_f64)),
            opt(rec.best_profit()),
            opt(rec.reference),
            opt(rec.approx_ratio().map(fmt_f64)),
            opt(best.map(|b| b.weight)),
            opt(best.map(|b| fmt_f64(b.time))),
            opt(best.and_then(|b| b.pct_time()).map(fmt_f64)),
            opt(best.map(|b| fmt_f64(b.pct_weight()))),
            opt(best.map(|b| b.distance)),
            opt(best.map(|b| b.cities)),
            opt(best.map(|b| fmt_f64(b.distance_per_city()))),
            rec.error.clone().unwrap_or_default(),
        ])?;
    }
    Ok(String::from_utf8(w.into_inner()?)?)
}

pub fn mean(xs: &[f64]) -> Option<f64> {
    (!xs.is_empty()).then(|| xs.iter().sum::<f64>() / xs.len() as f64)
}

/// Sample standard deviation (divisor `n - 1`); `None` below two values.
pub fn sample_stdev(xs: &[f64]) -> Option<f64> {
    if xs.len() < 2 {
        return None;
    }
    let m = mean(xs)?;
    let ss: f64 = xs.iter().map(|x| (x - m) * (x - m)).sum();
    Some((ss / (xs.len() - 1) as f64).sqrt())
}

/// Aggregates over the instances of one `XXX_YY_ZZZ` group. Ratio
/// statistics only use instances that have a ratio.
#[derive(Debug, Clone, PartialEq)]
pub struct GroupStats {
    pub group: String,
    pub instances: usize,
    pub rated: usize,
    pub ratio_mean: Option<f64>,
    pub ratio_stdev: Option<f64>,
    pub pct_time_mean: Option<f64>,
    pub pct_weight_mean: Option<f64>,
    pub distance_per_city_mean: Option<f64>,
}

pub fn group_stats(records: &[BenchmarkRecord]) -> Vec<GroupStats> {
    let mut groups: BTreeMap<&str, Vec<&BenchmarkRecord>> = BTreeMap::new();
    for rec in records {
        groups.entry(rec.group()).or_default().push(rec);
    }
    groups
        .into_iter()
        .map(|(group, recs)| {
            let ratios: Vec<f64> = recs.iter().filter_map(|r| r.approx_ratio()).collect();
            let bests: Vec<&RunSummary> = recs.iter().filter_map(|r| r.best_run()).collect();
            let pct_time: Vec<f64> = bests.iter().filter_map(|b| b.pct_time()).collect();
            let pct_weight: Vec<f64> = bests.iter().map(|b| b.pct_weight()).collect();
            let dpc: Vec<f64> = bests.iter().map(|b| b.distance_per_city()).collect();
            GroupStats {
                group: group.to_string(),
                instances: recs.len(),
                rated: ratios.len(),
                ratio_mean: mean(&ratios),
                ratio_stdev: sample_stdev(&ratios),
                pct_time_mean: mean(&pct_time),
                pct_weight_mean: mean(&pct_weight),
                distance_per_city_mean: mean(&dpc),
            }
        })
        .collect()
}

pub const GROUP_HEADER: [&str; 8] = [
    "group",
    "instances",
    "rated",
    "ratio_mean",
    "ratio_stdev",
    "pct_time_mean",
    "pct_weight_mean",
    "distance_per_city_mean",
];

pub fn groups_csv(groups: &[GroupStats]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(GROUP_HEADER)?;
    for g in groups {
        w.write_record([
            g.group.clone(),
            g.instances.to_string(),
            g.rated.to_string(),
            opt(g.ratio_mean.map(fmt_f64)),
            opt(g.ratio_stdev.map(fmt_f64)),
            opt(g.pct_time_mean.map(fmt_f64)),
            opt(g.pct_weight_mean.map(fmt_f64)),
            opt(g.distance_per_city_mean.map(fmt_f64)),
        ])?;
    }
    Ok(String::from_utf8(w.into_inner()?)?)
}
