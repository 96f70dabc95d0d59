//! `thop validate`: independent check of a solution file.

use std::fmt;
use std::fs;
use std::path::Path;

use anyhow::{Context, Result};
use thop_core::evaluator::{evaluate, parse_solution, Violation};
use thop_core::{Evaluation, Instance};

use crate::record::fmt_time;
use crate::solve::load_instance;

#[derive(Debug, Clone)]
pub struct ValidationReport {
    pub evaluation: Evaluation,
    pub capacity: u64,
    pub max_time: f64,
}

impl ValidationReport {
    pub fn new(evaluation: Evaluation, instance: &Instance) -> Self {
        Self {
            evaluation,
            capacity: instance.capacity(),
            max_time: instance.max_time(),
        }
    }

    pub fn is_feasible(&self) -> bool {
        self.evaluation.is_feasible()
    }
}

/// First line is the verdict, second the knapsack load:
///
/// ```text
/// profit 100 time 56 feasible
/// weight 3 of 3
/// ```
impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ev = &self.evaluation;
        let time = fmt_time(ev.time);
        match ev.violation {
            None => writeln!(f, "profit {} time {time} feasible", ev.profit)?,
            Some(Violation::Overtime) => writeln!(
                f,
                "profit {} time {time} infeasible: overtime ({time} > {})",
                ev.profit,
                fmt_time(self.max_time)
            )?,
            Some(Violation::Overweight) => writeln!(
                f,
                "profit {} time {time} infeasible: overweight ({} > {})",
                ev.profit, ev.weight, self.capacity
            )?,
            Some(v @ Violation::MalformedTour(_)) => writeln!(f, "infeasible: {v}")?,
        }
        writeln!(f, "weight {} of {}", ev.weight, self.capacity)
    }
}

pub fn validate_text(instance: &Instance, solution_text: &str) -> Result<ValidationReport> {
    let solution = parse_solution(solution_text, instance.num_cities())?;
    Ok(ValidationReport::new(
        evaluate(&solution, instance),
        instance,
    ))
}

pub fn cmd_validate(instance_path: &Path, solution_path: &Path) -> Result<ValidationReport> {
    let instance = load_instance(instance_path)?;
    let text = fs::read_to_string(solution_path)
        .with_context(|| format!("cannot read {}", solution_path.display()))?;
    validate_text(&instance, &text)
        .with_context(|| format!("invalid solution {}", solution_path.display()))
}
