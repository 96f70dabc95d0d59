//! Parameter overrides from flags and from per-group TOML files.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;
use std::time::Duration;

use anyhow::{bail, Context, Result};
use clap::Args;
use serde::Deserialize;
use thop_core::mmas::Budget;
use thop_core::MmasParams;

/// Algorithm parameters that may be overridden. Unset fields keep the
/// default configuration.
#[derive(Debug, Clone, Default, PartialEq, Args, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ParamOverrides {
    /// Ants per iteration
    #[arg(long)]
    pub ants: Option<usize>,
    /// Pheromone exponent
    #[arg(long)]
    pub alpha: Option<f64>,
    /// Distance heuristic exponent
    #[arg(long)]
    pub beta: Option<f64>,
    /// Evaporation rate
    #[arg(long)]
    pub rho: Option<f64>,
    /// Packing attempts per tour
    #[arg(long)]
    pub ptries: Option<usize>,
}

impl ParamOverrides {
    pub fn apply(&self, params: &mut MmasParams) {
        if let Some(v) = self.ants {
            params.ants = v;
        }
        if let Some(v) = self.alpha {
            params.alpha = v;
        }
        if let Some(v) = self.beta {
            params.beta = v;
        }
        if let Some(v) = self.rho {
            params.rho = v;
        }
        if let Some(v) = self.ptries {
            params.ptries = v;
        }
    }
}

/// Stopping rule flags. Without either flag a run gets `ceil(m / 10)`
/// seconds.
#[derive(Debug, Clone, Default, PartialEq, Args)]
pub struct BudgetArgs {
    /// Wall-clock seconds per run
    #[arg(long, conflicts_with = "iterations")]
    pub budget_seconds: Option<f64>,
    /// Fixed iteration count per run (reproducible output)
    #[arg(long)]
    pub iterations: Option<u64>,
}

impl BudgetArgs {
    pub fn iterations(n: u64) -> Self {
        Self {
            budget_seconds: None,
            iterations: Some(n),
        }
    }

    pub fn budget(&self) -> Result<Budget> {
        match (self.budget_seconds, self.iterations) {
            (Some(_), Some(_)) => bail!("--budget-seconds and --iterations are exclusive"),
            (Some(s), None) => {
                if !(s.is_finite() && s >= 0.0) {
                    bail!("--budget-seconds must be a non-negative number, got {s}");
                }
                Ok(Budget::WallClock(Duration::from_secs_f64(s)))
            }
            (None, Some(k)) => Ok(Budget::Iterations(k)),
            (None, None) => Ok(Budget::PerItems),
        }
    }
}

/// Tuned parameters keyed by instance group (`XXX_YY_ZZZ`).
///
/// ```toml
/// [eil51_01_bsc]
/// ants = 120
/// ptries = 3
/// ```
#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(transparent)]
pub struct GroupConfig {
    pub groups: BTreeMap<String, ParamOverrides>,
}

impl GroupConfig {
    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path)
            .with_context(|| format!("cannot read config {}", path.display()))?;
        Self::parse(&text).with_context(|| format!("invalid config {}", path.display()))
    }

    pub fn parse(text: &str) -> Result<Self> {
        Ok(toml::from_str(text)?)
    }

    pub fn for_instance(&self, instance: &str) -> Option<&ParamOverrides> {
        self.groups.get(group_id(instance))
    }
}

/// Group id of an instance name `XXX_YY_ZZZ_WW_TT`: its first three
/// underscore-separated fields. Names with fewer fields are their own group.
pub fn group_id(instance: &str) -> &str {
    match instance.match_indices('_').nth(2) {
        Some((i, _)) => &instance[..i],
        None => instance,
    }
}

/// Default parameters, then the instance's group entry, then flags.
pub fn resolve_params(
    instance: &str,
    groups: Option<&GroupConfig>,
    flags: &ParamOverrides,
    budget: Budget,
    parallel: bool,
) -> Result<MmasParams> {
    let mut params = MmasParams {
        budget,
        parallel,
        ..MmasParams::default()
    };
    if let Some(group) = groups.and_then(|g| g.for_instance(instance)) {
        group.apply(&mut params);
    }
    flags.apply(&mut params);
    params.validate()?;
    Ok(params)
}
