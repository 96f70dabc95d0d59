//! `thop gen`: random CEIL_2D instances.

use anyhow::Result;
use clap::Args;
use thop_core::generator::{generate, GeneratorConfig};
use thop_core::Instance;

#[derive(Debug, Clone, Args)]
pub struct GenArgs {
    /// Number of cities, endpoints included
    #[arg(long, default_value_t = 6)]
    pub cities: usize,
    /// Items on each interior city
    #[arg(long, default_value_t = 1)]
    pub items_per_city: usize,
    #[arg(long, default_value_t = 1)]
    pub weight_min: u64,
    #[arg(long, default_value_t = 10)]
    pub weight_max: u64,
    #[arg(long, default_value_t = 1)]
    pub profit_min: u64,
    #[arg(long, default_value_t = 100)]
    pub profit_max: u64,
    /// Coordinates are drawn from 0..=coord-max
    #[arg(long, default_value_t = 100)]
    pub coord_max: u32,
    /// Knapsack capacity (default: capacity-fraction of the total weight)
    #[arg(long)]
    pub capacity: Option<u64>,
    #[arg(long, default_value_t = 0.5)]
    pub capacity_fraction: f64,
    /// Time limit (default: time-factor times the index-order route at full speed)
    #[arg(long)]
    pub max_time: Option<f64>,
    #[arg(long, default_value_t = 1.0)]
    pub time_factor: f64,
    #[arg(long, default_value_t = 0.1)]
    pub min_speed: f64,
    #[arg(long, default_value_t = 1.0)]
    pub max_speed: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

impl From<&GenArgs> for GeneratorConfig {
    fn from(a: &GenArgs) -> Self {
        GeneratorConfig {
            cities: a.cities,
            items_per_city: a.items_per_city,
            weight_range: (a.weight_min, a.weight_max),
            profit_range: (a.profit_min, a.profit_max),
            coord_max: a.coord_max,
            capacity: a.capacity,
            capacity_fraction: a.capacity_fraction,
            max_time: a.max_time,
            time_factor: a.time_factor,
            min_speed: a.min_speed,
            max_speed: a.max_speed,
            seed: a.seed,
        }
    }
}

/// The generated instance serialized in the instance file format.
pub fn cmd_gen(args: &GenArgs) -> Result<String> {
    let instance: Instance = generate(&GeneratorConfig::from(args))?;
    Ok(instance.to_string())
}
