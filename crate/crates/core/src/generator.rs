//! Random CEIL_2D instances, deterministic per seed.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::model::{Instance, Item, Limits};
use crate::Scalar;

#[derive(Debug, Clone, PartialEq)]
pub struct GeneratorConfig {
    pub cities: usize,
    pub items_per_city: usize,
    pub weight_range: (u64, u64),
    pub profit_range: (u64, u64),
    /// Integer coordinates are drawn from `0..=coord_max` on both axes.
    pub coord_max: u32,
    /// Knapsack capacity; defaults to `capacity_fraction` of the total item weight.
    pub capacity: Option<u64>,
    pub capacity_fraction: f64,
    /// Time limit; defaults to `time_factor` times the length of the route
    /// through all cities in index order, at full speed.
    pub max_time: Option<f64>,
    pub time_factor: f64,
    pub min_speed: f64,
    pub max_speed: f64,
    pub seed: u64,
}

impl Default for GeneratorConfig {
    fn default() -> Self {
        Self {
            cities: 6,
            items_per_city: 1,
            weight_range: (1, 10),
            profit_range: (1, 100),
            coord_max: 100,
            capacity: None,
            capacity_fraction: 0.5,
            max_time: None,
            time_factor: 1.0,
            min_speed: 0.1,
            max_speed: 1.0,
            seed: 0,
        }
    }
}

fn check_range(name: &str, (lo, hi): (u64, u64)) -> Result<()> {
    if lo == 0 || lo > hi {
        return Err(Error::InvalidParams(format!(
            "{name} range must satisfy 1 <= min <= max, got {lo}..={hi}"
        )));
    }
    Ok(())
}

pub fn generate<S: Scalar>(config: &GeneratorConfig) -> Result<Instance<S>> {
    if config.cities < 2 {
        return Err(Error::InvalidParams(format!(
            "need at least 2 cities, got {}",
            config.cities
        )));
    }
    check_range("weight", config.weight_range)?;
    check_range("profit", config.profit_range)?;
    if !(config.capacity_fraction > 0.0 && config.time_factor >= 0.0) {
        return Err(Error::InvalidParams(
            "capacity fraction must be positive and time factor non-negative".into(),
        ));
    }

    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let n = config.cities;
    let coords: Vec<[f64; 2]> = (0..n)
        .map(|_| {
            [
                rng.gen_range(0..=config.coord_max) as f64,
                rng.gen_range(0..=config.coord_max) as f64,
            ]
        })
        .collect();
    let mut items = Vec::new();
    for city in 1..n - 1 {
        for _ in 0..config.items_per_city {
            let weight = rng.gen_range(config.weight_range.0..=config.weight_range.1);
            let profit = rng.gen_range(config.profit_range.0..=config.profit_range.1);
            items.push(Item::new(profit, weight, city));
        }
    }

    let total_weight: u64 = items.iter().map(|i| i.weight).sum();
    let capacity = config
        .capacity
        .unwrap_or_else(|| ((total_weight as f64 * config.capacity_fraction).ceil() as u64).max(1));
    let max_time = match config.max_time {
        Some(t) => t,
        None => {
            let length: u64 = coords
                .windows(2)
                .map(|w| crate::model::ceil_euclidean(w[0], w[1]))
                .sum();
            (config.time_factor * length as f64 / config.max_speed).ceil()
        }
    };
    let limits = Limits {
        capacity,
        max_time: S::lit(max_time),
        min_speed: S::lit(config.min_speed),
        max_speed: S::lit(config.max_speed),
    };
    let name = format!("gen{}_{:02}_s{}", n, config.items_per_city, config.seed);
    Instance::from_coords(name, coords, items, limits)
}
