#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thop_core::generator::{generate, GeneratorConfig};
use thop_core::Instance;

/// Random instance with 3..=8 cities and at most 10 items. Capacity and
/// time limit vary so that either constraint may bind, but the direct
/// trip from the first to the last city always fits.
pub fn tiny_instance(seed: u64) -> Instance {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x7468_6f70);
    let cities = rng.gen_range(3..=8);
    let interior = cities - 2;
    let items_per_city = rng.gen_range(1..=(10 / interior).min(3));
    let cfg = GeneratorConfig {
        cities,
        items_per_city,
        weight_range: (1, rng.gen_range(2..=20)),
        profit_range: (1, rng.gen_range(2..=100)),
        coord_max: 50,
        capacity_fraction: rng.gen_range(0.2..0.8),
        time_factor: rng.gen_range(0.4..2.0),
        seed,
        ..Default::default()
    };
    let inst: Instance = generate(&cfg).expect("valid generator config");
    let direct = inst.dist(inst.start(), inst.end()) as f64 / inst.max_speed();
    if inst.max_time() < direct {
        return inst.with_max_time(direct.ceil()).unwrap();
    }
    inst
}
