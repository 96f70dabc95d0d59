//! MAX-MIN ant system for the tour part of the problem.

mod colony;
mod construct;
mod params;
mod pheromone;

pub use colony::{ant_rng, solve, Colony, IterationStats, RunReport};
pub use construct::{construct_tour, TourBuilder};
pub use params::{Budget, DepositRoute, MmasParams};
pub use pheromone::{fitness_cost, PheromoneState};
