//! Solver toolkit for the Thief Orienteering Problem (ThOP).
//!
//! A thief leaves city 1, must arrive at city `n` within a time limit and
//! fills a capacity-limited knapsack along the way. Carrying weight slows
//! the thief down linearly between `v_max` (empty) and `v_min` (full).
//!
//! The crate is organised bottom-up:
//!
//! * [`model`] holds instances, items, solutions and the instance file format.
//! * [`evaluator`] simulates a solution under the speed model and prunes tours.
//! * [`packing`] is the randomized multi-try greedy packer and the fractional
//!   knapsack upper bound.
//! * [`mmas`] is the MAX-MIN ant system that builds tours and drives the search.
//! * [`oracle`] enumerates tiny instances exhaustively.
//! * [`generator`] emits random small instances for testing and benchmarking.
//!
//! All time, speed and pheromone arithmetic is generic over a [`Scalar`]
//! (`f32` or `f64`). Distances, weights and profits are integers. The
//! aliases at the crate root fix the scalar to `f64`, which is what the
//! command line tools use.

pub mod error;
pub mod evaluator;
pub mod generator;
pub mod mmas;
pub mod model;
pub mod oracle;
pub mod packing;

use std::fmt::{Debug, Display};
use std::str::FromStr;

use num_traits::{Float, FromPrimitive};

pub use error::{Error, ParseError};

/// Floating point type used for times, speeds, scores and pheromones.
pub trait Scalar:
    Float + FromPrimitive + FromStr + Display + Debug + Default + Send + Sync + 'static
{
    /// Absolute slack granted when comparing a travel time against the limit.
    ///
    /// `1e-9` for `f64`. Narrower types get a few ulps of the limit on top so
    /// that exact decimal traces stay feasible.
    fn time_slack(limit: Self) -> Self {
        let abs = Self::from_f64(1e-9).unwrap();
        let rel = limit.abs() * Self::epsilon() * Self::from_f64(8.0).unwrap();
        abs.max(rel)
    }

    /// Converts from `f64`, panicking only for types that cannot hold finite doubles.
    fn lit(value: f64) -> Self {
        Self::from_f64(value).expect("scalar must represent finite f64 values")
    }

    fn from_u64_lossy(value: u64) -> Self {
        Self::from_u64(value).expect("scalar must represent u64 values")
    }
}

impl Scalar for f32 {}
impl Scalar for f64 {}

pub type Instance = model::Instance<f64>;
pub type Evaluation = evaluator::Evaluation<f64>;
pub type ScoreWeights = packing::ScoreWeights<f64>;
pub type MmasParams = mmas::MmasParams<f64>;
pub type PheromoneState = mmas::PheromoneState<f64>;
pub type RunReport = mmas::RunReport<f64>;
pub type OracleResult = oracle::OracleResult<f64>;

pub use model::{EdgeWeightType, Item, Solution};
