use std::time::Duration;

use crate::error::{Error, Result};
use crate::Scalar;

/// When a run stops. Checked once per iteration, after it completes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Budget {
    /// `ceil(m / 10)` seconds of wall-clock time for an instance with `m` items.
    PerItems,
    WallClock(Duration),
    /// A fixed number of iterations; makes runs reproducible.
    Iterations(u64),
}

impl Budget {
    pub fn default_seconds(num_items: usize) -> u64 {
        num_items.div_ceil(10) as u64
    }
}

/// Which city sequence receives the pheromone deposit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DepositRoute {
    /// The tour with item-less cities removed.
    Pruned,
    /// The complete tour the ant built.
    Full,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MmasParams<S> {
    pub ants: usize,
    /// Pheromone exponent.
    pub alpha: S,
    /// Heuristic (inverse distance) exponent.
    pub beta: S,
    /// Evaporation rate in (0, 1).
    pub rho: S,
    /// Packing attempts per tour.
    pub ptries: usize,
    pub budget: Budget,
    pub seed: u64,
    /// Nearest neighbours considered first when extending a tour.
    pub candidate_list_size: usize,
    /// Every this many iterations the best-so-far solution deposits instead
    /// of the iteration best.
    pub global_best_period: u64,
    /// Iterations without improvement before trails are reset to `tau_max`.
    pub stagnation_limit: u64,
    /// `tau_min = tau_max / (tau_min_divisor * n)`.
    pub tau_min_divisor: S,
    pub deposit: DepositRoute,
    /// Build and pack the ants' tours on the rayon pool.
    pub parallel: bool,
}

impl<S: Scalar> Default for MmasParams<S> {
    fn default() -> Self {
        Self {
            ants: 196,
            alpha: S::lit(1.24),
            beta: S::lit(5.46),
            rho: S::lit(0.51),
            ptries: 1,
            budget: Budget::PerItems,
            seed: 1,
            candidate_list_size: 20,
            global_best_period: 25,
            stagnation_limit: 250,
            tau_min_divisor: S::lit(2.0),
            deposit: DepositRoute::Pruned,
            parallel: false,
        }
    }
}

impl<S: Scalar> MmasParams<S> {
    pub fn validate(&self) -> Result<()> {
        let fail = |msg: String| Err(Error::InvalidParams(msg));
        if self.ants == 0 {
            return fail("ants must be positive".into());
        }
        if self.ptries == 0 {
            return fail("ptries must be positive".into());
        }
        if self.candidate_list_size == 0 {
            return fail("candidate list size must be positive".into());
        }
        if self.global_best_period == 0 {
            return fail("global-best period must be positive".into());
        }
        for (name, v) in [("alpha", self.alpha), ("beta", self.beta)] {
            if !v.is_finite() || v < S::zero() {
                return fail(format!("{name} must be finite and non-negative, got {v}"));
            }
        }
        if !(self.rho > S::zero() && self.rho < S::one()) {
            return fail(format!("rho must lie in (0, 1), got {}", self.rho));
        }
        if !(self.tau_min_divisor.is_finite() && self.tau_min_divisor > S::zero()) {
            return fail(format!(
                "tau_min divisor must be positive, got {}",
                self.tau_min_divisor
            ));
        }
        Ok(())
    }

    pub fn with_budget(mut self, budget: Budget) -> Self {
        self.budget = budget;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }
}
