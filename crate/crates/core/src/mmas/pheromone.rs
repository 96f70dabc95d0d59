use crate::error::{Error, Result};
use crate::Scalar;

/// `UB + 1 - profit`: positive, and lower for more profitable plans.
///
/// `upper_bound` is the fractional knapsack bound; a profit above it means
/// the bound or the evaluator is wrong.
pub fn fitness_cost<S: Scalar>(profit: u64, upper_bound: S) -> Result<S> {
    let p = S::from_u64_lossy(profit);
    if p > upper_bound + upper_bound.abs().max(S::one()) * S::epsilon() * S::lit(4.0) {
        return Err(Error::BoundViolated {
            profit,
            bound: upper_bound.to_string(),
        });
    }
    Ok(upper_bound + S::one() - p)
}

/// Symmetric pheromone trails kept inside `[tau_min, tau_max]`.
#[derive(Debug, Clone, PartialEq)]
pub struct PheromoneState<S> {
    n: usize,
    tau: Vec<S>,
    tau_min: S,
    tau_max: S,
    best_cost: S,
}

impl<S: Scalar> PheromoneState<S> {
    /// All trails at `initial`, which also serves as `tau_max` until a cost
    /// is observed.
    pub fn new(n: usize, initial: S, tau_min_divisor: S) -> Self {
        Self {
            n,
            tau: vec![initial; n * n],
            tau_min: initial / (tau_min_divisor * S::from_usize(n).unwrap()),
            tau_max: initial,
            best_cost: S::infinity(),
        }
    }

    /// Uniform trails with explicit bounds and best cost.
    pub fn with_bounds(n: usize, tau: S, tau_min: S, tau_max: S, best_cost: S) -> Self {
        assert!(tau_min <= tau_max, "tau_min must not exceed tau_max");
        Self {
            n,
            tau: vec![tau; n * n],
            tau_min,
            tau_max,
            best_cost,
        }
    }

    pub fn num_cities(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, a: usize, b: usize) -> S {
        self.tau[a * self.n + b]
    }

    pub fn set(&mut self, a: usize, b: usize, value: S) {
        self.tau[a * self.n + b] = value;
        self.tau[b * self.n + a] = value;
    }

    pub fn tau_min(&self) -> S {
        self.tau_min
    }

    pub fn tau_max(&self) -> S {
        self.tau_max
    }

    pub fn best_cost(&self) -> S {
        self.best_cost
    }

    pub fn values(&self) -> &[S] {
        &self.tau
    }

    /// Records a solution cost; on improvement recomputes
    /// `tau_max = 1 / (rho * cost)` and `tau_min = tau_max / (divisor * n)`.
    pub fn observe_cost(&mut self, cost: S, rho: S, tau_min_divisor: S) -> bool {
        if cost < self.best_cost {
            self.best_cost = cost;
            self.tau_max = S::one() / (rho * cost);
            self.tau_min = self.tau_max / (tau_min_divisor * S::from_usize(self.n).unwrap());
            true
        } else {
            false
        }
    }

    /// Sets every trail to `tau_max`.
    pub fn reset_to_max(&mut self) {
        let max = self.tau_max;
        self.tau.iter_mut().for_each(|t| *t = max);
    }

    /// Evaporates every trail, deposits `1 / cost` on the consecutive pairs
    /// of `route`, then clamps to the (possibly refreshed) bounds.
    pub fn update(&mut self, route: &[usize], cost: S, rho: S, tau_min_divisor: S) {
        self.observe_cost(cost, rho, tau_min_divisor);
        let keep = S::one() - rho;
        self.tau.iter_mut().for_each(|t| *t = *t * keep);
        let deposit = S::one() / cost;
        for leg in route.windows(2) {
            let (a, b) = (leg[0], leg[1]);
            let v = self.get(a, b) + deposit;
            self.set(a, b, v);
        }
        let (lo, hi) = (self.tau_min, self.tau_max);
        self.tau.iter_mut().for_each(|t| *t = t.max(lo).min(hi));
        debug_assert!(self.within_bounds());
    }

    pub fn within_bounds(&self) -> bool {
        self.tau_min <= self.tau_max
            && self
                .tau
                .iter()
                .all(|&t| t >= self.tau_min && t <= self.tau_max)
    }
}
