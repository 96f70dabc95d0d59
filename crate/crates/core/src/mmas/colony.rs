use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::construct::TourBuilder;
use super::params::{Budget, DepositRoute, MmasParams};
use super::pheromone::{fitness_cost, PheromoneState};
use crate::error::Result;
use crate::evaluator::{evaluate, prune_tour, Evaluation};
use crate::model::{Instance, Solution};
use crate::packing::{fractional_kp_ub, pack, Packing};
use crate::Scalar;

/// Random stream for one ant in one iteration.
///
/// The ChaCha key is `(seed, iteration, ant)`, so streams never overlap and
/// the result does not depend on which thread runs the ant.
pub fn ant_rng(seed: u64, iteration: u64, ant: usize) -> ChaCha8Rng {
    let mut key = [0u8; 32];
    key[..8].copy_from_slice(&seed.to_le_bytes());
    key[8..16].copy_from_slice(&iteration.to_le_bytes());
    key[16..24].copy_from_slice(&(ant as u64).to_le_bytes());
    ChaCha8Rng::from_seed(key)
}

#[derive(Debug, Clone, PartialEq)]
pub struct IterationStats<S> {
    /// 1-based.
    pub iteration: u64,
    pub elapsed: Duration,
    pub iter_best_profit: u64,
    pub global_best_profit: u64,
    pub tau_min: S,
    pub tau_max: S,
}

#[derive(Debug, Clone)]
struct Incumbent {
    /// the ant's complete tour, kept for full-route deposits
    full_tour: Vec<usize>,
    solution: Solution,
    profit: u64,
}

/// Outcome of [`solve`].
#[derive(Debug, Clone)]
pub struct RunReport<S> {
    /// Best solution found, tour already pruned.
    pub solution: Solution,
    pub evaluation: Evaluation<S>,
    pub stats: Vec<IterationStats<S>>,
    pub upper_bound: S,
    pub elapsed: Duration,
}

impl<S> RunReport<S> {
    pub fn iterations(&self) -> u64 {
        self.stats.len() as u64
    }
}

/// One MAX-MIN ant system run, advanced an iteration at a time.
///
/// Each iteration every ant builds a tour, packs it, and is scored by
/// `UB + 1 - profit`. The best-so-far solution is stored with its tour
/// pruned. The iteration best deposits pheromone, except every
/// `global_best_period`-th iteration when the best-so-far does. Trails
/// start at `1 / (rho (UB + 1))`, jump to `tau_max` after the first
/// iteration, and are reset to `tau_max` after `stagnation_limit`
/// iterations without improvement.
pub struct Colony<'a, S> {
    instance: &'a Instance<S>,
    params: MmasParams<S>,
    upper_bound: S,
    builder: TourBuilder<S>,
    pheromone: PheromoneState<S>,
    incumbent: Incumbent,
    iteration: u64,
    since_improvement: u64,
    started: Instant,
}

impl<'a, S: Scalar> Colony<'a, S> {
    pub fn new(instance: &'a Instance<S>, params: MmasParams<S>) -> Result<Self> {
        params.validate()?;
        let n = instance.num_cities();
        let upper_bound = fractional_kp_ub(instance);
        let initial = S::one() / (params.rho * (upper_bound + S::one()));
        let pheromone = PheromoneState::new(n, initial, params.tau_min_divisor);
        let mut builder = TourBuilder::new(instance, params.beta, params.candidate_list_size);
        builder.refresh(&pheromone, params.alpha);
        let direct = Solution::direct(n);
        Ok(Self {
            instance,
            upper_bound,
            builder,
            pheromone,
            incumbent: Incumbent {
                full_tour: direct.tour.clone(),
                solution: direct,
                profit: 0,
            },
            iteration: 0,
            since_improvement: 0,
            started: Instant::now(),
            params,
        })
    }

    pub fn pheromone(&self) -> &PheromoneState<S> {
        &self.pheromone
    }

    pub fn best(&self) -> (&Solution, u64) {
        (&self.incumbent.solution, self.incumbent.profit)
    }

    pub fn upper_bound(&self) -> S {
        self.upper_bound
    }

    pub fn iterations_done(&self) -> u64 {
        self.iteration
    }

    fn ant(&self, ant: usize) -> (Vec<usize>, Packing) {
        let mut rng = ant_rng(self.params.seed, self.iteration, ant);
        let tour = self.builder.construct(&mut rng);
        let packing = pack(&tour, self.params.ptries, &mut rng, self.instance);
        (tour, packing)
    }

    /// Runs one iteration: construction, packing, incumbent and trail update.
    pub fn step(&mut self) -> Result<IterationStats<S>> {
        let ants: Vec<(Vec<usize>, Packing)> = if self.params.parallel {
            (0..self.params.ants)
                .into_par_iter()
                .map(|a| self.ant(a))
                .collect()
        } else {
            (0..self.params.ants).map(|a| self.ant(a)).collect()
        };

        // first ant with the highest profit
        let (ib_tour, ib_pack) =
            ants.iter().fold(
                &ants[0],
                |best, a| if a.1.profit > best.1.profit { a } else { best },
            );
        let ib_cost = fitness_cost(ib_pack.profit, self.upper_bound)?;
        let ib_pruned = prune_tour(ib_tour, &ib_pack.items, self.instance);

        if ib_pack.profit > self.incumbent.profit {
            self.incumbent = Incumbent {
                full_tour: ib_tour.clone(),
                solution: Solution::new(ib_pruned.clone(), ib_pack.items.clone()),
                profit: ib_pack.profit,
            };
            self.since_improvement = 0;
        } else {
            self.since_improvement += 1;
        }

        let rho = self.params.rho;
        let divisor = self.params.tau_min_divisor;
        if self.iteration == 0 {
            self.pheromone.observe_cost(ib_cost, rho, divisor);
            self.pheromone.reset_to_max();
        }
        let global_turn = (self.iteration + 1).is_multiple_of(self.params.global_best_period);
        let (route, cost) = if global_turn {
            let cost = fitness_cost(self.incumbent.profit, self.upper_bound)?;
            let route = match self.params.deposit {
                DepositRoute::Pruned => self.incumbent.solution.tour.clone(),
                DepositRoute::Full => self.incumbent.full_tour.clone(),
            };
            (route, cost)
        } else {
            let route = match self.params.deposit {
                DepositRoute::Pruned => ib_pruned,
                DepositRoute::Full => ib_tour.clone(),
            };
            (route, ib_cost)
        };
        self.pheromone.update(&route, cost, rho, divisor);
        if self.since_improvement >= self.params.stagnation_limit {
            self.pheromone.reset_to_max();
            self.since_improvement = 0;
        }
        debug_assert!(self.pheromone.within_bounds());
        self.builder.refresh(&self.pheromone, self.params.alpha);

        self.iteration += 1;
        Ok(IterationStats {
            iteration: self.iteration,
            elapsed: self.started.elapsed(),
            iter_best_profit: ib_pack.profit,
            global_best_profit: self.incumbent.profit,
            tau_min: self.pheromone.tau_min(),
            tau_max: self.pheromone.tau_max(),
        })
    }

    fn exhausted(&self) -> bool {
        match self.params.budget {
            Budget::Iterations(k) => self.iteration >= k,
            Budget::WallClock(d) => self.started.elapsed() >= d,
            Budget::PerItems => {
                self.started.elapsed()
                    >= Duration::from_secs(Budget::default_seconds(self.instance.num_items()))
            }
        }
    }

    /// Steps until the budget is spent. At least one iteration runs unless
    /// the budget is zero iterations.
    pub fn run(mut self) -> Result<RunReport<S>> {
        let mut stats = Vec::new();
        let zero_iterations = self.params.budget == Budget::Iterations(0);
        if !zero_iterations {
            loop {
                stats.push(self.step()?);
                if self.exhausted() {
                    break;
                }
            }
        }
        let evaluation = evaluate(&self.incumbent.solution, self.instance);
        Ok(RunReport {
            solution: self.incumbent.solution,
            evaluation,
            stats,
            upper_bound: self.upper_bound,
            elapsed: self.started.elapsed(),
        })
    }
}

/// Runs the ant system on `instance` until the budget in `params` is spent.
///
/// A two-city instance has a single route and returns immediately. If no
/// ant ever packs a profitable feasible plan, the direct trip with an empty
/// knapsack is returned; it is infeasible only when no solution is.
pub fn solve<S: Scalar>(instance: &Instance<S>, params: &MmasParams<S>) -> Result<RunReport<S>> {
    params.validate()?;
    if instance.num_cities() == 2 {
        let solution = Solution::direct(2);
        let evaluation = evaluate(&solution, instance);
        return Ok(RunReport {
            solution,
            evaluation,
            stats: Vec::new(),
            upper_bound: fractional_kp_ub(instance),
            elapsed: Duration::ZERO,
        });
    }
    Colony::new(instance, params.clone())?.run()
}
