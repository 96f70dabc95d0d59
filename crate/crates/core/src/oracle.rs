//! Exhaustive search for tiny instances.
//!
//! Every ordered selection of interior cities is tried as a route, in
//! lexicographic order of the interior sequence, and for each route every
//! subset of the items found on it. The best solution maximizes profit,
//! then minimizes travel time; remaining ties keep the first one found.

use crate::error::{Error, Result};
use crate::evaluator::{evaluate, Evaluation};
use crate::model::{Instance, Solution};
use crate::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleLimits {
    pub max_cities: usize,
    pub max_items: usize,
}

impl Default for OracleLimits {
    fn default() -> Self {
        Self {
            max_cities: 10,
            max_items: 14,
        }
    }
}

/// Which packing plans to enumerate on each route.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PlanSpace {
    /// Every subset of the items on the route.
    All,
    /// Only subsets stealing at least one item in every interior city.
    CoveringRoute,
}

#[derive(Debug, Clone, PartialEq)]
pub struct OracleResult<S> {
    /// Optimal profit; 0 when nothing is feasible.
    pub profit: u64,
    /// An optimal solution and its evaluation, if any solution is feasible.
    pub best: Option<(Solution, Evaluation<S>)>,
    /// Feasible (route, plan) pairs seen during the search.
    pub feasible_count: u64,
}

pub fn solve_exact<S: Scalar>(instance: &Instance<S>) -> Result<OracleResult<S>> {
    solve_exact_with(instance, OracleLimits::default(), PlanSpace::All)
}

pub fn solve_exact_with<S: Scalar>(
    instance: &Instance<S>,
    limits: OracleLimits,
    space: PlanSpace,
) -> Result<OracleResult<S>> {
    let n = instance.num_cities();
    let m = instance.num_items();
    if n > limits.max_cities || m > limits.max_items {
        return Err(Error::TooLarge(format!(
            "{n} cities and {m} items (limits: {} cities, {} items)",
            limits.max_cities, limits.max_items
        )));
    }
    let mut search = Search {
        instance,
        space,
        used: vec![false; n],
        sequence: Vec::with_capacity(n),
        best: None,
        feasible_count: 0,
    };
    search.visit();

    let best = search.best.map(|(tour, items, _, _)| {
        let solution = Solution::new(tour, items);
        let eval = evaluate(&solution, instance);
        debug_assert!(eval.is_feasible());
        (solution, eval)
    });
    Ok(OracleResult {
        profit: best.as_ref().map_or(0, |(_, e)| e.profit),
        best,
        feasible_count: search.feasible_count,
    })
}

struct Search<'a, S> {
    instance: &'a Instance<S>,
    space: PlanSpace,
    used: Vec<bool>,
    sequence: Vec<usize>,
    /// tour, items, profit, time
    best: Option<(Vec<usize>, Vec<usize>, u64, S)>,
    feasible_count: u64,
}

impl<S: Scalar> Search<'_, S> {
    fn visit(&mut self) {
        self.scan_plans();
        let n = self.instance.num_cities();
        for city in 1..n - 1 {
            if self.used[city] {
                continue;
            }
            self.used[city] = true;
            self.sequence.push(city);
            self.visit();
            self.sequence.pop();
            self.used[city] = false;
        }
    }

    /// Tries every plan on the route `start, sequence..., end`.
    fn scan_plans(&mut self) {
        let inst = self.instance;
        let mut tour = Vec::with_capacity(self.sequence.len() + 2);
        tour.push(inst.start());
        tour.extend_from_slice(&self.sequence);
        tour.push(inst.end());

        // (item id, position on tour), by item id
        let mut on_route: Vec<(usize, usize)> = self
            .sequence
            .iter()
            .enumerate()
            .flat_map(|(k, &city)| inst.items_at(city).iter().map(move |&i| (i, k + 1)))
            .collect();
        on_route.sort_unstable();
        let k = on_route.len();
        if self.space == PlanSpace::CoveringRoute
            && self.sequence.iter().any(|&c| inst.items_at(c).is_empty())
        {
            return;
        }

        let capacity = inst.capacity();
        let mut load = vec![0u64; tour.len()];
        for mask in 0u64..(1u64 << k) {
            let mut weight = 0u64;
            let mut profit = 0u64;
            load.iter_mut().for_each(|l| *l = 0);
            for (bit, &(item, pos)) in on_route.iter().enumerate() {
                if mask >> bit & 1 == 1 {
                    let it = inst.item(item);
                    weight += it.weight;
                    profit += it.profit;
                    load[pos] += it.weight;
                }
            }
            if weight > capacity {
                continue;
            }
            if self.space == PlanSpace::CoveringRoute && load[1..tour.len() - 1].contains(&0) {
                continue;
            }
            let mut time = S::zero();
            let mut carried = 0u64;
            for w in 0..tour.len() - 1 {
                carried += load[w];
                time = time + inst.leg_time(inst.dist(tour[w], tour[w + 1]), carried);
            }
            if !inst.within_time(time) {
                continue;
            }
            self.feasible_count += 1;
            let better = match &self.best {
                None => true,
                Some((_, _, p, t)) => profit > *p || (profit == *p && time < *t),
            };
            if better {
                let items = on_route
                    .iter()
                    .enumerate()
                    .filter(|(bit, _)| mask >> bit & 1 == 1)
                    .map(|(_, &(item, _))| item)
                    .collect();
                self.best = Some((tour.clone(), items, profit, time));
            }
        }
    }
}
