//! Randomized multi-try greedy packing for a fixed tour, and the fractional
//! knapsack upper bound.
//!
//! Each attempt draws exponents `(θ, δ, γ)` summing to one and ranks the
//! items on the tour by `p^θ / (w^δ · d^γ)`, where `d` is the distance the
//! item would be carried along the tour. Items are then added greedily in
//! rank order, skipping any that would break the capacity or the time limit.
//! The time check walks only the cities holding selected items, in tour order.

use std::cmp::Ordering;

use rand::Rng;

use crate::error::{Error, Result};
use crate::model::Instance;
use crate::Scalar;

/// Exponents applied to profit, weight and carried distance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScoreWeights<S> {
    pub theta: S,
    pub delta: S,
    pub gamma: S,
}

fn sum_tolerance<S: Scalar>() -> S {
    S::lit(1e-12).max(S::epsilon() * S::lit(16.0))
}

impl<S: Scalar> ScoreWeights<S> {
    /// Checked constructor: components must be non-negative and sum to one.
    pub fn new(theta: S, delta: S, gamma: S) -> Result<Self> {
        if [theta, delta, gamma]
            .iter()
            .any(|v| !v.is_finite() || *v < S::zero())
        {
            return Err(Error::InvalidScoreWeights(format!(
                "components must be finite and non-negative, got ({theta}, {delta}, {gamma})"
            )));
        }
        let sum = theta + delta + gamma;
        if (sum - S::one()).abs() > sum_tolerance::<S>() {
            return Err(Error::InvalidScoreWeights(format!(
                "components must sum to 1, got {sum}"
            )));
        }
        Ok(Self {
            theta,
            delta,
            gamma,
        })
    }

    /// Normalizes three non-negative raw values by their sum.
    pub fn from_raw(a: S, b: S, c: S) -> Result<Self> {
        let sum = a + b + c;
        if [a, b, c].iter().any(|v| !v.is_finite() || *v < S::zero()) || sum <= S::lit(1e-12) {
            return Err(Error::InvalidScoreWeights(format!(
                "cannot normalize ({a}, {b}, {c})"
            )));
        }
        Ok(Self {
            theta: a / sum,
            delta: b / sum,
            gamma: c / sum,
        })
    }

    /// Three independent uniform draws on `[0, 1)`, normalized.
    pub fn draw<R: Rng + ?Sized>(rng: &mut R) -> Self {
        loop {
            let raw: [f64; 3] = [rng.gen(), rng.gen(), rng.gen()];
            if raw.iter().all(|&v| v < 1e-12) {
                continue;
            }
            if let Ok(w) = Self::from_raw(S::lit(raw[0]), S::lit(raw[1]), S::lit(raw[2])) {
                return w;
            }
        }
    }
}

/// `p^θ / (w^δ · d^γ)`.
pub fn score<S: Scalar>(profit: u64, weight: u64, distance: u64, weights: &ScoreWeights<S>) -> S {
    let p = S::from_u64_lossy(profit);
    let w = S::from_u64_lossy(weight);
    let d = S::from_u64_lossy(distance);
    p.powf(weights.theta) / (w.powf(weights.delta) * d.powf(weights.gamma))
}

/// Remaining tour length from every position to the end of `tour`.
pub fn suffix_distances<S: Scalar>(tour: &[usize], instance: &Instance<S>) -> Vec<u64> {
    let mut out = vec![0u64; tour.len()];
    for k in (0..tour.len().saturating_sub(1)).rev() {
        out[k] = out[k + 1] + instance.dist(tour[k], tour[k + 1]);
    }
    out
}

/// Distance item `item` would be carried from its city to the end of `tour`.
pub fn suffix_distance<S: Scalar>(
    item: usize,
    tour: &[usize],
    instance: &Instance<S>,
) -> Result<u64> {
    if item >= instance.num_items() {
        return Err(Error::ItemOutOfRange {
            item: item + 1,
            m: instance.num_items(),
        });
    }
    let city = instance.item(item).city;
    let pos = tour
        .iter()
        .position(|&c| c == city)
        .ok_or(Error::CityNotOnTour {
            item: item + 1,
            city: city + 1,
        })?;
    Ok(tour[pos..]
        .windows(2)
        .map(|w| instance.dist(w[0], w[1]))
        .sum())
}

/// An item that can be stolen on a given tour.
#[derive(Debug, Clone, Copy)]
struct Candidate {
    item: usize,
    pos: usize,
    weight: u64,
    profit: u64,
    /// carried distance, at least 1 so that coincident cities still score
    dist: u64,
}

/// The items reachable on one tour, with their carried distances fixed.
///
/// Built once per tour and reused by every attempt of [`pack`].
#[derive(Debug, Clone)]
pub struct TourItems<'a> {
    tour: &'a [usize],
    candidates: Vec<Candidate>,
}

impl<'a> TourItems<'a> {
    pub fn new<S: Scalar>(tour: &'a [usize], instance: &Instance<S>) -> Self {
        let suffix = suffix_distances(tour, instance);
        let mut candidates = Vec::new();
        let mut seen = vec![false; instance.num_cities()];
        for (pos, &city) in tour.iter().enumerate() {
            if std::mem::replace(&mut seen[city], true) {
                continue;
            }
            for &item in instance.items_at(city) {
                let it = instance.item(item);
                candidates.push(Candidate {
                    item,
                    pos,
                    weight: it.weight,
                    profit: it.profit,
                    dist: suffix[pos].max(1),
                });
            }
        }
        candidates.sort_unstable_by_key(|c| c.item);
        Self { tour, candidates }
    }

    pub fn len(&self) -> usize {
        self.candidates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.candidates.is_empty()
    }

    /// One greedy attempt with fixed exponents.
    pub fn pack_once<S: Scalar>(
        &self,
        weights: &ScoreWeights<S>,
        instance: &Instance<S>,
    ) -> Packing {
        let mut ranked: Vec<(S, usize)> = self
            .candidates
            .iter()
            .enumerate()
            .map(|(k, c)| (score(c.profit, c.weight, c.dist, weights), k))
            .collect();
        // decreasing score; equal scores keep the lower item id first
        ranked.sort_by(|a, b| {
            b.0.partial_cmp(&a.0)
                .unwrap_or(Ordering::Equal)
                .then_with(|| self.candidates[a.1].item.cmp(&self.candidates[b.1].item))
        });

        let capacity = instance.capacity();
        let mut load = vec![0u64; self.tour.len()];
        let mut active: Vec<usize> = Vec::new();
        let mut weight = 0u64;
        let mut profit = 0u64;
        let mut chosen = Vec::new();
        for &(_, k) in &ranked {
            let c = self.candidates[k];
            if weight + c.weight > capacity {
                continue;
            }
            load[c.pos] += c.weight;
            let slot = active.binary_search(&c.pos);
            if let Err(at) = slot {
                active.insert(at, c.pos);
            }
            if self.route_fits(&active, &load, instance) {
                weight += c.weight;
                profit += c.profit;
                chosen.push(c.item);
            } else {
                load[c.pos] -= c.weight;
                if let Err(at) = slot {
                    active.remove(at);
                }
            }
        }
        chosen.sort_unstable();
        Packing {
            items: chosen,
            profit,
            weight,
        }
    }

    /// Travel time over start, the active positions and end, accumulated in
    /// the same order and with the same leg formula as the evaluator.
    fn route_fits<S: Scalar>(
        &self,
        active: &[usize],
        load: &[u64],
        instance: &Instance<S>,
    ) -> bool {
        let mut time = S::zero();
        let mut carried = 0u64;
        let mut prev = instance.start();
        for &pos in active {
            let city = self.tour[pos];
            time = time + instance.leg_time(instance.dist(prev, city), carried);
            if !instance.within_time(time) {
                return false;
            }
            carried += load[pos];
            prev = city;
        }
        time = time + instance.leg_time(instance.dist(prev, instance.end()), carried);
        instance.within_time(time)
    }
}

/// Result of packing a tour. `items` is sorted by id.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Packing {
    pub items: Vec<usize>,
    pub profit: u64,
    pub weight: u64,
}

/// One greedy attempt on `tour` with fixed exponents.
pub fn greedy_pack_once<S: Scalar>(
    tour: &[usize],
    weights: &ScoreWeights<S>,
    instance: &Instance<S>,
) -> Packing {
    TourItems::new(tour, instance).pack_once(weights, instance)
}

/// Best of `ptries` greedy attempts, each with freshly drawn exponents.
/// Ties keep the earlier attempt.
pub fn pack<S: Scalar, R: Rng + ?Sized>(
    tour: &[usize],
    ptries: usize,
    rng: &mut R,
    instance: &Instance<S>,
) -> Packing {
    let items = TourItems::new(tour, instance);
    let mut best = Packing::default();
    for _ in 0..ptries.max(1) {
        let weights = ScoreWeights::<S>::draw(rng);
        let attempt = items.pack_once(&weights, instance);
        if attempt.profit > best.profit {
            best = attempt;
        }
    }
    best
}

/// Optimum of the fractional knapsack relaxation over all items.
///
/// Reachability and time are ignored, so this bounds every feasible profit.
pub fn fractional_kp_ub<S: Scalar>(instance: &Instance<S>) -> S {
    let items = instance.items();
    let mut order: Vec<usize> = (0..items.len()).collect();
    // p_a / w_a > p_b / w_b  <=>  p_a * w_b > p_b * w_a
    order.sort_by(|&a, &b| {
        let lhs = items[a].profit as u128 * items[b].weight as u128;
        let rhs = items[b].profit as u128 * items[a].weight as u128;
        rhs.cmp(&lhs).then(a.cmp(&b))
    });
    let mut room = instance.capacity();
    let mut whole = 0u64;
    let mut fraction = S::zero();
    for i in order {
        let it = &items[i];
        if it.weight <= room {
            whole += it.profit;
            room -= it.weight;
        } else {
            fraction = S::from_u64_lossy(it.profit) * S::from_u64_lossy(room)
                / S::from_u64_lossy(it.weight);
            break;
        }
    }
    S::from_u64_lossy(whole) + fraction
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::evaluator::{evaluate, prune_tour};
    use crate::model::{example_instance, Item, Limits, Solution};
    use approx::assert_relative_eq;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    const FULL: [usize; 4] = [0, 1, 2, 3];

    #[test]
    fn suffix_distance_examples() {
        let inst = example_instance(75.0_f64);
        assert_eq!(suffix_distance(2, &FULL, &inst).unwrap(), 5);
        assert_eq!(suffix_distance(0, &FULL, &inst).unwrap(), 13);
        assert_eq!(suffix_distance(0, &[0, 2, 1, 3], &inst).unwrap(), 6);
        assert!(matches!(
            suffix_distance(0, &[0, 2, 3], &inst),
            Err(Error::CityNotOnTour { item: 1, city: 2 })
        ));
        assert_eq!(suffix_distances(&FULL, &inst), vec![18, 13, 5, 0]);
    }

    #[test]
    fn score_exponent_identities() {
        let w = ScoreWeights::new(1.0, 0.0, 0.0).unwrap();
        assert_eq!(score(100, 3, 5, &w), 100.0);
        let w = ScoreWeights::new(0.0, 1.0, 0.0).unwrap();
        assert_eq!(score(100, 4, 5, &w), 0.25);
        let third = 1.0 / 3.0;
        let w = ScoreWeights::new(third, third, third).unwrap();
        // cube root of 100/15, computed independently through logarithms
        let expected = ((100.0f64.ln() - 15.0f64.ln()) / 3.0).exp();
        assert_relative_eq!(score(100, 3, 5, &w), expected, epsilon = 1e-12);
        assert_relative_eq!(score(100, 3, 5, &w), 1.8821, epsilon = 1e-4);
    }

    #[test]
    fn weights_validation_and_normalization() {
        assert!(ScoreWeights::new(0.5, 0.5, 0.5).is_err());
        assert!(ScoreWeights::new(-0.5, 1.0, 0.5).is_err());
        let w = ScoreWeights::from_raw(0.5, 0.25, 0.25).unwrap();
        assert_eq!((w.theta, w.delta, w.gamma), (0.5, 0.25, 0.25));
        let w = ScoreWeights::from_raw(1.0, 1.0, 2.0).unwrap();
        assert_eq!((w.theta, w.delta, w.gamma), (0.25, 0.25, 0.5));
        assert!(ScoreWeights::<f64>::from_raw(0.0, 0.0, 0.0).is_err());
    }

    #[test]
    fn drawn_weights_average_a_third() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let draws = 100_000;
        let mut sums = [0.0f64; 3];
        for _ in 0..draws {
            let w = ScoreWeights::<f64>::draw(&mut rng);
            assert!((w.theta + w.delta + w.gamma - 1.0).abs() <= 1e-12);
            sums[0] += w.theta;
            sums[1] += w.delta;
            sums[2] += w.gamma;
        }
        for s in sums {
            assert!(
                (s / draws as f64 - 1.0 / 3.0).abs() < 0.01,
                "{}",
                s / draws as f64
            );
        }
    }

    #[test]
    fn profit_ranking_takes_the_heavy_item() {
        let inst = example_instance(75.0_f64);
        let w = ScoreWeights::new(1.0, 0.0, 0.0).unwrap();
        let p = greedy_pack_once(&FULL, &w, &inst);
        assert_eq!(p.items, vec![2]);
        assert_eq!(p.profit, 100);
    }

    #[test]
    fn zero_time_limit_packs_nothing() {
        let inst = example_instance(0.0_f64);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..50 {
            let w = ScoreWeights::<f64>::draw(&mut rng);
            assert!(greedy_pack_once(&FULL, &w, &inst).items.is_empty());
        }
    }

    #[test]
    fn tiny_capacity_packs_nothing() {
        let limits = Limits {
            capacity: 1,
            max_time: 1e6,
            min_speed: 0.1,
            max_speed: 1.0,
        };
        let inst = Instance::from_matrix(
            "w",
            vec![vec![0, 1, 1], vec![1, 0, 1], vec![1, 1, 0]],
            vec![Item::new(5, 2, 1), Item::new(9, 3, 1)],
            limits,
        )
        .unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        assert!(pack(&[0, 1, 2], 10, &mut rng, &inst).items.is_empty());
    }

    #[test]
    fn items_off_the_tour_are_ignored() {
        let inst = example_instance(75.0_f64);
        let w = ScoreWeights::new(1.0, 0.0, 0.0).unwrap();
        let p = greedy_pack_once(&[0, 1, 3], &w, &inst);
        assert!(p.items.iter().all(|&i| inst.item(i).city == 1));
    }

    #[test]
    fn single_try_matches_one_greedy_attempt() {
        let inst = example_instance(75.0_f64);
        for seed in 0..20 {
            let mut a = ChaCha8Rng::seed_from_u64(seed);
            let mut b = ChaCha8Rng::seed_from_u64(seed);
            let w = ScoreWeights::<f64>::draw(&mut b);
            let once = greedy_pack_once(&FULL, &w, &inst);
            let best = pack(&FULL, 1, &mut a, &inst);
            assert_eq!(best.items, once.items);
        }
    }

    #[test]
    fn more_tries_never_hurt_with_shared_randomness() {
        let inst = example_instance(75.0_f64);
        for seed in 0..50 {
            for k in 1..6 {
                let p_k = pack(&FULL, k, &mut ChaCha8Rng::seed_from_u64(seed), &inst).profit;
                let p_k1 = pack(&FULL, k + 1, &mut ChaCha8Rng::seed_from_u64(seed), &inst).profit;
                assert!(p_k1 >= p_k);
            }
        }
    }

    #[test]
    fn thirty_tries_find_the_optimum() {
        let inst = example_instance(75.0_f64);
        let hits = (0..1000u64)
            .filter(|&s| pack(&FULL, 30, &mut ChaCha8Rng::seed_from_u64(s), &inst).profit == 100)
            .count();
        assert!(hits >= 990, "{hits}");
    }

    #[test]
    fn packing_is_reproducible_and_feasible() {
        let inst = example_instance(20.0_f64);
        for seed in 0..200 {
            let a = pack(
                &[0, 2, 1, 3],
                3,
                &mut ChaCha8Rng::seed_from_u64(seed),
                &inst,
            );
            let b = pack(
                &[0, 2, 1, 3],
                3,
                &mut ChaCha8Rng::seed_from_u64(seed),
                &inst,
            );
            assert_eq!(a, b);
            let pruned = prune_tour(&[0, 2, 1, 3], &a.items, &inst);
            let ev = evaluate(&Solution::new(pruned, a.items.clone()), &inst);
            assert!(ev.is_feasible(), "{ev:?}");
            assert_eq!(ev.profit, a.profit);
            assert_eq!(ev.weight, a.weight);
        }
    }

    #[test]
    fn upper_bound_cases() {
        let inst = example_instance(75.0_f64);
        // ratio order 40, 40, 33.3: two light items and a third of the heavy one
        assert_relative_eq!(fractional_kp_ub(&inst), 80.0 + 100.0 / 3.0, epsilon = 1e-12);

        let roomy = inst.with_capacity(100).unwrap();
        assert_eq!(fractional_kp_ub(&roomy), 230.0);

        let limits = Limits {
            capacity: 4,
            max_time: 1.0,
            min_speed: 0.1,
            max_speed: 1.0,
        };
        let single = Instance::from_matrix(
            "one",
            vec![vec![0, 1, 1], vec![1, 0, 1], vec![1, 1, 0]],
            vec![Item::new(30, 10, 1)],
            limits,
        )
        .unwrap();
        assert_eq!(fractional_kp_ub(&single), 12.0);

        let empty =
            Instance::from_matrix("none", vec![vec![0, 1], vec![1, 0]], vec![], limits).unwrap();
        assert_eq!(fractional_kp_ub(&empty), 0.0);
    }
}
