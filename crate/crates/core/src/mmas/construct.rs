use rand::Rng;

use super::params::MmasParams;
use super::pheromone::PheromoneState;
use crate::model::Instance;
use crate::Scalar;

/// Probabilistic tour construction.
///
/// Tours start at city 0, visit every interior city exactly once and end at
/// city `n - 1`, which is never chosen during construction but appended last.
/// The next city is drawn with probability proportional to
/// `tau^alpha * (1/d)^beta`, first among the unvisited entries of the current
/// city's candidate list, otherwise among all unvisited interior cities.
#[derive(Debug, Clone)]
pub struct TourBuilder<S> {
    n: usize,
    candidates: Vec<Vec<usize>>,
    /// `(1/d)^beta`, with zero distances treated as 1
    heuristic: Vec<S>,
    /// `tau^alpha * (1/d)^beta`, refreshed after every pheromone update
    choice: Vec<S>,
}

impl<S: Scalar> TourBuilder<S> {
    pub fn new(instance: &Instance<S>, beta: S, candidate_list_size: usize) -> Self {
        let n = instance.num_cities();
        let mut heuristic = vec![S::zero(); n * n];
        for a in 0..n {
            for b in 0..n {
                let d = instance.dist(a, b).max(1);
                heuristic[a * n + b] = (S::one() / S::from_u64_lossy(d)).powf(beta);
            }
        }
        let interior: Vec<usize> = (1..n.saturating_sub(1)).collect();
        let candidates = (0..n)
            .map(|a| {
                let mut near: Vec<usize> = interior.iter().copied().filter(|&b| b != a).collect();
                near.sort_by_key(|&b| (instance.dist(a, b), b));
                near.truncate(candidate_list_size);
                near
            })
            .collect();
        Self {
            n,
            candidates,
            choice: heuristic.clone(),
            heuristic,
        }
    }

    pub fn candidates(&self, city: usize) -> &[usize] {
        &self.candidates[city]
    }

    pub fn refresh(&mut self, pheromone: &PheromoneState<S>, alpha: S) {
        debug_assert_eq!(pheromone.num_cities(), self.n);
        for (k, c) in self.choice.iter_mut().enumerate() {
            *c = pheromone.values()[k].powf(alpha) * self.heuristic[k];
        }
    }

    pub fn construct<R: Rng + ?Sized>(&self, rng: &mut R) -> Vec<usize> {
        let n = self.n;
        let mut tour = Vec::with_capacity(n);
        tour.push(0);
        if n < 2 {
            return tour;
        }
        let mut visited = vec![false; n];
        visited[0] = true;
        visited[n - 1] = true;
        let mut current = 0;
        let mut pool: Vec<(usize, S)> = Vec::with_capacity(n);
        for _ in 0..n - 2 {
            pool.clear();
            let row = &self.choice[current * n..(current + 1) * n];
            pool.extend(
                self.candidates[current]
                    .iter()
                    .filter(|&&c| !visited[c])
                    .map(|&c| (c, row[c])),
            );
            if pool.is_empty() {
                pool.extend((1..n - 1).filter(|&c| !visited[c]).map(|c| (c, row[c])));
            }
            let next = roulette(&pool, rng);
            visited[next] = true;
            tour.push(next);
            current = next;
        }
        tour.push(n - 1);
        tour
    }
}

/// Draws an entry with probability proportional to its weight. Degenerate
/// weights (all zero or non-finite total) fall back to the heaviest entry.
fn roulette<S: Scalar, R: Rng + ?Sized>(pool: &[(usize, S)], rng: &mut R) -> usize {
    debug_assert!(!pool.is_empty());
    let total = pool.iter().fold(S::zero(), |acc, &(_, w)| acc + w);
    if !(total.is_finite() && total > S::zero()) {
        return pool
            .iter()
            .fold(pool[0], |best, &e| if e.1 > best.1 { e } else { best })
            .0;
    }
    let target = S::lit(rng.gen::<f64>()) * total;
    let mut acc = S::zero();
    for &(city, w) in pool {
        acc = acc + w;
        if acc > target {
            return city;
        }
    }
    // rounding left the target past the last partial sum
    pool.iter()
        .rev()
        .find(|e| e.1 > S::zero())
        .unwrap_or(&pool[0])
        .0
}

/// Builds one tour from scratch with the given trails and parameters.
pub fn construct_tour<S: Scalar, R: Rng + ?Sized>(
    pheromone: &PheromoneState<S>,
    params: &MmasParams<S>,
    rng: &mut R,
    instance: &Instance<S>,
) -> Vec<usize> {
    let mut builder = TourBuilder::new(instance, params.beta, params.candidate_list_size);
    builder.refresh(pheromone, params.alpha);
    builder.construct(rng)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{Item, Limits};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn matrix_instance(matrix: Vec<Vec<u64>>) -> Instance<f64> {
        let n = matrix.len();
        let items = (1..n - 1).map(|c| Item::new(1, 1, c)).collect();
        let limits = Limits {
            capacity: 10,
            max_time: 100.0,
            min_speed: 0.1,
            max_speed: 1.0,
        };
        Instance::from_matrix("m", matrix, items, limits).unwrap()
    }

    fn five_cities() -> Instance<f64> {
        matrix_instance(vec![
            vec![0, 3, 7, 2, 9],
            vec![3, 0, 4, 5, 6],
            vec![7, 4, 0, 6, 2],
            vec![2, 5, 6, 0, 8],
            vec![9, 6, 2, 8, 0],
        ])
    }

    #[test]
    fn trivial_sizes() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let params = MmasParams::<f64>::default();
        let two = matrix_instance(vec![vec![0, 4], vec![4, 0]]);
        let three = matrix_instance(vec![vec![0, 1, 2], vec![1, 0, 1], vec![2, 1, 0]]);
        for _ in 0..10 {
            let p2 = PheromoneState::new(2, 1.0, 2.0);
            assert_eq!(construct_tour(&p2, &params, &mut rng, &two), vec![0, 1]);
            let p3 = PheromoneState::new(3, 1.0, 2.0);
            assert_eq!(
                construct_tour(&p3, &params, &mut rng, &three),
                vec![0, 1, 2]
            );
        }
    }

    #[test]
    fn tours_are_hamiltonian_paths() {
        let inst = five_cities();
        let params = MmasParams::<f64> {
            beta: 1.0,
            candidate_list_size: 2,
            ..Default::default()
        };
        let pher = PheromoneState::new(5, 1.0, 2.0);
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..200 {
            let tour = construct_tour(&pher, &params, &mut rng, &inst);
            assert_eq!(tour.first(), Some(&0));
            assert_eq!(tour.last(), Some(&4));
            let mut sorted = tour.clone();
            sorted.sort_unstable();
            assert_eq!(sorted, vec![0, 1, 2, 3, 4]);
        }
    }

    #[test]
    fn steep_beta_follows_nearest_neighbour() {
        // by hand: from 1 the nearest interior city is 4 (d=2), then 2 (d=5), then 3 (d=4)
        let inst = five_cities();
        let params = MmasParams::<f64> {
            alpha: 0.0,
            beta: 40.0,
            ..Default::default()
        };
        let pher = PheromoneState::new(5, 1.0, 2.0);
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let greedy = vec![0, 3, 1, 2, 4];
        let hits = (0..1000)
            .filter(|_| construct_tour(&pher, &params, &mut rng, &inst) == greedy)
            .count();
        assert!(hits >= 995, "{hits}");
    }

    #[test]
    fn candidate_lists_skip_endpoints() {
        let b = TourBuilder::new(&five_cities(), 1.0, 2);
        assert_eq!(b.candidates(0), &[3, 1]);
        assert_eq!(b.candidates(2), &[1, 3]);
        assert!(b.candidates(4).iter().all(|&c| c != 0 && c != 4));
    }

    #[test]
    fn roulette_degenerate_weights() {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        assert_eq!(roulette(&[(3, 0.0), (5, 0.0)], &mut rng), 3);
        assert_eq!(roulette(&[(3, 0.0), (5, 1e-300 * 1e-300)], &mut rng), 3);
        assert_eq!(roulette(&[(3, 0.0), (5, 2.0)], &mut rng), 5);
    }
}
