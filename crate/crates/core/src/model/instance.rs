use crate::error::{Error, Result};
use crate::Scalar;

/// How pairwise distances are obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EdgeWeightType {
    /// Euclidean distance between coordinates, rounded up.
    Ceil2d,
    /// A full symmetric integer matrix given in the file.
    Explicit,
}

impl EdgeWeightType {
    pub fn keyword(self) -> &'static str {
        match self {
            EdgeWeightType::Ceil2d => "CEIL_2D",
            EdgeWeightType::Explicit => "EXPLICIT",
        }
    }
}

/// A stealable item. `city` is a 0-based city index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Item {
    pub profit: u64,
    pub weight: u64,
    pub city: usize,
}

impl Item {
    pub fn new(profit: u64, weight: u64, city: usize) -> Self {
        Self {
            profit,
            weight,
            city,
        }
    }
}

/// Knapsack and travel limits shared by both edge-weight modes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Limits<S> {
    pub capacity: u64,
    pub max_time: S,
    pub min_speed: S,
    pub max_speed: S,
}

/// A validated ThOP instance.
///
/// Cities are 0-based internally: the thief starts at city `0` and must end
/// at city `n - 1`. Items live on interior cities only. The distance matrix
/// is materialized at construction, so the value is immutable and cheap to
/// share between threads.
#[derive(Debug, Clone, PartialEq)]
pub struct Instance<S> {
    pub(crate) name: String,
    pub(crate) knapsack_data_type: Option<String>,
    pub(crate) items: Vec<Item>,
    pub(crate) limits: Limits<S>,
    pub(crate) edge_weight_type: EdgeWeightType,
    pub(crate) coords: Option<Vec<[f64; 2]>>,
    n: usize,
    dist: Vec<u64>,
    items_by_city: Vec<Vec<usize>>,
}

/// `ceil` of the Euclidean distance between two points.
pub fn ceil_euclidean(a: [f64; 2], b: [f64; 2]) -> u64 {
    let dx = a[0] - b[0];
    let dy = a[1] - b[1];
    (dx * dx + dy * dy).sqrt().ceil() as u64
}

impl<S: Scalar> Instance<S> {
    /// Builds a CEIL_2D instance from city coordinates.
    pub fn from_coords(
        name: impl Into<String>,
        coords: Vec<[f64; 2]>,
        items: Vec<Item>,
        limits: Limits<S>,
    ) -> Result<Self> {
        if let Some((i, _)) = coords
            .iter()
            .enumerate()
            .find(|(_, c)| !c[0].is_finite() || !c[1].is_finite())
        {
            return Err(Error::InvalidInstance(format!(
                "city {} has non-finite coordinates",
                i + 1
            )));
        }
        let n = coords.len();
        let mut dist = vec![0u64; n * n];
        for i in 0..n {
            for j in (i + 1)..n {
                let d = ceil_euclidean(coords[i], coords[j]);
                dist[i * n + j] = d;
                dist[j * n + i] = d;
            }
        }
        Self::assemble(
            name.into(),
            n,
            dist,
            Some(coords),
            EdgeWeightType::Ceil2d,
            items,
            limits,
        )
    }

    /// Builds an EXPLICIT instance from a full distance matrix.
    pub fn from_matrix(
        name: impl Into<String>,
        matrix: Vec<Vec<u64>>,
        items: Vec<Item>,
        limits: Limits<S>,
    ) -> Result<Self> {
        let n = matrix.len();
        let mut dist = Vec::with_capacity(n * n);
        for (i, row) in matrix.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidInstance(format!(
                    "distance row {} has {} entries, expected {}",
                    i + 1,
                    row.len(),
                    n
                )));
            }
            dist.extend_from_slice(row);
        }
        for i in 0..n {
            if dist[i * n + i] != 0 {
                return Err(Error::InvalidInstance(format!(
                    "distance from city {} to itself must be 0",
                    i + 1
                )));
            }
            for j in (i + 1)..n {
                if dist[i * n + j] != dist[j * n + i] {
                    return Err(Error::InvalidInstance(format!(
                        "distance matrix is not symmetric at cities {} and {}",
                        i + 1,
                        j + 1
                    )));
                }
            }
        }
        Self::assemble(
            name.into(),
            n,
            dist,
            None,
            EdgeWeightType::Explicit,
            items,
            limits,
        )
    }

    fn assemble(
        name: String,
        n: usize,
        dist: Vec<u64>,
        coords: Option<Vec<[f64; 2]>>,
        edge_weight_type: EdgeWeightType,
        items: Vec<Item>,
        limits: Limits<S>,
    ) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidInstance(format!(
                "an instance needs at least 2 cities, got {n}"
            )));
        }
        validate_limits(&limits)?;
        let mut items_by_city = vec![Vec::new(); n];
        for (id, item) in items.iter().enumerate() {
            if item.city == 0 || item.city >= n - 1 {
                return Err(Error::InvalidInstance(format!(
                    "item {} is at city {}; items must lie on cities 2..={}",
                    id + 1,
                    item.city + 1,
                    n - 1
                )));
            }
            if item.profit == 0 || item.weight == 0 {
                return Err(Error::InvalidInstance(format!(
                    "item {} must have positive profit and weight",
                    id + 1
                )));
            }
            items_by_city[item.city].push(id);
        }
        Ok(Self {
            name,
            knapsack_data_type: None,
            items,
            limits,
            edge_weight_type,
            coords,
            n,
            dist,
            items_by_city,
        })
    }

    /// Same instance with a different time limit.
    pub fn with_max_time(&self, max_time: S) -> Result<Self> {
        let limits = Limits {
            max_time,
            ..self.limits
        };
        validate_limits(&limits)?;
        Ok(Self {
            limits,
            ..self.clone()
        })
    }

    /// Same instance with a different knapsack capacity.
    pub fn with_capacity(&self, capacity: u64) -> Result<Self> {
        let limits = Limits {
            capacity,
            ..self.limits
        };
        validate_limits(&limits)?;
        Ok(Self {
            limits,
            ..self.clone()
        })
    }

    pub fn with_knapsack_data_type(mut self, kind: Option<String>) -> Self {
        self.knapsack_data_type = kind;
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn knapsack_data_type(&self) -> Option<&str> {
        self.knapsack_data_type.as_deref()
    }

    pub fn num_cities(&self) -> usize {
        self.n
    }

    pub fn num_items(&self) -> usize {
        self.items.len()
    }

    pub fn start(&self) -> usize {
        0
    }

    pub fn end(&self) -> usize {
        self.n - 1
    }

    pub fn items(&self) -> &[Item] {
        &self.items
    }

    pub fn item(&self, id: usize) -> &Item {
        &self.items[id]
    }

    /// Ids of the items located at `city`.
    pub fn items_at(&self, city: usize) -> &[usize] {
        &self.items_by_city[city]
    }

    pub fn limits(&self) -> &Limits<S> {
        &self.limits
    }

    pub fn capacity(&self) -> u64 {
        self.limits.capacity
    }

    pub fn max_time(&self) -> S {
        self.limits.max_time
    }

    pub fn min_speed(&self) -> S {
        self.limits.min_speed
    }

    pub fn max_speed(&self) -> S {
        self.limits.max_speed
    }

    pub fn edge_weight_type(&self) -> EdgeWeightType {
        self.edge_weight_type
    }

    pub fn coords(&self) -> Option<&[[f64; 2]]> {
        self.coords.as_deref()
    }

    /// Checked distance between two 0-based cities.
    pub fn distance(&self, a: usize, b: usize) -> Result<u64> {
        for city in [a, b] {
            if city >= self.n {
                return Err(Error::CityOutOfRange {
                    city: city + 1,
                    n: self.n,
                });
            }
        }
        Ok(self.dist(a, b))
    }

    /// Unchecked distance; panics on out-of-range indices.
    #[inline]
    pub fn dist(&self, a: usize, b: usize) -> u64 {
        self.dist[a * self.n + b]
    }

    /// Row of distances from `a` to every city.
    pub fn dist_row(&self, a: usize) -> &[u64] {
        &self.dist[a * self.n..(a + 1) * self.n]
    }

    /// Speed with `weight` in the knapsack.
    pub fn speed(&self, weight: u64) -> Result<S> {
        if weight > self.limits.capacity {
            return Err(Error::Overweight {
                weight,
                capacity: self.limits.capacity,
            });
        }
        Ok(self.speed_at(weight))
    }

    /// `v_max - w * (v_max - v_min) / W`, without the capacity check.
    /// A full knapsack yields exactly `v_min`.
    #[inline]
    pub fn speed_at(&self, weight: u64) -> S {
        let Limits {
            capacity,
            min_speed,
            max_speed,
            ..
        } = self.limits;
        debug_assert!(weight <= capacity);
        if weight >= capacity {
            return min_speed;
        }
        max_speed
            - S::from_u64_lossy(weight) * (max_speed - min_speed) / S::from_u64_lossy(capacity)
    }

    /// Time to cover `distance` while carrying `weight`.
    #[inline]
    pub fn leg_time(&self, distance: u64, weight: u64) -> S {
        S::from_u64_lossy(distance) / self.speed_at(weight)
    }

    /// Whether `time` respects the time limit, with [`Scalar::time_slack`].
    #[inline]
    pub fn within_time(&self, time: S) -> bool {
        time <= self.limits.max_time + S::time_slack(self.limits.max_time)
    }

    pub fn total_weight(&self, items: &[usize]) -> u64 {
        items.iter().map(|&i| self.items[i].weight).sum()
    }

    pub fn total_profit(&self, items: &[usize]) -> u64 {
        items.iter().map(|&i| self.items[i].profit).sum()
    }
}

fn validate_limits<S: Scalar>(limits: &Limits<S>) -> Result<()> {
    let Limits {
        capacity,
        max_time,
        min_speed,
        max_speed,
    } = *limits;
    if capacity == 0 {
        return Err(Error::InvalidInstance(
            "knapsack capacity must be positive".into(),
        ));
    }
    if !max_time.is_finite() || max_time < S::zero() {
        return Err(Error::InvalidInstance(format!(
            "max time must be finite and non-negative, got {max_time}"
        )));
    }
    if !(min_speed.is_finite() && max_speed.is_finite())
        || min_speed <= S::zero()
        || min_speed > max_speed
    {
        return Err(Error::InvalidInstance(format!(
            "speeds must satisfy 0 < min speed <= max speed, got {min_speed} and {max_speed}"
        )));
    }
    Ok(())
}

/// A candidate answer: a route and the ids of the stolen items (both 0-based).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Solution {
    pub tour: Vec<usize>,
    pub items: Vec<usize>,
}

impl Solution {
    pub fn new(tour: Vec<usize>, items: Vec<usize>) -> Self {
        Self { tour, items }
    }

    /// Direct trip from the first to the last city, stealing nothing.
    pub fn direct(num_cities: usize) -> Self {
        Self {
            tour: vec![0, num_cities - 1],
            items: Vec::new(),
        }
    }
}
