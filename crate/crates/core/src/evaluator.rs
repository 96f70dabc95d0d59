//! Exact evaluation of solutions under the weight-dependent speed model.
//!
//! The thief picks up every stolen item at a city before leaving it, then
//! covers the next leg at the speed implied by the current load.

use std::fmt;

use crate::error::ParseError;
use crate::model::{Instance, Solution};
use crate::Scalar;

/// Why a solution is structurally invalid. Indices are 0-based; `Display`
/// prints them 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TourDefect {
    Empty,
    WrongStart { city: usize },
    WrongEnd { city: usize },
    RepeatedCity { city: usize },
    CityOutOfRange { city: usize },
    ItemOutOfRange { item: usize },
    DuplicateItem { item: usize },
    ItemAtUnvisitedCity { item: usize, city: usize },
}

impl fmt::Display for TourDefect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            TourDefect::Empty => write!(f, "empty tour"),
            TourDefect::WrongStart { city } => {
                write!(f, "tour starts at city {} instead of city 1", city + 1)
            }
            TourDefect::WrongEnd { city } => {
                write!(f, "tour ends at city {} instead of the last city", city + 1)
            }
            TourDefect::RepeatedCity { city } => write!(f, "city {} is visited twice", city + 1),
            TourDefect::CityOutOfRange { city } => write!(f, "city {} does not exist", city + 1),
            TourDefect::ItemOutOfRange { item } => write!(f, "item {} does not exist", item + 1),
            TourDefect::DuplicateItem { item } => write!(f, "item {} is stolen twice", item + 1),
            TourDefect::ItemAtUnvisitedCity { item, city } => {
                write!(f, "item {} at unvisited city {}", item + 1, city + 1)
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Violation {
    Overweight,
    Overtime,
    MalformedTour(TourDefect),
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Overweight => write!(f, "overweight"),
            Violation::Overtime => write!(f, "overtime"),
            Violation::MalformedTour(defect) => write!(f, "malformed-tour: {defect}"),
        }
    }
}

/// Outcome of simulating a solution.
///
/// `distance` is the total length of the route and `cities` the number of
/// cities on it (endpoints included). For overweight solutions the speed is
/// floored at `v_min` so that a time can still be reported.
#[derive(Debug, Clone, PartialEq)]
pub struct Evaluation<S> {
    pub profit: u64,
    pub weight: u64,
    pub time: S,
    pub distance: u64,
    pub cities: usize,
    pub violation: Option<Violation>,
}

impl<S: Scalar> Evaluation<S> {
    pub fn is_feasible(&self) -> bool {
        self.violation.is_none()
    }
}

/// Simulates `solution` on `instance`.
pub fn evaluate<S: Scalar>(solution: &Solution, instance: &Instance<S>) -> Evaluation<S> {
    let n = instance.num_cities();
    let m = instance.num_items();
    let tour = &solution.tour;
    let mut defect: Option<TourDefect> = None;
    let mut note = |d: TourDefect| {
        defect.get_or_insert(d);
    };

    match (tour.first(), tour.last()) {
        (None, _) | (_, None) => note(TourDefect::Empty),
        (Some(&first), Some(&last)) => {
            if first != instance.start() {
                note(TourDefect::WrongStart { city: first });
            }
            if last != instance.end() || tour.len() < 2 {
                note(TourDefect::WrongEnd { city: last });
            }
        }
    }

    // position of each city on the tour, first visit only
    let mut position = vec![usize::MAX; n];
    for (pos, &city) in tour.iter().enumerate() {
        if city >= n {
            note(TourDefect::CityOutOfRange { city });
        } else if position[city] != usize::MAX {
            note(TourDefect::RepeatedCity { city });
        } else {
            position[city] = pos;
        }
    }

    let mut pickup = vec![0u64; tour.len()];
    let mut taken = vec![false; m];
    let mut profit = 0u64;
    let mut weight = 0u64;
    for &item in &solution.items {
        if item >= m {
            note(TourDefect::ItemOutOfRange { item });
            continue;
        }
        if taken[item] {
            note(TourDefect::DuplicateItem { item });
            continue;
        }
        taken[item] = true;
        let it = instance.item(item);
        profit += it.profit;
        weight += it.weight;
        match position[it.city] {
            usize::MAX => note(TourDefect::ItemAtUnvisitedCity {
                item,
                city: it.city,
            }),
            pos => pickup[pos] += it.weight,
        }
    }

    let capacity = instance.capacity();
    let mut time = S::zero();
    let mut distance = 0u64;
    let mut carried = 0u64;
    let mut prev: Option<usize> = None;
    for (pos, &city) in tour.iter().enumerate() {
        if city >= n {
            continue;
        }
        if let Some(p) = prev {
            let d = instance.dist(p, city);
            distance += d;
            time = time + instance.leg_time(d, carried.min(capacity));
        }
        carried += pickup[pos];
        prev = Some(city);
    }

    let violation = if let Some(d) = defect {
        Some(Violation::MalformedTour(d))
    } else if weight > capacity {
        Some(Violation::Overweight)
    } else if !instance.within_time(time) {
        Some(Violation::Overtime)
    } else {
        None
    };

    Evaluation {
        profit,
        weight,
        time,
        distance,
        cities: tour.len(),
        violation,
    }
}

/// Drops every city on `tour` where nothing in `items` is stolen, keeping
/// the start and end cities and the original order.
pub fn prune_tour<S: Scalar>(
    tour: &[usize],
    items: &[usize],
    instance: &Instance<S>,
) -> Vec<usize> {
    let mut used = vec![false; instance.num_cities()];
    used[instance.start()] = true;
    used[instance.end()] = true;
    for &item in items {
        used[instance.item(item).city] = true;
    }
    tour.iter().copied().filter(|&c| used[c]).collect()
}

/// Writes the two-line solution format: interior cities of the tour, then
/// stolen item ids, both 1-based and bracketed (`[2 3]` / `[1 4]`).
pub fn format_solution(solution: &Solution) -> String {
    let interior = if solution.tour.len() >= 2 {
        &solution.tour[1..solution.tour.len() - 1]
    } else {
        &[][..]
    };
    let mut items = solution.items.clone();
    items.sort_unstable();
    format!("{}\n{}\n", bracket(interior), bracket(&items))
}

fn bracket(ids: &[usize]) -> String {
    let body: Vec<String> = ids.iter().map(|i| (i + 1).to_string()).collect();
    format!("[{}]", body.join(" "))
}

fn unbracket(line: &str, lineno: usize, what: &str) -> Result<Vec<usize>, ParseError> {
    let body = line
        .trim()
        .strip_prefix('[')
        .and_then(|s| s.strip_suffix(']'))
        .ok_or_else(|| {
            ParseError::new(
                lineno,
                format!("{what}: expected a bracketed list, found {line:?}"),
            )
        })?;
    body.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| match t.parse::<usize>() {
            Ok(v) if v >= 1 => Ok(v - 1),
            _ => Err(ParseError::new(
                lineno,
                format!("{what}: expected a positive integer, found {t:?}"),
            )),
        })
        .collect()
}

/// Reads the two-line solution format for an instance with `num_cities`
/// cities. The start and end cities are implicit and re-added here.
pub fn parse_solution(text: &str, num_cities: usize) -> Result<Solution, ParseError> {
    let mut lines = text
        .lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty());
    let (l1, tour_line) = lines
        .next()
        .ok_or_else(|| ParseError::new(1, "missing tour line"))?;
    let (l2, items_line) = lines
        .next()
        .ok_or_else(|| ParseError::new(l1 + 2, "missing packing plan line"))?;
    if let Some((l3, extra)) = lines.next() {
        return Err(ParseError::new(
            l3 + 1,
            format!("unexpected trailing content {extra:?}"),
        ));
    }
    let interior = unbracket(tour_line, l1 + 1, "tour")?;
    let items = unbracket(items_line, l2 + 1, "packing plan")?;
    let mut tour = Vec::with_capacity(interior.len() + 2);
    tour.push(0);
    tour.extend(interior);
    tour.push(num_cities - 1);
    Ok(Solution::new(tour, items))
}
