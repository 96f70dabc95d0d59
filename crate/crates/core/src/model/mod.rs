//! Instances, items, solutions and the instance file format.

mod instance;
mod io;

pub use instance::{ceil_euclidean, EdgeWeightType, Instance, Item, Limits, Solution};
pub use io::{parse_instance, serialize_instance};

/// The classic four-city, five-item ThOP example with the given time limit
/// (75 in its usual form, 20 for the tight variant).
///
/// `W = 3`, `v_min = 0.1`, `v_max = 1`. The 1-4 edge is never used by an
/// optimum and is set to 11. Item 2 (profit 30, weight 3 on city 2) never
/// takes part in an optimum either.
pub fn example_instance<S: crate::Scalar>(max_time: S) -> Instance<S> {
    let matrix = vec![
        vec![0, 5, 6, 11],
        vec![5, 0, 8, 6],
        vec![6, 8, 0, 5],
        vec![11, 6, 5, 0],
    ];
    let items = vec![
        Item::new(20, 2, 1),
        Item::new(30, 3, 1),
        Item::new(100, 3, 2),
        Item::new(40, 1, 2),
        Item::new(40, 1, 2),
    ];
    let limits = Limits {
        capacity: 3,
        max_time,
        min_speed: S::lit(0.1),
        max_speed: S::lit(1.0),
    };
    Instance::from_matrix("example4", matrix, items, limits).expect("example instance is valid")
}
