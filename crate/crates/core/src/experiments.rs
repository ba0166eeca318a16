//! Built-in regression problems: degree 15, 21 nodes, shared data vector.

use crate::bvcore::NodeSet;

/// Data values shared by both problems.
pub const DATA: [f64; 21] = [
    3.0, 4.0, 0.0, -2.0, 5.0, 0.0, 1.0, 9.0, -3.0, 7.0, -1.0, 0.0, 2.0, 2.0, -4.0, -2.0, 3.0, 8.0, -6.0, 4.0, 1.0,
];

pub const DEGREE: usize = 15;

/// Node fractions `(p, q)` of the non-uniform problem.
pub const CLUSTERED_FRACTIONS: [(u32, u32); 21] = [
    (1, 22),
    (1, 20),
    (1, 18),
    (1, 16),
    (1, 14),
    (1, 12),
    (1, 10),
    (1, 8),
    (1, 6),
    (1, 4),
    (1, 2),
    (23, 42),
    (21, 38),
    (19, 34),
    (17, 30),
    (15, 26),
    (13, 22),
    (11, 18),
    (9, 14),
    (7, 10),
    (5, 6),
];

#[derive(Clone, Debug)]
pub struct Experiment {
    pub id: &'static str,
    pub nodes: NodeSet,
    pub data: Vec<f64>,
    pub degree: usize,
}

/// Equispaced nodes `i/22`, `i = 1..21`.
pub fn example_5_1() -> Experiment {
    let nodes = (1..=21).map(|i| i as f64 / 22.0).collect();
    Experiment {
        id: "5.1",
        nodes: NodeSet::new(nodes).expect("valid nodes"),
        data: DATA.to_vec(),
        degree: DEGREE,
    }
}

/// Nodes clustered near the left end, with a second run in `(1/2, 5/6]`.
pub fn example_5_2() -> Experiment {
    let nodes = CLUSTERED_FRACTIONS.iter().map(|&(p, q)| p as f64 / q as f64).collect();
    Experiment {
        id: "5.2",
        nodes: NodeSet::new(nodes).expect("valid nodes"),
        data: DATA.to_vec(),
        degree: DEGREE,
    }
}

pub fn by_id(id: &str) -> Option<Experiment> {
    match id {
        "5.1" => Some(example_5_1()),
        "5.2" => Some(example_5_2()),
        _ => None,
    }
}
