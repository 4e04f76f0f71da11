//! The composite objective evaluated on joint path states.
//!
//! Three terms are combined into a weighted sum
//! `total = alpha0*c1 + alpha1*c2 + alpha2*c3`:
//!
//! * `c1` — sum of covered edge weights. Obstacle-incident edges carry
//!   positive weights, all others negative, so minimizing `c1` avoids
//!   obstacles and rewards coverage.
//! * `c2` — workload balance: the sum over consecutive robot indices of
//!   the squared difference in covered length.
//! * `c3` — degree shaping: every node wants joint degree 2 (one pass),
//!   except nodes where robot paths must terminate, which want degree 1
//!   per terminating path.
//!
//! All terms are defined on arbitrary bit matrices, not only on valid
//! paths, so the same function can serve as the diagonal cost of the
//! quantum phase separator.

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::grid::{GridScenario, PathState};
use crate::moves::SubGrid;

/// The three cost terms and their weighted total.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CostBreakdown {
    pub c1: f64,
    pub c2: f64,
    pub c3: f64,
    pub total: f64,
}

/// Obstacle/coverage term: sum of `w_e` over all active (robot, edge) bits.
pub fn cost_c1(state: &PathState, scenario: &GridScenario) -> Result<f64> {
    scenario.check_dimensions(state)?;
    let weights = scenario.weights();
    let mut sum = 0.0;
    for robot in 0..state.robots() {
        for (i, &bit) in state.robot_bits(robot).iter().enumerate() {
            if bit {
                sum += weights[i];
            }
        }
    }
    Ok(sum)
}

/// Balance term: `sum_{r=1}^{R-1} (L_r - L_{r+1})^2` with
/// `L_r = sum_e d_e x_{r,e}`. Zero for a single robot.
pub fn cost_c2(state: &PathState, scenario: &GridScenario) -> Result<f64> {
    scenario.check_dimensions(state)?;
    let lengths = robot_lengths(state, scenario);
    Ok(balance_from_lengths(&lengths))
}

/// Degree term: for each node, the squared gap between the joint active
/// degree (summed over robots) and the node's target degree.
pub fn cost_c3(state: &PathState, scenario: &GridScenario) -> Result<f64> {
    scenario.check_dimensions(state)?;
    let degrees = joint_degrees(state, scenario);
    let grid = scenario.grid();
    let mut sum = 0.0;
    for node in grid.nodes() {
        let gap = degrees[grid.node_id(node)] as f64 - scenario.degree_target(node) as f64;
        sum += gap * gap;
    }
    Ok(sum)
}

/// All three terms and the weighted total.
pub fn cost_total(state: &PathState, scenario: &GridScenario) -> Result<CostBreakdown> {
    let c1 = cost_c1(state, scenario)?;
    let c2 = cost_c2(state, scenario)?;
    let c3 = cost_c3(state, scenario)?;
    let [a0, a1, a2] = scenario.alphas();
    Ok(CostBreakdown {
        c1,
        c2,
        c3,
        total: a0 * c1 + a1 * c2 + a2 * c3,
    })
}

fn robot_lengths(state: &PathState, scenario: &GridScenario) -> Vec<f64> {
    let lengths = scenario.lengths();
    (0..state.robots())
        .map(|r| {
            state
                .robot_bits(r)
                .iter()
                .enumerate()
                .filter(|(_, &b)| b)
                .map(|(i, _)| lengths[i])
                .sum()
        })
        .collect()
}

fn balance_from_lengths(lengths: &[f64]) -> f64 {
    lengths
        .windows(2)
        .map(|w| {
            let d = w[0] - w[1];
            d * d
        })
        .sum()
}

fn joint_degrees(state: &PathState, scenario: &GridScenario) -> Vec<u32> {
    let grid = scenario.grid();
    let mut degrees = vec![0u32; grid.node_count()];
    for robot in 0..state.robots() {
        for e in state.active_edges(robot) {
            let (a, b) = grid.edge_endpoints(e);
            degrees[grid.node_id(a)] += 1;
            degrees[grid.node_id(b)] += 1;
        }
    }
    degrees
}

/// Incremental cost tracker for local search: flipping one (robot, edge)
/// bit updates the total in time proportional to the edge's degree
/// footprint instead of re-scanning the whole state.
#[derive(Clone, Debug)]
pub struct JointCost<'a> {
    scenario: &'a GridScenario,
    state: PathState,
    robot_lengths: Vec<f64>,
    degrees: Vec<u32>,
    c1: f64,
    c3: f64,
}

impl<'a> JointCost<'a> {
    pub fn new(scenario: &'a GridScenario, state: PathState) -> Result<Self> {
        scenario.check_dimensions(&state)?;
        let robot_lengths = robot_lengths(&state, scenario);
        let degrees = joint_degrees(&state, scenario);
        let c1 = cost_c1(&state, scenario)?;
        let c3 = cost_c3(&state, scenario)?;
        Ok(Self {
            scenario,
            state,
            robot_lengths,
            degrees,
            c1,
            c3,
        })
    }

    pub fn state(&self) -> &PathState {
        &self.state
    }

    pub fn into_state(self) -> PathState {
        self.state
    }

    pub fn breakdown(&self) -> CostBreakdown {
        let c2 = balance_from_lengths(&self.robot_lengths);
        let [a0, a1, a2] = self.scenario.alphas();
        CostBreakdown {
            c1: self.c1,
            c2,
            c3: self.c3,
            total: a0 * self.c1 + a1 * c2 + a2 * self.c3,
        }
    }

    pub fn total(&self) -> f64 {
        self.breakdown().total
    }

    /// Flips one decision bit, updating the cached terms.
    pub fn flip(&mut self, robot: usize, edge: crate::grid::EdgeIndex) {
        let grid = self.scenario.grid();
        let was_active = self.state.get(robot, edge);
        let sign = if was_active { -1.0 } else { 1.0 };
        self.c1 += sign * self.scenario.weight(edge);
        self.robot_lengths[robot] += sign * self.scenario.length(edge);

        let (a, b) = grid.edge_endpoints(edge);
        for node in [a, b] {
            let id = grid.node_id(node);
            let target = self.scenario.degree_target(node) as f64;
            let old_gap = self.degrees[id] as f64 - target;
            if was_active {
                self.degrees[id] -= 1;
            } else {
                self.degrees[id] += 1;
            }
            let new_gap = self.degrees[id] as f64 - target;
            self.c3 += new_gap * new_gap - old_gap * old_gap;
        }
        self.state.flip(robot, edge);
    }

    /// Flips the four inner edges of a cell for one robot. Involutive:
    /// applying it twice restores state and cached terms exactly.
    pub fn flip_cell(&mut self, robot: usize, cell: &SubGrid) {
        for e in cell.inner_edges() {
            self.flip(robot, e);
        }
    }
}
