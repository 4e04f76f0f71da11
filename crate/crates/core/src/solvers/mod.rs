//! Classical solvers sharing the cell-flip move: an exhaustive DFS
//! baseline, simulated annealing, and a mutation-only genetic algorithm.

mod dfs;
mod ga;
mod sa;

pub use dfs::{dfs_solve, enumerate_paths, DfsConfig};
pub use ga::{ga_solve, GaConfig};
pub use sa::{sa_solve, AnnealSchedule};

use serde::Serialize;

use crate::cost::CostBreakdown;
use crate::grid::PathState;

/// Outcome of one solver run.
///
/// `best_cost` is always recomputed from `best_state` from scratch, never
/// taken from incremental bookkeeping.
#[derive(Clone, Debug, Serialize)]
pub struct SolverResult {
    /// The best joint path state found.
    #[serde(serialize_with = "serialize_state")]
    pub best_state: PathState,
    /// Cost breakdown of `best_state`.
    pub best_cost: CostBreakdown,
    /// `(iteration, best-so-far total)` samples.
    pub history: Vec<(u64, f64)>,
    /// Raw per-step totals, recorded by the stochastic solvers.
    #[serde(skip)]
    pub raw_history: Vec<(u64, f64)>,
    /// Number of cost evaluations performed.
    pub evaluations: u64,
    /// Seed the run was started with.
    pub seed: u64,
}

fn serialize_state<S: serde::Serializer>(
    state: &PathState,
    ser: S,
) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = ser.serialize_seq(Some(state.robots()))?;
    for robot in 0..state.robots() {
        let bits: Vec<u8> = state.robot_bits(robot).iter().map(|&b| b as u8).collect();
        seq.serialize_element(&bits)?;
    }
    seq.end()
}
