//! Crate-wide error type.

use thiserror::Error;

/// Errors produced by scenario validation, solvers, and the simulator.
#[derive(Debug, Error)]
pub enum Error {
    /// A coordinate lies outside the grid.
    #[error("node ({row}, {col}) is outside the {rows}x{cols} grid")]
    OutOfBounds {
        row: usize,
        col: usize,
        rows: usize,
        cols: usize,
    },

    /// Two nodes passed as an edge are not grid-adjacent.
    #[error("nodes ({0}, {1}) and ({2}, {3}) are not adjacent grid nodes")]
    NotAdjacent(usize, usize, usize, usize),

    /// A scenario failed a structural invariant.
    #[error("invalid scenario: {0}")]
    InvalidScenario(String),

    /// A state does not match the scenario's robot or edge dimensions.
    #[error("state has {state_robots} robots x {state_edges} edges, scenario expects {robots} x {edges}")]
    DimensionMismatch {
        state_robots: usize,
        state_edges: usize,
        robots: usize,
        edges: usize,
    },

    /// The grid is too small to contain a four-node cell.
    #[error("grid must be at least 2x2 to contain four-node cells, got {rows}x{cols}")]
    GridTooSmall { rows: usize, cols: usize },

    /// An enumeration or search exceeded its configured budget.
    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),

    /// No valid path exists for a robot (cannot occur on rectangular grids,
    /// kept for the solver contract).
    #[error("no valid path exists for robot {0}")]
    Infeasible(usize),

    /// The scenario needs more qubits than the simulator cap allows.
    #[error("scenario needs {needed} decision qubits, cap is {cap}")]
    QubitCapExceeded { needed: usize, cap: usize },

    /// A population member handed to the simulator is not a valid joint path.
    #[error("population member {0} is not a feasible joint path state")]
    InfeasibleMember(usize),

    /// The simulator was given an empty population.
    #[error("initial population is empty")]
    EmptyPopulation,

    /// A quantum state drifted away from unit norm.
    #[error("state norm {norm} deviates from 1 beyond tolerance {tolerance}")]
    NormDeviation { norm: f64, tolerance: f64 },

    /// The optimizer hit a non-finite expectation value.
    #[error("non-finite expectation value encountered during optimization")]
    NonFiniteExpectation,

    /// Scenario file could not be read or parsed.
    #[error("cannot load scenario {path}: {reason}")]
    ScenarioLoad { path: String, reason: String },

    /// I/O failure while writing artifacts.
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

/// Convenience result alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;
