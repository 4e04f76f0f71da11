//! Multi-robot coverage path planning on rectangular grid maps.
//!
//! The toolkit models an area of interest as a grid of viewpoint nodes.
//! Each robot covers a simple path between its source and destination;
//! one bit per (robot, edge) pair encodes the joint plan. A single local
//! move — the simultaneous bit flip of a four-node cell — explores the
//! whole space of valid paths, and the same move powers every solver in
//! the crate:
//!
//! * [`solvers::dfs_solve`] — exhaustive baseline over all valid paths,
//! * [`solvers::sa_solve`] — simulated annealing with flip neighborhoods,
//! * [`solvers::ga_solve`] — mutation-only evolutionary search,
//! * [`qaoa`] — a statevector simulator whose constrained mixers apply
//!   the flip in superposition without ever leaving the feasible space,
//! * [`resources`] — closed-form qubit and gate counts for running the
//!   quantum circuits on hardware.
//!
//! The `covpath` binary drives all of this from scenario files; see the
//! guide under `book/` for a walkthrough.

pub mod cli;
pub mod cost;
pub mod error;
pub mod grid;
pub mod moves;
pub mod qaoa;
pub mod render;
pub mod resources;
pub mod scenario;
pub mod solvers;

pub use error::{Error, Result};
pub use grid::{Coord, EdgeIndex, Grid, GridScenario, PathState, RobotEndpoints};

// The guide's code blocks double as doc-tests, so `cargo test --doc`
// keeps every chapter of book/ compiling and passing against the current
// API.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    pub mod introduction {}
    #[doc = include_str!("../../../book/src/grid-model.md")]
    pub mod grid_model {}
    #[doc = include_str!("../../../book/src/cost-model.md")]
    pub mod cost_model {}
    #[doc = include_str!("../../../book/src/path-moves.md")]
    pub mod path_moves {}
    #[doc = include_str!("../../../book/src/classical-solvers.md")]
    pub mod classical_solvers {}
    #[doc = include_str!("../../../book/src/qaoa-simulator.md")]
    pub mod qaoa_simulator {}
    #[doc = include_str!("../../../book/src/resource-estimates.md")]
    pub mod resource_estimates {}
    #[doc = include_str!("../../../book/src/command-line.md")]
    pub mod command_line {}
}
