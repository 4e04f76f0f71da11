//! Grid graph model: canonical edge indexing, scenarios, and path states.
//!
//! The area of interest is an `rows x cols` grid of nodes. Robots travel
//! along grid edges; each (robot, edge) pair is one binary decision
//! variable. Edges carry a canonical index so that bit-vectors, basis
//! states, and reports are reproducible across runs: all horizontal edges
//! come first in row-major order, then all vertical edges in row-major
//! order.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Node position, zero-based, row 0 at the top.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
pub struct Coord {
    pub row: usize,
    pub col: usize,
}

impl Coord {
    pub fn new(row: usize, col: usize) -> Self {
        Self { row, col }
    }
}

impl fmt::Display for Coord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.row, self.col)
    }
}

/// Canonical index of a grid edge, in `[0, cols*(rows-1) + rows*(cols-1))`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
pub struct EdgeIndex(usize);

impl EdgeIndex {
    /// Wraps a raw canonical index. The ordering is documented and stable:
    /// horizontal edges row-major first, then vertical edges row-major.
    pub fn new(index: usize) -> Self {
        Self(index)
    }

    pub fn index(self) -> usize {
        self.0
    }
}

impl fmt::Display for EdgeIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e{}", self.0)
    }
}

/// Rectangular grid topology with the canonical edge ordering.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Grid {
    rows: usize,
    cols: usize,
}

impl Grid {
    pub fn new(rows: usize, cols: usize) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::InvalidScenario(
                "grid dimensions must be positive".into(),
            ));
        }
        Ok(Self { rows, cols })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn node_count(&self) -> usize {
        self.rows * self.cols
    }

    /// Number of horizontal edges; vertical edges are indexed after these.
    pub fn horizontal_count(&self) -> usize {
        self.rows * (self.cols - 1)
    }

    /// Total edge count `cols*(rows-1) + rows*(cols-1)`.
    pub fn edge_count(&self) -> usize {
        self.cols * (self.rows - 1) + self.rows * (self.cols - 1)
    }

    pub fn contains(&self, node: Coord) -> bool {
        node.row < self.rows && node.col < self.cols
    }

    fn check_contains(&self, node: Coord) -> Result<()> {
        if self.contains(node) {
            Ok(())
        } else {
            Err(Error::OutOfBounds {
                row: node.row,
                col: node.col,
                rows: self.rows,
                cols: self.cols,
            })
        }
    }

    /// Row-major node index, used for degree tables.
    pub fn node_id(&self, node: Coord) -> usize {
        node.row * self.cols + node.col
    }

    /// Canonical index of the edge between two adjacent nodes. Symmetric in
    /// argument order; errors on out-of-bounds or non-adjacent nodes.
    pub fn edge_index(&self, a: Coord, b: Coord) -> Result<EdgeIndex> {
        self.check_contains(a)?;
        self.check_contains(b)?;
        let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
        if lo.row == hi.row && lo.col + 1 == hi.col {
            Ok(EdgeIndex(lo.row * (self.cols - 1) + lo.col))
        } else if lo.col == hi.col && lo.row + 1 == hi.row {
            Ok(EdgeIndex(
                self.horizontal_count() + lo.row * self.cols + lo.col,
            ))
        } else {
            Err(Error::NotAdjacent(a.row, a.col, b.row, b.col))
        }
    }

    /// The two endpoints of an edge, lexicographically ordered.
    pub fn edge_endpoints(&self, edge: EdgeIndex) -> (Coord, Coord) {
        let h = self.horizontal_count();
        if edge.0 < h {
            let row = edge.0 / (self.cols - 1);
            let col = edge.0 % (self.cols - 1);
            (Coord::new(row, col), Coord::new(row, col + 1))
        } else {
            let v = edge.0 - h;
            let row = v / self.cols;
            let col = v % self.cols;
            (Coord::new(row, col), Coord::new(row + 1, col))
        }
    }

    /// True when the edge runs horizontally.
    pub fn is_horizontal(&self, edge: EdgeIndex) -> bool {
        edge.0 < self.horizontal_count()
    }

    /// All edges incident to a node, sorted by index. Corner nodes have 2,
    /// border nodes 3, interior nodes 4.
    pub fn incident_edges(&self, node: Coord) -> Result<Vec<EdgeIndex>> {
        self.check_contains(node)?;
        let mut edges = Vec::with_capacity(4);
        for nb in self.neighbors(node) {
            edges.push(self.edge_index(node, nb).expect("neighbors are adjacent"));
        }
        edges.sort_unstable();
        Ok(edges)
    }

    /// Grid-adjacent nodes, in row-major order.
    pub fn neighbors(&self, node: Coord) -> Vec<Coord> {
        let mut out = Vec::with_capacity(4);
        if node.row > 0 {
            out.push(Coord::new(node.row - 1, node.col));
        }
        if node.col > 0 {
            out.push(Coord::new(node.row, node.col - 1));
        }
        if node.col + 1 < self.cols {
            out.push(Coord::new(node.row, node.col + 1));
        }
        if node.row + 1 < self.rows {
            out.push(Coord::new(node.row + 1, node.col));
        }
        out
    }

    /// All edges in canonical order.
    pub fn edges(&self) -> impl Iterator<Item = EdgeIndex> {
        (0..self.edge_count()).map(EdgeIndex)
    }

    /// All nodes in row-major order.
    pub fn nodes(&self) -> impl Iterator<Item = Coord> + '_ {
        (0..self.rows).flat_map(move |r| (0..self.cols).map(move |c| Coord::new(r, c)))
    }
}

/// Source and destination of one robot.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct RobotEndpoints {
    pub source: Coord,
    pub dest: Coord,
}

/// A fully validated planning scenario: grid, robots with endpoints,
/// obstacles, edge weights and lengths, and cost coefficients.
///
/// Obstacles are modeled only through edge weights: every edge incident to
/// an obstacle node carries a strictly positive weight, every other edge a
/// strictly negative one, so that minimizing the cost steers paths away
/// from obstacles and toward coverage. Obstacle nodes stay in the graph.
#[derive(Clone, Debug)]
pub struct GridScenario {
    grid: Grid,
    endpoints: Vec<RobotEndpoints>,
    obstacles: BTreeSet<Coord>,
    weights: Vec<f64>,
    lengths: Vec<f64>,
    alphas: [f64; 3],
    degree_targets: Vec<u32>,
}

impl GridScenario {
    pub fn builder(rows: usize, cols: usize) -> ScenarioBuilder {
        ScenarioBuilder::new(rows, cols)
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn robots(&self) -> usize {
        self.endpoints.len()
    }

    pub fn endpoints(&self) -> &[RobotEndpoints] {
        &self.endpoints
    }

    pub fn endpoint(&self, robot: usize) -> RobotEndpoints {
        self.endpoints[robot]
    }

    pub fn obstacles(&self) -> &BTreeSet<Coord> {
        &self.obstacles
    }

    pub fn is_obstacle(&self, node: Coord) -> bool {
        self.obstacles.contains(&node)
    }

    /// Weight `w_e` of an edge.
    pub fn weight(&self, edge: EdgeIndex) -> f64 {
        self.weights[edge.index()]
    }

    /// Length `d_e` of an edge.
    pub fn length(&self, edge: EdgeIndex) -> f64 {
        self.lengths[edge.index()]
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn lengths(&self) -> &[f64] {
        &self.lengths
    }

    /// Cost coefficients `(alpha0, alpha1, alpha2)`.
    pub fn alphas(&self) -> [f64; 3] {
        self.alphas
    }

    /// True when either endpoint of the edge is an obstacle node.
    pub fn is_obstacle_edge(&self, edge: EdgeIndex) -> bool {
        let (a, b) = self.grid.edge_endpoints(edge);
        self.is_obstacle(a) || self.is_obstacle(b)
    }

    /// Target joint degree of a node for the degree cost term: the number
    /// of robot paths required to terminate there, or 2 for every other
    /// node. Robots with source equal to destination have an empty path
    /// and contribute nothing.
    pub fn degree_target(&self, node: Coord) -> u32 {
        self.degree_targets[self.grid.node_id(node)]
    }

    /// Checks that a state's dimensions match this scenario.
    pub fn check_dimensions(&self, state: &PathState) -> Result<()> {
        if state.robots() != self.robots() || state.edge_count() != self.grid.edge_count() {
            return Err(Error::DimensionMismatch {
                state_robots: state.robots(),
                state_edges: state.edge_count(),
                robots: self.robots(),
                edges: self.grid.edge_count(),
            });
        }
        Ok(())
    }

    /// True when every robot's bits form a valid path between its endpoints.
    pub fn is_feasible(&self, state: &PathState) -> bool {
        self.check_dimensions(state).is_ok()
            && (0..self.robots()).all(|r| {
                let ep = self.endpoints[r];
                is_valid_path(&self.grid, state.robot_bits(r), ep.source, ep.dest)
            })
    }
}

/// Builder for [`GridScenario`]; validation happens in [`ScenarioBuilder::build`].
#[derive(Clone, Debug)]
pub struct ScenarioBuilder {
    rows: usize,
    cols: usize,
    endpoints: Vec<RobotEndpoints>,
    obstacles: Vec<Coord>,
    obstacle_edge_weight: f64,
    normal_edge_weight: f64,
    weight_overrides: Vec<(Coord, Coord, f64)>,
    length_overrides: Vec<(Coord, Coord, f64)>,
    alphas: [f64; 3],
}

impl ScenarioBuilder {
    pub fn new(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            endpoints: Vec::new(),
            obstacles: Vec::new(),
            obstacle_edge_weight: 10.0,
            normal_edge_weight: -1.0,
            weight_overrides: Vec::new(),
            length_overrides: Vec::new(),
            alphas: [1.0, 1.0, 1.0],
        }
    }

    /// Adds a robot with the given source and destination nodes.
    pub fn robot(mut self, source: Coord, dest: Coord) -> Self {
        self.endpoints.push(RobotEndpoints { source, dest });
        self
    }

    pub fn obstacle(mut self, node: Coord) -> Self {
        self.obstacles.push(node);
        self
    }

    pub fn alphas(mut self, a0: f64, a1: f64, a2: f64) -> Self {
        self.alphas = [a0, a1, a2];
        self
    }

    pub fn obstacle_edge_weight(mut self, w: f64) -> Self {
        self.obstacle_edge_weight = w;
        self
    }

    pub fn normal_edge_weight(mut self, w: f64) -> Self {
        self.normal_edge_weight = w;
        self
    }

    /// Overrides the weight of one edge, given by its endpoints.
    pub fn edge_weight(mut self, a: Coord, b: Coord, w: f64) -> Self {
        self.weight_overrides.push((a, b, w));
        self
    }

    /// Overrides the length of one edge, given by its endpoints.
    pub fn edge_length(mut self, a: Coord, b: Coord, d: f64) -> Self {
        self.length_overrides.push((a, b, d));
        self
    }

    pub fn build(self) -> Result<GridScenario> {
        let grid = Grid::new(self.rows, self.cols)?;
        if self.endpoints.is_empty() {
            return Err(Error::InvalidScenario(
                "scenario needs at least one robot".into(),
            ));
        }

        let mut obstacles = BTreeSet::new();
        for node in &self.obstacles {
            if !grid.contains(*node) {
                return Err(Error::InvalidScenario(format!(
                    "obstacle {node} is outside the {}x{} grid",
                    grid.rows(),
                    grid.cols()
                )));
            }
            obstacles.insert(*node);
        }

        for (r, ep) in self.endpoints.iter().enumerate() {
            for (role, node) in [("source", ep.source), ("dest", ep.dest)] {
                if !grid.contains(node) {
                    return Err(Error::InvalidScenario(format!(
                        "robot {r} {role} {node} is outside the grid"
                    )));
                }
                if obstacles.contains(&node) {
                    return Err(Error::InvalidScenario(format!(
                        "robot {r} {role} {node} coincides with an obstacle"
                    )));
                }
            }
        }

        let is_obstacle_edge = |edge: EdgeIndex| {
            let (a, b) = grid.edge_endpoints(edge);
            obstacles.contains(&a) || obstacles.contains(&b)
        };

        let mut weights: Vec<f64> = grid
            .edges()
            .map(|e| {
                if is_obstacle_edge(e) {
                    self.obstacle_edge_weight
                } else {
                    self.normal_edge_weight
                }
            })
            .collect();
        for (a, b, w) in &self.weight_overrides {
            let e = grid.edge_index(*a, *b)?;
            weights[e.index()] = *w;
        }

        let mut lengths = vec![1.0; grid.edge_count()];
        for (a, b, d) in &self.length_overrides {
            let e = grid.edge_index(*a, *b)?;
            if *d < 0.0 {
                return Err(Error::InvalidScenario(format!(
                    "edge length for {a}-{b} must be nonnegative, got {d}"
                )));
            }
            lengths[e.index()] = *d;
        }

        for e in grid.edges() {
            let w = weights[e.index()];
            if is_obstacle_edge(e) {
                if w <= 0.0 {
                    let (a, b) = grid.edge_endpoints(e);
                    return Err(Error::InvalidScenario(format!(
                        "edge {a}-{b} touches an obstacle and must have strictly positive weight, got {w}"
                    )));
                }
            } else if w >= 0.0 {
                let (a, b) = grid.edge_endpoints(e);
                return Err(Error::InvalidScenario(format!(
                    "edge {a}-{b} does not touch an obstacle and must have strictly negative weight, got {w}"
                )));
            }
        }

        if self.alphas.iter().any(|a| *a < 0.0 || !a.is_finite()) {
            return Err(Error::InvalidScenario(format!(
                "cost coefficients must be finite and nonnegative, got {:?}",
                self.alphas
            )));
        }

        let mut degree_targets = vec![2u32; grid.node_count()];
        for ep in &self.endpoints {
            if ep.source == ep.dest {
                continue; // empty path, terminates nowhere
            }
            for node in [ep.source, ep.dest] {
                let id = grid.node_id(node);
                if degree_targets[id] == 2 {
                    degree_targets[id] = 1;
                } else {
                    degree_targets[id] += 1;
                }
            }
        }

        Ok(GridScenario {
            grid,
            endpoints: self.endpoints,
            obstacles,
            weights,
            lengths,
            alphas: self.alphas,
            degree_targets,
        })
    }
}

/// Joint decision-variable assignment: one bit per (robot, edge) pair.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct PathState {
    bits: Vec<Vec<bool>>,
}

impl PathState {
    /// All-zero state for the given dimensions.
    pub fn empty(robots: usize, edge_count: usize) -> Self {
        Self {
            bits: vec![vec![false; edge_count]; robots],
        }
    }

    /// Wraps per-robot bit-vectors; all rows must have equal length.
    pub fn from_bits(bits: Vec<Vec<bool>>) -> Self {
        debug_assert!(bits.windows(2).all(|w| w[0].len() == w[1].len()));
        Self { bits }
    }

    pub fn robots(&self) -> usize {
        self.bits.len()
    }

    pub fn edge_count(&self) -> usize {
        self.bits.first().map_or(0, Vec::len)
    }

    pub fn get(&self, robot: usize, edge: EdgeIndex) -> bool {
        self.bits[robot][edge.index()]
    }

    pub fn set(&mut self, robot: usize, edge: EdgeIndex, value: bool) {
        self.bits[robot][edge.index()] = value;
    }

    pub fn flip(&mut self, robot: usize, edge: EdgeIndex) {
        self.bits[robot][edge.index()] ^= true;
    }

    pub fn robot_bits(&self, robot: usize) -> &[bool] {
        &self.bits[robot]
    }

    pub fn robot_bits_mut(&mut self, robot: usize) -> &mut [bool] {
        &mut self.bits[robot]
    }

    pub fn rows(&self) -> &[Vec<bool>] {
        &self.bits
    }

    /// Active edges of one robot in canonical order.
    pub fn active_edges(&self, robot: usize) -> impl Iterator<Item = EdgeIndex> + '_ {
        self.bits[robot]
            .iter()
            .enumerate()
            .filter_map(|(i, &b)| b.then_some(EdgeIndex(i)))
    }

    /// Lexicographic order on the robot-major flattened bit matrix, with
    /// `false < true`. Used for deterministic tie-breaking.
    pub fn lex_cmp(&self, other: &Self) -> Ordering {
        for (a, b) in self.bits.iter().zip(&other.bits) {
            match a.cmp(b) {
                Ordering::Equal => {}
                ord => return ord,
            }
        }
        self.bits.len().cmp(&other.bits.len())
    }
}

/// Structural path validity: true iff the active edges form exactly one
/// simple path from `source` to `dest` (endpoint degree 1, every other
/// touched node degree 2, connected, acyclic). When `source == dest` the
/// only valid state is the empty one.
pub fn is_valid_path(grid: &Grid, bits: &[bool], source: Coord, dest: Coord) -> bool {
    debug_assert_eq!(bits.len(), grid.edge_count());
    let active: Vec<EdgeIndex> = bits
        .iter()
        .enumerate()
        .filter_map(|(i, &b)| b.then_some(EdgeIndex(i)))
        .collect();

    if source == dest {
        return active.is_empty();
    }
    if active.is_empty() {
        return false;
    }

    let mut degree = vec![0u32; grid.node_count()];
    for &e in &active {
        let (a, b) = grid.edge_endpoints(e);
        degree[grid.node_id(a)] += 1;
        degree[grid.node_id(b)] += 1;
    }

    let src_id = grid.node_id(source);
    let dst_id = grid.node_id(dest);
    if degree[src_id] != 1 || degree[dst_id] != 1 {
        return false;
    }
    for (id, &d) in degree.iter().enumerate() {
        if id != src_id && id != dst_id && d != 0 && d != 2 {
            return false;
        }
    }

    // Degrees are path-like; it remains to rule out extra components
    // (which, under these degrees, must be cycles). Walk from the source
    // and count the edges we can reach.
    let mut used = vec![false; grid.edge_count()];
    let mut current = source;
    let mut walked = 0usize;
    loop {
        let mut next = None;
        for nb in grid.neighbors(current) {
            let e = grid.edge_index(current, nb).expect("adjacent");
            if bits[e.index()] && !used[e.index()] {
                next = Some((e, nb));
                break;
            }
        }
        match next {
            Some((e, nb)) => {
                used[e.index()] = true;
                walked += 1;
                current = nb;
            }
            None => break,
        }
    }
    current == dest && walked == active.len()
}
