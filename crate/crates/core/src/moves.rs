//! The simultaneous bit flip (SBF) move: complementing the four edges of a
//! four-node grid cell maps one local path to its complementary route.
//!
//! A unit cell has nodes `a b / d c` (a top-left, then clockwise) and inner
//! edges `ab, bc, cd, da`. Inside the cell there are exactly two routes
//! between any two of its nodes, and they are bitwise complements of each
//! other, so flipping all four inner bits at once rewires the local path
//! while leaving its entry and exit points fixed. Three rules decide when
//! the flip keeps the global path valid:
//!
//! * the cell must carry at least one active inner edge (flipping an empty
//!   cell would create a loop),
//! * the inner bits must not form two parallel tracks (flipping them would
//!   swap which outside segments connect),
//! * no cell node may have both of its outside edges active (the path
//!   passes through without entering; flipping would crisscross it).
//!
//! One further guard is needed that the rules above do not cover: a path
//! endpoint sitting on the cell whose single incident edge leaves the cell
//! would gain inner degree from the flip and stop being an endpoint. The
//! flip is blocked in that case, which is exactly the set of flips that
//! would leave the valid-path space (see `flip_allowed`).

use std::collections::{HashMap, HashSet, VecDeque};

use crate::error::{Error, Result};
use crate::grid::{is_valid_path, Coord, EdgeIndex, Grid, GridScenario, RobotEndpoints};

/// One four-node cell: corner node, the four inner edges in `ab, bc, cd,
/// da` order, and for each node its outside edges (incident edges that are
/// not inner edges; up to two, fewer on the grid boundary).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubGrid {
    corner: Coord,
    nodes: [Coord; 4],
    inner: [EdgeIndex; 4],
    outside: [[Option<EdgeIndex>; 2]; 4],
}

impl SubGrid {
    /// Builds the cell whose top-left node is `corner`.
    pub fn new(grid: &Grid, corner: Coord) -> Result<Self> {
        if grid.rows() < 2 || grid.cols() < 2 {
            return Err(Error::GridTooSmall {
                rows: grid.rows(),
                cols: grid.cols(),
            });
        }
        if corner.row + 1 >= grid.rows() || corner.col + 1 >= grid.cols() {
            return Err(Error::OutOfBounds {
                row: corner.row,
                col: corner.col,
                rows: grid.rows() - 1,
                cols: grid.cols() - 1,
            });
        }
        let a = corner;
        let b = Coord::new(corner.row, corner.col + 1);
        let c = Coord::new(corner.row + 1, corner.col + 1);
        let d = Coord::new(corner.row + 1, corner.col);
        let inner = [
            grid.edge_index(a, b)?,
            grid.edge_index(b, c)?,
            grid.edge_index(c, d)?,
            grid.edge_index(d, a)?,
        ];

        let edge_opt = |from: Coord, dr: isize, dc: isize| -> Option<EdgeIndex> {
            let row = from.row.checked_add_signed(dr)?;
            let col = from.col.checked_add_signed(dc)?;
            let to = Coord::new(row, col);
            grid.contains(to)
                .then(|| grid.edge_index(from, to).expect("adjacent"))
        };
        let outside = [
            [edge_opt(a, -1, 0), edge_opt(a, 0, -1)], // a: up, left
            [edge_opt(b, -1, 0), edge_opt(b, 0, 1)],  // b: up, right
            [edge_opt(c, 0, 1), edge_opt(c, 1, 0)],   // c: right, down
            [edge_opt(d, 1, 0), edge_opt(d, 0, -1)],  // d: down, left
        ];
        Ok(Self {
            corner,
            nodes: [a, b, c, d],
            inner,
            outside,
        })
    }

    pub fn corner(&self) -> Coord {
        self.corner
    }

    /// Cell nodes in `a, b, c, d` order (top-left, clockwise).
    pub fn nodes(&self) -> [Coord; 4] {
        self.nodes
    }

    /// Inner edges in `ab, bc, cd, da` order.
    pub fn inner_edges(&self) -> [EdgeIndex; 4] {
        self.inner
    }

    /// Outside edges per node; absent slots are grid-boundary positions.
    pub fn outside_edges(&self) -> &[[Option<EdgeIndex>; 2]; 4] {
        &self.outside
    }

    /// The four inner bits of a robot's bit-vector, `ab, bc, cd, da`.
    pub fn inner_bits(&self, bits: &[bool]) -> [bool; 4] {
        self.inner.map(|e| bits[e.index()])
    }

    /// Outside bits per node; absent edges read as inactive.
    pub fn outside_bits(&self, bits: &[bool]) -> [[bool; 2]; 4] {
        self.outside
            .map(|pair| pair.map(|e| e.map_or(false, |e| bits[e.index()])))
    }

    /// Indices into the inner array of the two inner edges at node `i`.
    fn inner_at_node(i: usize) -> [usize; 2] {
        // a: ab, da; b: ab, bc; c: bc, cd; d: cd, da
        [[0, 3], [0, 1], [1, 2], [2, 3]][i]
    }
}

/// All `(rows-1)*(cols-1)` cells in row-major corner order.
pub fn enumerate_subgrids(grid: &Grid) -> Result<Vec<SubGrid>> {
    if grid.rows() < 2 || grid.cols() < 2 {
        return Err(Error::GridTooSmall {
            rows: grid.rows(),
            cols: grid.cols(),
        });
    }
    let mut cells = Vec::with_capacity((grid.rows() - 1) * (grid.cols() - 1));
    for row in 0..grid.rows() - 1 {
        for col in 0..grid.cols() - 1 {
            cells.push(SubGrid::new(grid, Coord::new(row, col))?);
        }
    }
    Ok(cells)
}

/// Rule 1: the cell carries at least one active inner edge. Flipping an
/// all-zero cell would create a free-standing loop.
pub fn inner_occupied(inner: [bool; 4]) -> bool {
    inner.iter().any(|&b| b)
}

/// Rule 2: the inner bits are not two parallel tracks (`0101` or `1010` in
/// `ab, bc, cd, da` order). Flipping parallel tracks swaps which outside
/// segments connect to which.
pub fn no_parallel_tracks(inner: [bool; 4]) -> bool {
    inner != [false, true, false, true] && inner != [true, false, true, false]
}

/// Rule 3: no cell node has both of its outside edges active. Such a node
/// is a pass-through: the path crosses the cell corner without entering
/// the cell, and flipping would crisscross it into a loop.
pub fn no_through_traffic(outside: [[bool; 2]; 4]) -> bool {
    !outside.iter().any(|pair| pair[0] && pair[1])
}

/// Whether the flip may be applied to this cell of one robot's bit-vector.
///
/// Combines the three local rules with the endpoint guard: a node of the
/// cell that is the robot's source or destination and whose only active
/// incident edges leave the cell must not gain inner edges, so the flip is
/// blocked. On valid paths this blocks exactly the flips whose result
/// would not be a valid path; everything else maps valid paths to valid
/// paths with the same endpoints.
pub fn flip_allowed(bits: &[bool], cell: &SubGrid, endpoints: RobotEndpoints) -> bool {
    let inner = cell.inner_bits(bits);
    if !inner_occupied(inner) || !no_parallel_tracks(inner) {
        return false;
    }
    let outside = cell.outside_bits(bits);
    if !no_through_traffic(outside) {
        return false;
    }
    for (i, node) in cell.nodes.iter().enumerate() {
        if *node != endpoints.source && *node != endpoints.dest {
            continue;
        }
        let has_outside = outside[i][0] || outside[i][1];
        let has_inner = SubGrid::inner_at_node(i).iter().any(|&k| inner[k]);
        if has_outside && !has_inner {
            return false;
        }
    }
    true
}

/// Complements the four inner bits in place. Involutive.
pub fn toggle_flip(bits: &mut [bool], cell: &SubGrid) {
    for e in cell.inner_edges() {
        bits[e.index()] ^= true;
    }
}

/// Returns a copy of `bits` with the cell's four inner bits complemented.
///
/// Callers are expected to have checked [`flip_allowed`]; applying a
/// disallowed flip to a valid path can produce an invalid state.
pub fn apply_flip(bits: &[bool], cell: &SubGrid) -> Vec<bool> {
    let mut out = bits.to_vec();
    toggle_flip(&mut out, cell);
    out
}

/// The heuristic starting path for one robot: move horizontally to the
/// destination column, then vertically to the destination row. Empty when
/// source equals destination.
pub fn initial_path(scenario: &GridScenario, robot: usize) -> Vec<bool> {
    let ep = scenario.endpoint(robot);
    initial_path_for(scenario.grid(), ep)
}

/// As [`initial_path`] but for explicit endpoints.
pub fn initial_path_for(grid: &Grid, ep: RobotEndpoints) -> Vec<bool> {
    let mut bits = vec![false; grid.edge_count()];
    let mut current = ep.source;
    while current.col != ep.dest.col {
        let next_col = if current.col < ep.dest.col {
            current.col + 1
        } else {
            current.col - 1
        };
        let next = Coord::new(current.row, next_col);
        bits[grid.edge_index(current, next).expect("adjacent").index()] = true;
        current = next;
    }
    while current.row != ep.dest.row {
        let next_row = if current.row < ep.dest.row {
            current.row + 1
        } else {
            current.row - 1
        };
        let next = Coord::new(next_row, current.col);
        bits[grid.edge_index(current, next).expect("adjacent").index()] = true;
        current = next;
    }
    bits
}

fn manhattan(a: Coord, b: Coord) -> usize {
    a.row.abs_diff(b.row) + a.col.abs_diff(b.col)
}

/// A valid path is monotone (never reverses direction toward/away from the
/// destination) exactly when its length equals the Manhattan distance.
pub fn is_monotone(grid: &Grid, bits: &[bool], ep: RobotEndpoints) -> bool {
    is_valid_path(grid, bits, ep.source, ep.dest)
        && bits.iter().filter(|&&b| b).count() == manhattan(ep.source, ep.dest)
}

/// How a reduction move relates to the path it rewrites, classified by how
/// many inner edges the path covers in the flipped cell.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MoveTag {
    /// One covered inner edge: the path bulges into the cell (length +2).
    Expand,
    /// Two covered inner edges: a corner of the path slides across the
    /// cell's diagonal (length unchanged).
    Corner,
    /// Three covered inner edges: a detour around the cell is cut short
    /// (length -2).
    Cut,
}

/// One step of a reduction sequence.
#[derive(Clone, Debug)]
pub struct ReduceMove {
    pub cell: SubGrid,
    pub tag: MoveTag,
}

fn tag_for(inner: [bool; 4]) -> MoveTag {
    match inner.iter().filter(|&&b| b).count() {
        1 => MoveTag::Expand,
        2 => MoveTag::Corner,
        3 => MoveTag::Cut,
        n => unreachable!("allowed flips cover 1..=3 inner edges, got {n}"),
    }
}

// Visited-state guard for the reduction search.
const REDUCE_SEARCH_CAP: usize = 500_000;

/// Transforms a valid path into a monotone shortest path by a sequence of
/// allowed flips, every prefix of which is again a valid path. Returns the
/// moves; a path that is already monotone yields an empty list.
///
/// The shortest such sequence is found by breadth-first search over the
/// flip move graph (explorability guarantees a monotone path is always
/// reachable). Cell order is row-major, so the result is deterministic. A
/// safety budget of `4 * edge_count^2` moves bounds the output and a
/// visited-state cap bounds the search on large grids.
pub fn reduce_to_monotone(
    grid: &Grid,
    bits: &[bool],
    ep: RobotEndpoints,
) -> Result<Vec<ReduceMove>> {
    if !is_valid_path(grid, bits, ep.source, ep.dest) {
        return Err(Error::InvalidScenario(
            "reduction requires a valid path".into(),
        ));
    }
    if is_monotone(grid, bits, ep) {
        return Ok(Vec::new());
    }
    let cells = enumerate_subgrids(grid)?;
    let budget = 4 * grid.edge_count() * grid.edge_count();

    // Parent links: state -> (previous state, index of the flipped cell).
    let mut visited: HashMap<Vec<bool>, (Vec<bool>, usize)> = HashMap::new();
    let mut queue: VecDeque<Vec<bool>> = VecDeque::new();
    visited.insert(bits.to_vec(), (Vec::new(), usize::MAX));
    queue.push_back(bits.to_vec());

    while let Some(state) = queue.pop_front() {
        for (ci, cell) in cells.iter().enumerate() {
            if !flip_allowed(&state, cell, ep) {
                continue;
            }
            let next = apply_flip(&state, cell);
            if visited.contains_key(&next) {
                continue;
            }
            visited.insert(next.clone(), (state.clone(), ci));
            if is_monotone(grid, &next, ep) {
                let mut chain: Vec<usize> = vec![ci];
                let mut cursor = state.clone();
                while let Some((parent, idx)) = visited.get(&cursor) {
                    if *idx == usize::MAX {
                        break;
                    }
                    chain.push(*idx);
                    cursor = parent.clone();
                }
                chain.reverse();
                if chain.len() > budget {
                    return Err(Error::BudgetExceeded(format!(
                        "path reduction needs more than {budget} moves"
                    )));
                }
                // Replay the chain to tag each move by the covered arc.
                let mut moves = Vec::with_capacity(chain.len());
                let mut replay = bits.to_vec();
                for i in chain {
                    moves.push(ReduceMove {
                        tag: tag_for(cells[i].inner_bits(&replay)),
                        cell: cells[i].clone(),
                    });
                    toggle_flip(&mut replay, &cells[i]);
                }
                return Ok(moves);
            }
            if visited.len() > REDUCE_SEARCH_CAP {
                return Err(Error::BudgetExceeded(format!(
                    "reduction search visited more than {REDUCE_SEARCH_CAP} states"
                )));
            }
            queue.push_back(next);
        }
    }
    Err(Error::BudgetExceeded(
        "no monotone path reachable from the given state".into(),
    ))
}

/// Default cap on the closure size explored by [`reachable_states`].
pub const DEFAULT_REACHABLE_CAP: usize = 1 << 20;

/// Breadth-first closure of the robot's heuristic path under allowed
/// flips. Errors when the closure exceeds `cap` states.
pub fn reachable_states(
    scenario: &GridScenario,
    robot: usize,
    cap: usize,
) -> Result<std::collections::BTreeSet<Vec<bool>>> {
    let grid = scenario.grid();
    let ep = scenario.endpoint(robot);
    let cells = enumerate_subgrids(grid)?;
    let start = initial_path(scenario, robot);

    let mut seen: HashSet<Vec<bool>> = HashSet::new();
    let mut queue: VecDeque<Vec<bool>> = VecDeque::new();
    seen.insert(start.clone());
    queue.push_back(start);
    while let Some(state) = queue.pop_front() {
        for cell in &cells {
            if !flip_allowed(&state, cell, ep) {
                continue;
            }
            let next = apply_flip(&state, cell);
            if seen.insert(next.clone()) {
                if seen.len() > cap {
                    return Err(Error::BudgetExceeded(format!(
                        "reachable-state closure exceeded cap {cap}"
                    )));
                }
                queue.push_back(next);
            }
        }
    }
    Ok(seen.into_iter().collect())
}
