//! Exhaustive baseline: enumerate every valid path per robot, score every
//! joint combination, return the global minimum.

use std::cmp::Ordering;

use crate::cost::cost_total;
use crate::error::{Error, Result};
use crate::grid::{Coord, Grid, GridScenario, PathState};

/// Budget for the exhaustive scan.
#[derive(Clone, Copy, Debug)]
pub struct DfsConfig {
    /// Maximum number of joint combinations that will be scored.
    pub budget: u64,
}

impl Default for DfsConfig {
    fn default() -> Self {
        Self {
            budget: 200_000_000,
        }
    }
}

/// All valid simple paths between `source` and `dest`, as edge bit-vectors,
/// in deterministic backtracking order. `source == dest` yields exactly the
/// empty path.
pub fn enumerate_paths(grid: &Grid, source: Coord, dest: Coord) -> Vec<Vec<bool>> {
    if source == dest {
        return vec![vec![false; grid.edge_count()]];
    }
    let mut out = Vec::new();
    let mut bits = vec![false; grid.edge_count()];
    let mut visited = vec![false; grid.node_count()];
    visited[grid.node_id(source)] = true;
    walk(grid, source, dest, &mut bits, &mut visited, &mut out);
    out
}

fn walk(
    grid: &Grid,
    current: Coord,
    dest: Coord,
    bits: &mut Vec<bool>,
    visited: &mut Vec<bool>,
    out: &mut Vec<Vec<bool>>,
) {
    if current == dest {
        out.push(bits.clone());
        return;
    }
    for nb in grid.neighbors(current) {
        let id = grid.node_id(nb);
        if visited[id] {
            continue;
        }
        let e = grid.edge_index(current, nb).expect("adjacent").index();
        visited[id] = true;
        bits[e] = true;
        walk(grid, nb, dest, bits, visited, out);
        bits[e] = false;
        visited[id] = false;
    }
}

// Per-path summaries that make the joint scan cheap.
struct PathSummary {
    c1: f64,
    length: f64,
    degrees: Vec<u8>,
}

fn summarize(grid: &Grid, scenario: &GridScenario, bits: &[bool]) -> PathSummary {
    let mut c1 = 0.0;
    let mut length = 0.0;
    let mut degrees = vec![0u8; grid.node_count()];
    for (i, &b) in bits.iter().enumerate() {
        if !b {
            continue;
        }
        let e = crate::grid::EdgeIndex::new(i);
        c1 += scenario.weight(e);
        length += scenario.length(e);
        let (a, bnode) = grid.edge_endpoints(e);
        degrees[grid.node_id(a)] += 1;
        degrees[grid.node_id(bnode)] += 1;
    }
    PathSummary {
        c1,
        length,
        degrees,
    }
}

/// Scores every combination of per-robot valid paths and returns the joint
/// minimum. Ties are broken toward the lexicographically smallest joint bit
/// matrix, so the result is unique and reproducible.
pub fn dfs_solve(scenario: &GridScenario, config: &DfsConfig) -> Result<super::SolverResult> {
    let grid = scenario.grid();
    let robots = scenario.robots();

    let mut per_robot: Vec<Vec<Vec<bool>>> = Vec::with_capacity(robots);
    for r in 0..robots {
        let ep = scenario.endpoint(r);
        let paths = enumerate_paths(grid, ep.source, ep.dest);
        if paths.is_empty() {
            return Err(Error::Infeasible(r));
        }
        per_robot.push(paths);
    }

    let combos = per_robot
        .iter()
        .map(|p| p.len() as u64)
        .try_fold(1u64, |acc, n| acc.checked_mul(n))
        .unwrap_or(u64::MAX);
    if combos > config.budget {
        return Err(Error::BudgetExceeded(format!(
            "{combos} joint combinations exceed the budget of {}",
            config.budget
        )));
    }

    let summaries: Vec<Vec<PathSummary>> = per_robot
        .iter()
        .map(|paths| paths.iter().map(|b| summarize(grid, scenario, b)).collect())
        .collect();

    let targets: Vec<f64> = grid
        .nodes()
        .map(|n| scenario.degree_target(n) as f64)
        .collect();
    let [a0, a1, a2] = scenario.alphas();
    let nodes = grid.node_count();

    let mut best_total = f64::INFINITY;
    let mut best_combo: Vec<usize> = vec![0; robots];
    let mut history: Vec<(u64, f64)> = Vec::new();
    let mut evaluations = 0u64;

    // Odometer over the Cartesian product; the last robot varies fastest.
    let mut combo = vec![0usize; robots];
    let mut joint_deg = vec![0i32; nodes];
    'scan: loop {
        // Accumulate everything but the last robot once per outer setting.
        joint_deg.iter_mut().for_each(|d| *d = 0);
        let mut prefix_c1 = 0.0;
        for r in 0..robots.saturating_sub(1) {
            let s = &summaries[r][combo[r]];
            prefix_c1 += s.c1;
            for (d, &pd) in joint_deg.iter_mut().zip(&s.degrees) {
                *d += pd as i32;
            }
        }

        let last = robots - 1;
        for last_idx in 0..summaries[last].len() {
            combo[last] = last_idx;
            let s_last = &summaries[last][last_idx];
            evaluations += 1;

            let c1 = prefix_c1 + s_last.c1;
            let mut c2 = 0.0;
            for r in 0..robots - 1 {
                let l_a = summaries[r][combo[r]].length;
                let l_b = if r + 1 == last {
                    s_last.length
                } else {
                    summaries[r + 1][combo[r + 1]].length
                };
                let d = l_a - l_b;
                c2 += d * d;
            }
            let mut c3 = 0.0;
            for i in 0..nodes {
                let gap = (joint_deg[i] + s_last.degrees[i] as i32) as f64 - targets[i];
                c3 += gap * gap;
            }
            let total = a0 * c1 + a1 * c2 + a2 * c3;

            let better = match total.partial_cmp(&best_total) {
                Some(Ordering::Less) => true,
                Some(Ordering::Equal) => {
                    lex_less(&per_robot, &combo, &best_combo)
                }
                _ => false,
            };
            if better {
                if total < best_total {
                    history.push((evaluations, total));
                }
                best_total = total;
                best_combo.copy_from_slice(&combo);
            }
        }

        // Advance the odometer over robots 0..last.
        if robots == 1 {
            break 'scan;
        }
        let mut r = robots - 2;
        loop {
            combo[r] += 1;
            if combo[r] < summaries[r].len() {
                break;
            }
            combo[r] = 0;
            if r == 0 {
                break 'scan;
            }
            r -= 1;
        }
    }

    let best_state = PathState::from_bits(
        best_combo
            .iter()
            .enumerate()
            .map(|(r, &i)| per_robot[r][i].clone())
            .collect(),
    );
    let best_cost = cost_total(&best_state, scenario)?;
    Ok(super::SolverResult {
        best_state,
        best_cost,
        history,
        raw_history: Vec::new(),
        evaluations,
        seed: 0,
    })
}

fn lex_less(per_robot: &[Vec<Vec<bool>>], a: &[usize], b: &[usize]) -> bool {
    for r in 0..a.len() {
        match per_robot[r][a[r]].cmp(&per_robot[r][b[r]]) {
            Ordering::Less => return true,
            Ordering::Greater => return false,
            Ordering::Equal => {}
        }
    }
    false
}
