//! Mutation-only genetic algorithm: every individual spawns one offspring
//! per allowed cell flip, and truncation selection keeps the best.

use crate::cost::cost_total;
use crate::error::Result;
use crate::grid::{GridScenario, PathState};
use crate::moves::{enumerate_subgrids, flip_allowed, initial_path, toggle_flip};

#[derive(Clone, Copy, Debug)]
pub struct GaConfig {
    pub population_size: usize,
    pub generations: usize,
}

impl Default for GaConfig {
    fn default() -> Self {
        Self {
            population_size: 32,
            generations: 60,
        }
    }
}

/// Runs the mutation-only GA from the heuristic starting population.
///
/// Each generation applies every allowed flip (one per robot per cell) to
/// every individual, adds the offspring to the pool, deduplicates, and
/// truncates to `population_size` by ascending total cost with
/// lexicographic tie-breaking. Since parents survive truncation, the best
/// cost never increases. The whole process is deterministic; `seed` is
/// recorded for interface symmetry with the stochastic solvers.
pub fn ga_solve(
    scenario: &GridScenario,
    config: &GaConfig,
    seed: u64,
) -> Result<super::SolverResult> {
    let grid = scenario.grid();
    let robots = scenario.robots();
    let cells = enumerate_subgrids(grid)?;
    let pop_cap = config.population_size.max(1);

    let start = PathState::from_bits((0..robots).map(|r| initial_path(scenario, r)).collect());
    let start_cost = cost_total(&start, scenario)?;
    let mut evaluations = 1u64;

    let mut population: Vec<(PathState, f64)> = vec![(start, start_cost.total)];
    let mut history: Vec<(u64, f64)> = vec![(0, start_cost.total)];

    for generation in 1..=config.generations {
        let mut pool = population.clone();
        for (individual, _) in &population {
            for robot in 0..robots {
                let ep = scenario.endpoint(robot);
                for cell in &cells {
                    if !flip_allowed(individual.robot_bits(robot), cell, ep) {
                        continue;
                    }
                    let mut child = individual.clone();
                    toggle_flip(child.robot_bits_mut(robot), cell);
                    let cost = cost_total(&child, scenario)?;
                    evaluations += 1;
                    pool.push((child, cost.total));
                }
            }
        }
        pool.sort_by(|a, b| {
            a.1.partial_cmp(&b.1)
                .expect("costs are finite")
                .then_with(|| a.0.lex_cmp(&b.0))
        });
        pool.dedup_by(|a, b| a.0 == b.0);
        pool.truncate(pop_cap);
        population = pool;
        history.push((generation as u64, population[0].1));
    }

    let (best_state, _) = population.into_iter().next().expect("population non-empty");
    let best_cost = cost_total(&best_state, scenario)?;
    Ok(super::SolverResult {
        best_state,
        best_cost,
        history,
        raw_history: Vec::new(),
        evaluations,
        seed,
    })
}
