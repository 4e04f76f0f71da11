//! Simulated annealing over joint path states with cell-flip neighbors.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cost::{cost_total, JointCost};
use crate::error::{Error, Result};
use crate::grid::{GridScenario, PathState};
use crate::moves::{enumerate_subgrids, flip_allowed, initial_path};

/// Geometric cooling schedule.
#[derive(Clone, Copy, Debug)]
pub struct AnnealSchedule {
    pub t_initial: f64,
    pub t_final: f64,
    /// Multiplicative factor applied to the temperature per level, in (0, 1).
    pub decay: f64,
    /// Moves attempted at each temperature level.
    pub steps_per_temperature: usize,
}

impl AnnealSchedule {
    /// Default schedule sized to the scenario: 50 steps per cell per robot
    /// at each of the ~135 levels between 10 and 0.01 at decay 0.95.
    pub fn for_scenario(scenario: &GridScenario) -> Self {
        let cells = (scenario.grid().rows() - 1) * (scenario.grid().cols() - 1);
        Self {
            t_initial: 10.0,
            t_final: 0.01,
            decay: 0.95,
            steps_per_temperature: 50 * cells * scenario.robots(),
        }
    }

    fn validate(&self) -> Result<()> {
        if !(self.t_final > 0.0 && self.t_final < self.t_initial) {
            return Err(Error::InvalidScenario(format!(
                "annealing temperatures must satisfy 0 < t_final < t_initial, got {} .. {}",
                self.t_final, self.t_initial
            )));
        }
        if !(self.decay > 0.0 && self.decay < 1.0) {
            return Err(Error::InvalidScenario(format!(
                "annealing decay must lie in (0, 1), got {}",
                self.decay
            )));
        }
        if self.steps_per_temperature == 0 {
            return Err(Error::InvalidScenario(
                "steps_per_temperature must be positive".into(),
            ));
        }
        Ok(())
    }
}

/// Runs simulated annealing from the heuristic starting paths.
///
/// Each step draws a uniformly random (robot, cell) pair until it finds an
/// allowed flip, applies it, and accepts or rejects by the Metropolis rule
/// `exp(-delta/T)`. Identical seeds reproduce identical runs bit for bit.
pub fn sa_solve(
    scenario: &GridScenario,
    schedule: &AnnealSchedule,
    seed: u64,
) -> Result<super::SolverResult> {
    schedule.validate()?;
    let grid = scenario.grid();
    let robots = scenario.robots();
    let cells = enumerate_subgrids(grid)?;

    let start = PathState::from_bits((0..robots).map(|r| initial_path(scenario, r)).collect());
    let mut tracker = JointCost::new(scenario, start)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let mut best_state = tracker.state().clone();
    let mut best_total = tracker.total();
    let mut current_total = best_total;

    let mut history: Vec<(u64, f64)> = Vec::new();
    let mut raw_history: Vec<(u64, f64)> = Vec::new();
    let mut evaluations = 0u64;
    let mut step = 0u64;
    let retry_cap = 10 * robots * cells.len();

    let mut temperature = schedule.t_initial;
    'cooling: while temperature >= schedule.t_final {
        for _ in 0..schedule.steps_per_temperature {
            // Rejection-sample an allowed (robot, cell) move.
            let mut pick = None;
            for _ in 0..retry_cap {
                let robot = rng.gen_range(0..robots);
                let cell = rng.gen_range(0..cells.len());
                if flip_allowed(
                    tracker.state().robot_bits(robot),
                    &cells[cell],
                    scenario.endpoint(robot),
                ) {
                    pick = Some((robot, cell));
                    break;
                }
            }
            let Some((robot, cell)) = pick else {
                // Frozen: no allowed move was found; the state is its own
                // neighborhood. Nothing further can change.
                break 'cooling;
            };

            tracker.flip_cell(robot, &cells[cell]);
            evaluations += 1;
            let candidate_total = tracker.total();
            let delta = candidate_total - current_total;
            let accept = delta <= 0.0 || rng.gen::<f64>() < (-delta / temperature).exp();
            if accept {
                current_total = candidate_total;
                if current_total < best_total {
                    best_total = current_total;
                    best_state = tracker.state().clone();
                }
            } else {
                // The flip is involutive; applying it again restores the
                // cached terms exactly.
                tracker.flip_cell(robot, &cells[cell]);
            }
            step += 1;
            history.push((step, best_total));
            raw_history.push((step, current_total));
        }
        temperature *= schedule.decay;
    }

    let best_cost = cost_total(&best_state, scenario)?;
    Ok(super::SolverResult {
        best_state,
        best_cost,
        history,
        raw_history,
        evaluations,
        seed,
    })
}
