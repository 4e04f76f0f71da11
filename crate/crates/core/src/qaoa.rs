//! Dense statevector simulation of the alternating-operator ansatz with
//! constrained cell-flip mixers.
//!
//! One qubit encodes each (robot, edge) decision variable; basis index bit
//! `robot * edge_count + edge` holds `x_{robot,edge}`, least significant
//! bit first. The circuit alternates two operators per layer:
//!
//! * a diagonal phase separator that multiplies every basis amplitude by
//!   `exp(-i * gamma * cost(x))`, and
//! * the full mixer: the product over all (robot, cell) pairs of partial
//!   mixers, each rotating amplitude between a basis state and its
//!   four-bit cell flip, but only where the flip rules allow the move in
//!   both directions.
//!
//! The both-directions condition makes each partial mixer block-diagonal
//! with 2x2 rotation blocks and identity elsewhere, hence exactly unitary,
//! and it confines amplitude to the feasible subspace whenever the initial
//! support is feasible. No ancilla qubits are simulated; the control logic
//! is evaluated classically per basis pair, and the hardware cost of the
//! ancilla construction is accounted by the resource estimator instead.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::grid::{GridScenario, PathState};
use crate::moves::{enumerate_subgrids, SubGrid};

/// Default cap on simulated decision qubits (`2^24` amplitudes).
pub const DEFAULT_QUBIT_CAP: usize = 24;

/// Complex amplitude vector over the decision-qubit basis.
#[derive(Clone, Debug)]
pub struct QuantumState {
    amps: Vec<Complex64>,
    qubits: usize,
}

impl QuantumState {
    /// Computational basis state `|index>`.
    pub fn basis(qubits: usize, index: u64) -> Self {
        let mut amps = vec![Complex64::new(0.0, 0.0); 1usize << qubits];
        amps[index as usize] = Complex64::new(1.0, 0.0);
        Self { amps, qubits }
    }

    pub fn qubits(&self) -> usize {
        self.qubits
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn norm(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Probability of each basis state.
    pub fn probabilities(&self) -> Vec<f64> {
        self.amps.iter().map(|a| a.norm_sqr()).collect()
    }

    /// Basis index with the largest probability; ties resolve to the
    /// smallest index.
    pub fn argmax(&self) -> u64 {
        let mut best = 0usize;
        let mut best_p = -1.0;
        for (i, a) in self.amps.iter().enumerate() {
            let p = a.norm_sqr();
            if p > best_p {
                best_p = p;
                best = i;
            }
        }
        best as u64
    }
}

/// Trainable angles for `p` layers.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct QaoaParams {
    pub betas: Vec<f64>,
    pub gammas: Vec<f64>,
}

impl QaoaParams {
    pub fn new(betas: Vec<f64>, gammas: Vec<f64>) -> Self {
        assert_eq!(betas.len(), gammas.len(), "betas and gammas must pair up");
        Self { betas, gammas }
    }

    pub fn layers(&self) -> usize {
        self.betas.len()
    }

    /// Unpacks `[beta_1..beta_p, gamma_1..gamma_p]`.
    pub fn from_flat(layers: usize, flat: &[f64]) -> Self {
        assert_eq!(flat.len(), 2 * layers);
        Self {
            betas: flat[..layers].to_vec(),
            gammas: flat[layers..].to_vec(),
        }
    }

    pub fn to_flat(&self) -> Vec<f64> {
        let mut flat = self.betas.clone();
        flat.extend_from_slice(&self.gammas);
        flat
    }
}

// Precomputed bit positions for evaluating the flip rules of one
// (robot, cell) pair directly on a basis index.
struct PairLogic {
    mask: u64,
    pair_bit: u64,
    inner_pos: [u32; 4],
    outside_pos: [[Option<u32>; 2]; 4],
    is_endpoint: [bool; 4],
}

impl PairLogic {
    fn new(scenario: &GridScenario, cell: &SubGrid, robot: usize) -> Self {
        let edges = scenario.grid().edge_count();
        let offset = (robot * edges) as u32;
        let inner_pos = cell.inner_edges().map(|e| offset + e.index() as u32);
        let outside_pos = cell
            .outside_edges()
            .map(|pair| pair.map(|e| e.map(|e| offset + e.index() as u32)));
        let ep = scenario.endpoint(robot);
        let is_endpoint = cell.nodes().map(|n| n == ep.source || n == ep.dest);
        let mask = inner_pos.iter().fold(0u64, |m, &p| m | (1u64 << p));
        PairLogic {
            mask,
            pair_bit: 1u64 << inner_pos[0],
            inner_pos,
            outside_pos,
            is_endpoint,
        }
    }

    /// The flip rules of `moves::flip_allowed`, evaluated on a basis index.
    fn allowed(&self, x: u64) -> bool {
        let bit = |p: u32| (x >> p) & 1 == 1;
        let inner = self.inner_pos.map(bit);
        if !inner.iter().any(|&b| b) {
            return false;
        }
        if inner == [false, true, false, true] || inner == [true, false, true, false] {
            return false;
        }
        // Inner edges at node i of (a, b, c, d).
        const INNER_AT: [[usize; 2]; 4] = [[0, 3], [0, 1], [1, 2], [2, 3]];
        for i in 0..4 {
            let o0 = self.outside_pos[i][0].map_or(false, bit);
            let o1 = self.outside_pos[i][1].map_or(false, bit);
            if o0 && o1 {
                return false;
            }
            if self.is_endpoint[i] && (o0 || o1) && !INNER_AT[i].iter().any(|&k| inner[k]) {
                return false;
            }
        }
        true
    }
}

/// Statevector simulator bound to one scenario.
pub struct Simulator<'a> {
    scenario: &'a GridScenario,
    cells: Vec<SubGrid>,
    logic: Vec<Vec<PairLogic>>, // [robot][cell]
    costs: OnceLock<Vec<f64>>,
    qubits: usize,
}

impl<'a> Simulator<'a> {
    /// Builds a simulator with the default qubit cap.
    pub fn new(scenario: &'a GridScenario) -> Result<Self> {
        Self::with_qubit_cap(scenario, DEFAULT_QUBIT_CAP)
    }

    /// Builds a simulator refusing scenarios beyond `cap` decision qubits.
    pub fn with_qubit_cap(scenario: &'a GridScenario, cap: usize) -> Result<Self> {
        let qubits = scenario.robots() * scenario.grid().edge_count();
        if qubits > cap {
            return Err(Error::QubitCapExceeded {
                needed: qubits,
                cap,
            });
        }
        let cells = enumerate_subgrids(scenario.grid())?;
        let logic = (0..scenario.robots())
            .map(|r| cells.iter().map(|c| PairLogic::new(scenario, c, r)).collect())
            .collect();
        Ok(Self {
            scenario,
            cells,
            logic,
            costs: OnceLock::new(),
            qubits,
        })
    }

    pub fn qubits(&self) -> usize {
        self.qubits
    }

    pub fn dim(&self) -> usize {
        1usize << self.qubits
    }

    pub fn scenario(&self) -> &GridScenario {
        self.scenario
    }

    /// Cells in row-major corner order, matching the mixer application order.
    pub fn cells(&self) -> &[SubGrid] {
        &self.cells
    }

    /// Encodes a joint path state as a basis index.
    pub fn encode(&self, state: &PathState) -> u64 {
        let edges = self.scenario.grid().edge_count();
        let mut x = 0u64;
        for robot in 0..state.robots() {
            for (i, &b) in state.robot_bits(robot).iter().enumerate() {
                if b {
                    x |= 1u64 << (robot * edges + i);
                }
            }
        }
        x
    }

    /// Decodes a basis index into a joint path state.
    pub fn decode(&self, x: u64) -> PathState {
        let edges = self.scenario.grid().edge_count();
        let robots = self.scenario.robots();
        let mut bits = vec![vec![false; edges]; robots];
        for robot in 0..robots {
            for (i, bit) in bits[robot].iter_mut().enumerate() {
                *bit = (x >> (robot * edges + i)) & 1 == 1;
            }
        }
        PathState::from_bits(bits)
    }

    /// True when every robot's slice of the basis index is a valid path.
    pub fn is_feasible_basis(&self, x: u64) -> bool {
        self.scenario.is_feasible(&self.decode(x))
    }

    /// Classical cost of every basis state, computed once and cached.
    pub fn basis_costs(&self) -> &[f64] {
        self.costs.get_or_init(|| {
            let edges = self.scenario.grid().edge_count();
            let robots = self.scenario.robots();
            let grid = self.scenario.grid();
            let nodes = grid.node_count();
            let [a0, a1, a2] = self.scenario.alphas();
            let targets: Vec<f64> = grid
                .nodes()
                .map(|n| self.scenario.degree_target(n) as f64)
                .collect();
            // Endpoint node ids per edge, for the degree sweep.
            let ends: Vec<(usize, usize)> = grid
                .edges()
                .map(|e| {
                    let (a, b) = grid.edge_endpoints(e);
                    (grid.node_id(a), grid.node_id(b))
                })
                .collect();
            let weights = self.scenario.weights();
            let lengths = self.scenario.lengths();

            let mut costs = Vec::with_capacity(self.dim());
            let mut degree = vec![0i32; nodes];
            for x in 0..self.dim() as u64 {
                degree.iter_mut().for_each(|d| *d = 0);
                let mut c1 = 0.0;
                let mut c2 = 0.0;
                let mut prev_len = 0.0;
                for robot in 0..robots {
                    let mut len = 0.0;
                    for e in 0..edges {
                        if (x >> (robot * edges + e)) & 1 == 1 {
                            c1 += weights[e];
                            len += lengths[e];
                            degree[ends[e].0] += 1;
                            degree[ends[e].1] += 1;
                        }
                    }
                    if robot > 0 {
                        let d = prev_len - len;
                        c2 += d * d;
                    }
                    prev_len = len;
                }
                let mut c3 = 0.0;
                for i in 0..nodes {
                    let gap = degree[i] as f64 - targets[i];
                    c3 += gap * gap;
                }
                costs.push(a0 * c1 + a1 * c2 + a2 * c3);
            }
            costs
        })
    }

    /// Equal superposition over the distinct members of a feasible
    /// population of joint path states.
    pub fn initial_state(&self, population: &[PathState]) -> Result<QuantumState> {
        if population.is_empty() {
            return Err(Error::EmptyPopulation);
        }
        let mut indices = std::collections::BTreeSet::new();
        for (i, member) in population.iter().enumerate() {
            if !self.scenario.is_feasible(member) {
                return Err(Error::InfeasibleMember(i));
            }
            indices.insert(self.encode(member));
        }
        let amp = Complex64::new(1.0 / (indices.len() as f64).sqrt(), 0.0);
        let mut state = QuantumState {
            amps: vec![Complex64::new(0.0, 0.0); self.dim()],
            qubits: self.qubits,
        };
        for x in indices {
            state.amps[x as usize] = amp;
        }
        Ok(state)
    }

    /// The heuristic starting population: one joint state built from every
    /// robot's initial path.
    pub fn heuristic_population(&self) -> Vec<PathState> {
        let bits = (0..self.scenario.robots())
            .map(|r| crate::moves::initial_path(self.scenario, r))
            .collect();
        vec![PathState::from_bits(bits)]
    }

    /// Unconstrained cell-flip rotation `exp(-i*beta*XXXX/2)` on the four
    /// inner-edge qubits of one (robot, cell) pair.
    pub fn apply_flip_rotation(
        &self,
        state: &mut QuantumState,
        robot: usize,
        cell_index: usize,
        beta: f64,
    ) {
        self.rotate_pairs(state, robot, cell_index, beta, false);
    }

    /// Partial mixer: the same rotation, applied only to basis pairs where
    /// the flip rules allow the move for both pair members; every other
    /// basis state passes through unchanged.
    pub fn apply_partial_mixer(
        &self,
        state: &mut QuantumState,
        robot: usize,
        cell_index: usize,
        beta: f64,
    ) {
        self.rotate_pairs(state, robot, cell_index, beta, true);
    }

    fn rotate_pairs(
        &self,
        state: &mut QuantumState,
        robot: usize,
        cell_index: usize,
        beta: f64,
        constrained: bool,
    ) {
        let logic = &self.logic[robot][cell_index];
        let cos = Complex64::new((beta / 2.0).cos(), 0.0);
        let misin = Complex64::new(0.0, -(beta / 2.0).sin());
        let mask = logic.mask;
        let pair_bit = logic.pair_bit;
        for x in 0..state.amps.len() as u64 {
            if x & pair_bit != 0 {
                continue;
            }
            let y = x ^ mask;
            if constrained && !(logic.allowed(x) && logic.allowed(y)) {
                continue;
            }
            let ax = state.amps[x as usize];
            let ay = state.amps[y as usize];
            state.amps[x as usize] = cos * ax + misin * ay;
            state.amps[y as usize] = misin * ax + cos * ay;
        }
    }

    /// Full mixer: partial mixers over every (robot, cell) pair in a fixed
    /// order — robots outermost, cells row-major.
    pub fn apply_full_mixer(&self, state: &mut QuantumState, beta: f64) {
        for robot in 0..self.scenario.robots() {
            for cell_index in 0..self.cells.len() {
                self.apply_partial_mixer(state, robot, cell_index, beta);
            }
        }
    }

    /// Diagonal phase separator `|x> -> exp(-i*gamma*cost(x)) |x>`.
    pub fn apply_phase_separator(&self, state: &mut QuantumState, gamma: f64) {
        let costs = self.basis_costs();
        for (a, &c) in state.amps.iter_mut().zip(costs) {
            *a *= Complex64::new(0.0, -gamma * c).exp();
        }
    }

    /// Expectation of the classical cost under the state's distribution.
    /// Errors if the norm has drifted more than 1e-6 from unity.
    pub fn expectation(&self, state: &QuantumState) -> Result<f64> {
        let costs = self.basis_costs();
        let mut norm_sq = 0.0;
        let mut acc = 0.0;
        for (a, &c) in state.amps.iter().zip(costs) {
            let p = a.norm_sqr();
            norm_sq += p;
            acc += p * c;
        }
        let norm = norm_sq.sqrt();
        if (norm - 1.0).abs() > 1e-6 {
            return Err(Error::NormDeviation {
                norm,
                tolerance: 1e-6,
            });
        }
        Ok(acc)
    }

    /// Runs the full ansatz: phase separator then full mixer, once per
    /// layer. Returns the final state and its expectation.
    pub fn run(
        &self,
        params: &QaoaParams,
        population: &[PathState],
    ) -> Result<(QuantumState, f64)> {
        let mut state = self.initial_state(population)?;
        for layer in 0..params.layers() {
            self.apply_phase_separator(&mut state, params.gammas[layer]);
            self.apply_full_mixer(&mut state, params.betas[layer]);
        }
        let expectation = self.expectation(&state)?;
        Ok((state, expectation))
    }

    /// Multinomial measurement: `shots` draws from the exact distribution,
    /// deterministic per seed. Keys are basis indices.
    pub fn sample(&self, state: &QuantumState, shots: u64, seed: u64) -> BTreeMap<u64, u64> {
        let mut cumulative = Vec::with_capacity(state.dim());
        let mut acc = 0.0;
        for a in &state.amps {
            acc += a.norm_sqr();
            cumulative.push(acc);
        }
        let total = acc;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut histogram = BTreeMap::new();
        for _ in 0..shots {
            let u: f64 = rng.gen::<f64>() * total;
            let idx = cumulative.partition_point(|&c| c <= u).min(state.dim() - 1);
            *histogram.entry(idx as u64).or_insert(0) += 1;
        }
        histogram
    }
}

/// Settings for [`optimize`].
#[derive(Clone, Debug)]
pub struct OptimizeConfig {
    pub iterations: usize,
    /// Gradient step size.
    pub step_size: f64,
    /// Nesterov momentum coefficient.
    pub momentum: f64,
    /// Central finite-difference shift.
    pub fd_shift: f64,
    /// Starting parameters `[betas.., gammas..]`; random when absent.
    pub initial: Option<Vec<f64>>,
    /// Half-width of the uniform random initialization interval.
    pub init_range: f64,
}

impl Default for OptimizeConfig {
    fn default() -> Self {
        Self {
            iterations: 150,
            step_size: 0.1,
            momentum: 0.9,
            fd_shift: 1e-4,
            initial: None,
            init_range: 1.0,
        }
    }
}

/// Minimizes the ansatz expectation over `2p` angles with Nesterov
/// momentum gradient descent; gradients come from central finite
/// differences. Returns the best parameters seen and the expectation
/// history, one entry per iteration.
pub fn optimize(
    sim: &Simulator<'_>,
    layers: usize,
    population: &[PathState],
    config: &OptimizeConfig,
    seed: u64,
) -> Result<(QaoaParams, Vec<f64>)> {
    assert!(layers >= 1, "optimize needs at least one layer");
    let dim = 2 * layers;
    let mut theta: Vec<f64> = match &config.initial {
        Some(init) => {
            assert_eq!(init.len(), dim, "initial parameters must have length 2p");
            init.clone()
        }
        None => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (0..dim)
                .map(|_| rng.gen_range(-config.init_range..config.init_range))
                .collect()
        }
    };

    let eval = |flat: &[f64]| -> Result<f64> {
        let params = QaoaParams::from_flat(layers, flat);
        let (_, e) = sim.run(&params, population)?;
        if !e.is_finite() {
            return Err(Error::NonFiniteExpectation);
        }
        Ok(e)
    };

    let mut velocity = vec![0.0; dim];
    let mut history = Vec::with_capacity(config.iterations);
    let mut best = (theta.clone(), f64::INFINITY);

    for _ in 0..config.iterations {
        let value = eval(&theta)?;
        history.push(value);
        if value < best.1 {
            best = (theta.clone(), value);
        }

        // Gradient at the lookahead point.
        let lookahead: Vec<f64> = theta
            .iter()
            .zip(&velocity)
            .map(|(t, v)| t + config.momentum * v)
            .collect();
        let mut gradient = vec![0.0; dim];
        let mut probe = lookahead.clone();
        for i in 0..dim {
            probe[i] = lookahead[i] + config.fd_shift;
            let up = eval(&probe)?;
            probe[i] = lookahead[i] - config.fd_shift;
            let down = eval(&probe)?;
            probe[i] = lookahead[i];
            gradient[i] = (up - down) / (2.0 * config.fd_shift);
        }

        for i in 0..dim {
            velocity[i] = config.momentum * velocity[i] - config.step_size * gradient[i];
            theta[i] += velocity[i];
        }
    }

    Ok((QaoaParams::from_flat(layers, &best.0), history))
}

/// Central finite-difference gradient of the ansatz expectation at `flat`,
/// with the given shift. Exposed for gradient self-consistency checks.
pub fn finite_difference_gradient(
    sim: &Simulator<'_>,
    layers: usize,
    population: &[PathState],
    flat: &[f64],
    shift: f64,
) -> Result<Vec<f64>> {
    let eval = |flat: &[f64]| -> Result<f64> {
        let params = QaoaParams::from_flat(layers, flat);
        Ok(sim.run(&params, population)?.1)
    };
    let mut probe = flat.to_vec();
    let mut gradient = vec![0.0; flat.len()];
    for i in 0..flat.len() {
        probe[i] = flat[i] + shift;
        let up = eval(&probe)?;
        probe[i] = flat[i] - shift;
        let down = eval(&probe)?;
        probe[i] = flat[i];
        gradient[i] = (up - down) / (2.0 * shift);
    }
    Ok(gradient)
}
