//! Closed-form hardware resource estimates for the ansatz circuits.
//!
//! The estimator evaluates formulas, it does not compile circuits: counts
//! are expressed in CNOT and single-qubit gates after decomposing every
//! multi-controlled NOT down to 3-qubit Toffolis. Per partial mixer, the
//! control logic costs 44 such Toffolis (one 5-input gate for the
//! occupancy rule, two for the parallel-track rule, four plain Toffolis
//! for the pass-through rule, and one 7-input gate combining them),
//! computed once and uncomputed once because the ancilla register is
//! reused across all partial mixers.

use serde::Serialize;

use crate::grid::GridScenario;

/// Gate and qubit counts for the full circuit, broken down by component.
/// Single-qubit counts include Hadamards and Z rotations.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ResourceReport {
    pub rows: usize,
    pub cols: usize,
    pub robots: usize,
    pub layers: usize,
    /// One qubit per (robot, edge) decision variable.
    pub qubits_decision: u64,
    /// Eight reusable logic ancillas per robot.
    pub qubits_ancilla: u64,
    pub qubits_total: u64,
    /// Peak extra work qubits needed by the widest Toffoli decomposition,
    /// listed separately from the ancilla register.
    pub toffoli_work_qubits_peak: u64,
    /// Partial mixers per full mixer: robots x cells.
    pub partial_mixer_count: u64,
    /// Phase separator, per layer: Z rotations from linear terms.
    pub phase_rz: u64,
    /// Phase separator, per layer: CNOTs from quadratic terms.
    pub phase_cnot: u64,
    /// Phase separator, per layer: Z rotations from quadratic terms.
    pub phase_single: u64,
    /// Full mixer, per layer.
    pub mixer_cnot: u64,
    pub mixer_single: u64,
    /// Per-layer totals.
    pub layer_cnot: u64,
    pub layer_single: u64,
    /// Totals over all layers.
    pub total_cnot: u64,
    pub total_single: u64,
    /// Counting assumptions baked into the numbers.
    pub methodology: String,
}

const METHODOLOGY: &str = "Flip-mixer body tallied as 8 Hadamards, 6 CNOTs and one Z rotation; \
the rotation is promoted to a controlled one costing 2 CNOTs and 2 Z rotations. Control logic \
per partial mixer: one 5-input, two 5-input-equivalent and one 7-input multi-controlled NOT \
plus four plain Toffolis, decomposed to 44 3-qubit Toffolis (6 CNOTs, 9 single-qubit gates \
each), doubled for compute/uncompute since the ancilla register is reused. Hadamards count as \
single-qubit gates. Routing and hardware-specific optimization are out of scope.";

/// Qubit requirements: `(decision, ancilla)` with `decision = robots *
/// edge_count` and eight logic ancillas per robot.
pub fn qubit_count(scenario: &GridScenario) -> (u64, u64) {
    let decision = (scenario.robots() * scenario.grid().edge_count()) as u64;
    let ancilla = 8 * scenario.robots() as u64;
    (decision, ancilla)
}

/// Phase separator gate counts per layer: `(linear_rz, quadratic_cnot,
/// quadratic_rz)` for `q = robots * edge_count` decision qubits. Each
/// linear term costs one Z rotation; each quadratic term two CNOTs and one
/// Z rotation, totalling `q(q+1)` CNOTs and `q(q+1)/2` rotations.
pub fn phase_separator_counts(scenario: &GridScenario) -> (u64, u64, u64) {
    let q = (scenario.robots() * scenario.grid().edge_count()) as u64;
    (q, q * (q + 1), q * (q + 1) / 2)
}

/// Decomposes an `(l+1)`-qubit Toffoli (`l` controls) into 3-qubit
/// Toffolis: `(4(l-2), l-2)` gates and work qubits for `l >= 3`; a plain
/// Toffoli passes through as `(1, 0)`, and gates with fewer than two
/// controls need no Toffolis at all.
pub fn toffoli_decomposition(controls: u64) -> (u64, u64) {
    match controls {
        0 | 1 => (0, 0),
        2 => (1, 0),
        l => (4 * (l - 2), l - 2),
    }
}

// CNOTs / single-qubit gates per 3-qubit Toffoli.
const TOFFOLI_CNOT: u64 = 6;
const TOFFOLI_SINGLE: u64 = 9;

/// Gate counts of one controlled partial mixer: `(cnot, single)`.
///
/// Composition: the three rule circuits plus their conjunction need
/// `1*8 + 2*8 + 4*1 + 1*16 = 44` plain Toffolis, executed twice (compute
/// and uncompute); the mixer body adds 6 CNOTs and 8 Hadamards, and the
/// controlled Z rotation at its center 2 CNOTs and 2 rotations.
pub fn partial_mixer_counts() -> (u64, u64) {
    let occupancy = toffoli_decomposition(4).0; // 5-qubit gate
    let parallel = 2 * toffoli_decomposition(4).0; // two 5-qubit gates
    let pass_through = 4 * toffoli_decomposition(2).0; // four plain Toffolis
    let conjunction = toffoli_decomposition(6).0; // 7-qubit gate
    let logic_toffolis = occupancy + parallel + pass_through + conjunction;
    debug_assert_eq!(logic_toffolis, 44);

    let logic_cnot = 2 * logic_toffolis * TOFFOLI_CNOT;
    let logic_single = 2 * logic_toffolis * TOFFOLI_SINGLE;
    let body_cnot = 6;
    let body_single = 8;
    let controlled_rz_cnot = 2;
    let controlled_rz_single = 2;
    (
        logic_cnot + body_cnot + controlled_rz_cnot,
        logic_single + body_single + controlled_rz_single,
    )
}

/// Assembles the full report for `layers` ansatz repetitions.
pub fn full_report(scenario: &GridScenario, layers: usize) -> ResourceReport {
    assert!(layers >= 1, "a circuit has at least one layer");
    let grid = scenario.grid();
    let robots = scenario.robots();
    let (qubits_decision, qubits_ancilla) = qubit_count(scenario);
    let (phase_rz, phase_cnot, phase_single) = phase_separator_counts(scenario);

    let partial_mixer_count = (robots * (grid.rows() - 1) * (grid.cols() - 1)) as u64;
    let (pm_cnot, pm_single) = partial_mixer_counts();
    let mixer_cnot = partial_mixer_count * pm_cnot;
    let mixer_single = partial_mixer_count * pm_single;

    let layer_cnot = phase_cnot + mixer_cnot;
    let layer_single = phase_rz + phase_single + mixer_single;
    let p = layers as u64;

    ResourceReport {
        rows: grid.rows(),
        cols: grid.cols(),
        robots,
        layers,
        qubits_decision,
        qubits_ancilla,
        qubits_total: qubits_decision + qubits_ancilla,
        toffoli_work_qubits_peak: toffoli_decomposition(6).1,
        partial_mixer_count,
        phase_rz,
        phase_cnot,
        phase_single,
        mixer_cnot,
        mixer_single,
        layer_cnot,
        layer_single,
        total_cnot: p * layer_cnot,
        total_single: p * layer_single,
        methodology: METHODOLOGY.to_string(),
    }
}

impl std::fmt::Display for ResourceReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(
            f,
            "Resource estimate for {} robot(s) on a {}x{} grid, {} layer(s)",
            self.robots, self.rows, self.cols, self.layers
        )?;
        writeln!(f, "{:-<64}", "")?;
        writeln!(
            f,
            "{:<40} {:>10}",
            "decision qubits", self.qubits_decision
        )?;
        writeln!(f, "{:<40} {:>10}", "ancilla qubits", self.qubits_ancilla)?;
        writeln!(f, "{:<40} {:>10}", "total qubits", self.qubits_total)?;
        writeln!(
            f,
            "{:<40} {:>10}",
            "peak Toffoli work qubits", self.toffoli_work_qubits_peak
        )?;
        writeln!(
            f,
            "{:<40} {:>10}",
            "partial mixers per layer", self.partial_mixer_count
        )?;
        writeln!(
            f,
            "{:<40} {:>10}",
            "phase separator RZ (linear)", self.phase_rz
        )?;
        writeln!(
            f,
            "{:<40} {:>10}",
            "phase separator CNOT (quadratic)", self.phase_cnot
        )?;
        writeln!(
            f,
            "{:<40} {:>10}",
            "phase separator RZ (quadratic)", self.phase_single
        )?;
        writeln!(f, "{:<40} {:>10}", "mixer CNOT per layer", self.mixer_cnot)?;
        writeln!(
            f,
            "{:<40} {:>10}",
            "mixer single-qubit per layer", self.mixer_single
        )?;
        writeln!(f, "{:<40} {:>10}", "CNOT per layer", self.layer_cnot)?;
        writeln!(
            f,
            "{:<40} {:>10}",
            "single-qubit per layer", self.layer_single
        )?;
        writeln!(
            f,
            "{:<40} {:>10}",
            format!("CNOT total ({} layers)", self.layers),
            self.total_cnot
        )?;
        write!(
            f,
            "{:<40} {:>10}",
            format!("single-qubit total ({} layers)", self.layers),
            self.total_single
        )
    }
}
