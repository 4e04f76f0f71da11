//! Acceptance suite: one test per release criterion, each printing a
//! PASS/FAIL line. Run with `cargo test --test acceptance -- --nocapture`
//! to see the lines; all tolerances are pinned in the assertions.

mod common;

use std::path::Path;
use std::process::Command;

use covpath::grid::{is_valid_path, Coord, GridScenario};
use covpath::moves::{
    apply_flip, enumerate_subgrids, flip_allowed, initial_path, reachable_states,
    DEFAULT_REACHABLE_CAP,
};
use covpath::qaoa::{finite_difference_gradient, optimize, OptimizeConfig, Simulator};
use covpath::resources::{phase_separator_counts, qubit_count, toffoli_decomposition};
use covpath::scenario::load_scenario;
use covpath::solvers::{dfs_solve, sa_solve, AnnealSchedule, DfsConfig};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn scenario_file(name: &str) -> std::path::PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../../scenarios")
        .join(name)
}

fn report(number: u8, name: &str, pass: bool, detail: &str) {
    println!(
        "acceptance {number} ({name}): {} — {detail}",
        if pass { "PASS" } else { "FAIL" }
    );
    assert!(pass, "acceptance {number} ({name}) failed: {detail}");
}

/// Criterion 1: the flip-move closure equals brute-force path enumeration,
/// as exact set equality, on 2x2 and 3x3 grids for corner-to-corner and
/// off-corner endpoint pairs.
#[test]
fn acceptance_1_explorability() {
    let cases: [(usize, usize, (usize, usize), (usize, usize)); 6] = [
        (2, 2, (0, 0), (1, 1)),
        (2, 2, (0, 0), (0, 1)),
        (3, 3, (0, 0), (2, 2)),
        (3, 3, (0, 1), (2, 1)),
        (3, 3, (1, 1), (2, 2)),
        (3, 3, (0, 2), (1, 0)),
    ];
    let started = std::time::Instant::now();
    let mut sizes = Vec::new();
    for (rows, cols, s, d) in cases {
        let scenario = GridScenario::builder(rows, cols)
            .robot(Coord::new(s.0, s.1), Coord::new(d.0, d.1))
            .build()
            .unwrap();
        let reached = reachable_states(&scenario, 0, DEFAULT_REACHABLE_CAP).unwrap();
        let oracle = common::oracle_enumerate_paths(rows, cols, s, d);
        assert_eq!(
            reached, oracle,
            "{rows}x{cols} {s:?}->{d:?}: reachable set differs from enumeration"
        );
        sizes.push(reached.len());
    }
    report(
        1,
        "explorability",
        true,
        &format!(
            "6 endpoint pairs, state counts {sizes:?}, {:.2?} elapsed",
            started.elapsed()
        ),
    );
}

/// Criterion 2: feasibility closure. 1000 random allowed-flip sequences
/// never leave the valid-path space, and the mixer keeps probability mass
/// on the feasible subspace within 1e-9.
#[test]
fn acceptance_2_feasibility_closure() {
    // Classical half: random walks over allowed flips.
    let pairs: [(usize, usize, (usize, usize), (usize, usize)); 2] = [
        (3, 3, (0, 0), (2, 2)),
        (3, 3, (0, 1), (2, 1)),
    ];
    let mut walks = 0u32;
    for (rows, cols, s, d) in pairs {
        let scenario = GridScenario::builder(rows, cols)
            .robot(Coord::new(s.0, s.1), Coord::new(d.0, d.1))
            .build()
            .unwrap();
        let grid = scenario.grid();
        let ep = scenario.endpoint(0);
        let cells = enumerate_subgrids(grid).unwrap();
        for seed in 0..500u64 {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut bits = initial_path(&scenario, 0);
            for _ in 0..50 {
                let allowed: Vec<_> = cells
                    .iter()
                    .filter(|cell| flip_allowed(&bits, cell, ep))
                    .collect();
                assert!(!allowed.is_empty(), "no allowed move from a valid path");
                let cell = allowed[rng.gen_range(0..allowed.len())];
                bits = apply_flip(&bits, cell);
                assert!(
                    is_valid_path(grid, &bits, ep.source, ep.dest),
                    "allowed flip produced an invalid path"
                );
            }
            walks += 1;
        }
    }

    // Quantum half: mixer leakage out of the feasible subspace.
    let mut worst_leak: f64 = 0.0;
    for (rows, cols) in [(2usize, 2usize), (3, 3)] {
        let scenario = GridScenario::builder(rows, cols)
            .robot(Coord::new(0, 0), Coord::new(rows - 1, cols - 1))
            .build()
            .unwrap();
        let sim = Simulator::new(&scenario).unwrap();
        let feasible: Vec<bool> = (0..sim.dim() as u64)
            .map(|x| sim.is_feasible_basis(x))
            .collect();
        let mut state = sim.initial_state(&sim.heuristic_population()).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..6 {
            let beta = rng.gen_range(-3.0..3.0);
            sim.apply_full_mixer(&mut state, beta);
            let leak: f64 = state
                .amplitudes()
                .iter()
                .enumerate()
                .filter(|(x, _)| !feasible[*x])
                .map(|(_, a)| a.norm_sqr())
                .sum();
            worst_leak = worst_leak.max(leak);
        }
    }
    let pass = worst_leak <= 1e-9;
    report(
        2,
        "feasibility closure",
        pass,
        &format!("{walks} random walks stayed valid; worst mixer leakage {worst_leak:.2e}"),
    );
}

/// Criterion 3: the full mixer is unitary on the 2x2 single-robot system:
/// the materialized 16x16 operator satisfies U†U = I entrywise within 1e-9
/// at 20 random angles.
#[test]
fn acceptance_3_mixer_unitarity() {
    let scenario = GridScenario::builder(2, 2)
        .robot(Coord::new(0, 0), Coord::new(1, 1))
        .build()
        .unwrap();
    let sim = Simulator::new(&scenario).unwrap();
    let dim = sim.dim();
    assert_eq!(dim, 16);
    let mut rng = ChaCha8Rng::seed_from_u64(33);
    let mut worst: f64 = 0.0;
    for _ in 0..20 {
        let beta = rng.gen_range(-std::f64::consts::PI..std::f64::consts::PI);
        // Materialize U column by column.
        let mut columns = Vec::with_capacity(dim);
        for basis in 0..dim {
            let mut state = covpath::qaoa::QuantumState::basis(sim.qubits(), basis as u64);
            sim.apply_full_mixer(&mut state, beta);
            columns.push(state.amplitudes().to_vec());
        }
        // U†U entrywise: (i, j) = <col_i, col_j>.
        for i in 0..dim {
            for j in 0..dim {
                let dot: Complex64 = (0..dim)
                    .map(|k| columns[i][k].conj() * columns[j][k])
                    .sum();
                let expected = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((dot - expected).norm());
            }
        }
    }
    let pass = worst <= 1e-9;
    report(
        3,
        "mixer unitarity",
        pass,
        &format!("20 angles, max |U†U - I| entry = {worst:.2e}"),
    );
}

/// Criterion 4: on the reconstructed 3x3 single-robot scenario, one
/// optimized ansatz layer concentrates the distribution on a state whose
/// cost equals the exhaustive optimum exactly.
#[test]
fn acceptance_4_qaoa_optimality_single_layer() {
    let started = std::time::Instant::now();
    let (scenario, file) = load_scenario(&scenario_file("single_robot_3x3.json")).unwrap();
    let dfs = dfs_solve(&scenario, &DfsConfig::default()).unwrap();

    let sim = Simulator::new(&scenario).unwrap();
    assert_eq!(sim.qubits(), 12);
    let population = sim.heuristic_population();
    let (params, history) =
        optimize(&sim, 1, &population, &OptimizeConfig::default(), file.seed).unwrap();
    let (state, expectation) = sim.run(&params, &population).unwrap();
    let argmax = state.argmax();
    let argmax_cost = covpath::cost::cost_total(&sim.decode(argmax), &scenario)
        .unwrap()
        .total;

    let pass = argmax_cost == dfs.best_cost.total;
    report(
        4,
        "single-layer optimality",
        pass,
        &format!(
            "argmax cost {argmax_cost} vs exhaustive {} (expectation {expectation:.3}, \
             {} iterations, {:.2?} elapsed)",
            dfs.best_cost.total,
            history.len(),
            started.elapsed()
        ),
    );
}

/// Criterion 5: annealing (best of 5 seeds, default schedule) reproduces
/// the exhaustive optimum exactly on the reconstructed two-robot 4x4 and
/// 5x5 scenarios.
#[test]
fn acceptance_5_solver_agreement() {
    let mut details = Vec::new();
    for name in ["two_robot_4x4.json", "two_robot_5x5.json"] {
        let started = std::time::Instant::now();
        let (scenario, file) = load_scenario(&scenario_file(name)).unwrap();
        let dfs = dfs_solve(&scenario, &DfsConfig::default()).unwrap();
        let schedule = AnnealSchedule::for_scenario(&scenario);
        let best_sa = (0..5)
            .map(|i| {
                sa_solve(&scenario, &schedule, file.seed + i)
                    .unwrap()
                    .best_cost
                    .total
            })
            .fold(f64::INFINITY, f64::min);
        assert_eq!(
            best_sa, dfs.best_cost.total,
            "{name}: annealing best {best_sa} differs from exhaustive {}",
            dfs.best_cost.total
        );
        details.push(format!(
            "{name}: both reach {} ({} combos, {:.2?})",
            dfs.best_cost.total,
            dfs.evaluations,
            started.elapsed()
        ));
    }
    report(5, "solver agreement", true, &details.join("; "));
}

/// Criterion 6: resource formulas at exact integer equality.
#[test]
fn acceptance_6_resource_formulas() {
    let s331 = GridScenario::builder(3, 3)
        .robot(Coord::new(0, 0), Coord::new(2, 2))
        .build()
        .unwrap();
    let (decision, ancilla) = qubit_count(&s331);
    let qubits_ok = decision == 12 && ancilla == 8 && decision + ancilla == 20;
    let toffoli_ok =
        toffoli_decomposition(4) == (8, 2) && toffoli_decomposition(6) == (16, 4);
    let phase_ok = phase_separator_counts(&s331) == (12, 156, 78);
    let pass = qubits_ok && toffoli_ok && phase_ok;
    report(
        6,
        "resource formulas",
        pass,
        &format!(
            "qubits ({decision}, {ancilla}); toffoli {:?}/{:?}; phase {:?}",
            toffoli_decomposition(4),
            toffoli_decomposition(6),
            phase_separator_counts(&s331)
        ),
    );
}

/// Criterion 7: central finite-difference gradients are self-consistent
/// across shift sizes 1e-4 and 1e-5 within 1e-4 relative error at 10
/// random parameter points.
#[test]
fn acceptance_7_gradient_sanity() {
    // The 3x3 scenario has feasible states of distinct costs, so the
    // expectation genuinely varies with the angles. (On 2x2 both feasible
    // paths cost the same and every gradient is identically zero.)
    let (scenario, _) = load_scenario(&scenario_file("single_robot_3x3.json")).unwrap();
    let sim = Simulator::new(&scenario).unwrap();
    let population = sim.heuristic_population();
    let layers = 2;
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    let mut worst_rel: f64 = 0.0;
    for _ in 0..10 {
        let point: Vec<f64> = (0..2 * layers)
            .map(|_| rng.gen_range(-std::f64::consts::PI..std::f64::consts::PI))
            .collect();
        let coarse =
            finite_difference_gradient(&sim, layers, &population, &point, 1e-4).unwrap();
        let fine =
            finite_difference_gradient(&sim, layers, &population, &point, 1e-5).unwrap();
        let diff: f64 = coarse
            .iter()
            .zip(&fine)
            .map(|(a, b)| (a - b) * (a - b))
            .sum::<f64>()
            .sqrt();
        let scale = fine
            .iter()
            .map(|g| g * g)
            .sum::<f64>()
            .sqrt()
            .max(1e-8);
        worst_rel = worst_rel.max(diff / scale);
    }
    let pass = worst_rel <= 1e-4;
    report(
        7,
        "gradient sanity",
        pass,
        &format!("10 points, worst relative deviation {worst_rel:.2e}"),
    );
}

/// Criterion 8: identical (scenario, solver, seed) produce byte-identical
/// convergence CSVs across two consecutive runs of the binary.
#[test]
fn acceptance_8_determinism() {
    let binary = env!("CARGO_BIN_EXE_covpath");
    let tmp = tempfile::tempdir().unwrap();
    let mut checked = Vec::new();
    for (solver, scenario, extra) in [
        ("sa", "two_robot_4x4.json", &[][..]),
        ("qaoa", "tiny_2x2.json", &["--iterations", "40"][..]),
    ] {
        let mut csvs = Vec::new();
        for run in 0..2 {
            let out = tmp.path().join(format!("{solver}-{run}"));
            let status = Command::new(binary)
                .arg("solve")
                .arg("--scenario")
                .arg(scenario_file(scenario))
                .arg("--solver")
                .arg(solver)
                .arg("--seed")
                .arg("21")
                .arg("--out")
                .arg(&out)
                .args(extra)
                .output()
                .unwrap();
            assert!(
                status.status.success(),
                "solve failed: {}",
                String::from_utf8_lossy(&status.stderr)
            );
            csvs.push(std::fs::read(out.join("convergence.csv")).unwrap());
        }
        assert_eq!(
            csvs[0], csvs[1],
            "{solver} convergence CSVs differ between identical runs"
        );
        checked.push(format!("{solver} ({} bytes)", csvs[0].len()));
    }
    report(
        8,
        "determinism",
        true,
        &format!("byte-identical CSVs: {}", checked.join(", ")),
    );
}
