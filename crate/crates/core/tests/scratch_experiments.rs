// Temporary scenario-selection experiments; removed before shipping.

use covpath::grid::{Coord, GridScenario};
use covpath::qaoa::{optimize, OptimizeConfig, Simulator};
use covpath::solvers::{dfs_solve, enumerate_paths, sa_solve, AnnealSchedule, DfsConfig};

fn coord(r: usize, c: usize) -> Coord {
    Coord::new(r, c)
}

#[test]
#[ignore]
fn qaoa_3x3_obstacle_sweep() {
    for obstacle in [(0usize, 1usize), (1, 2), (0, 2), (1, 1), (2, 1), (1, 0)] {
        let s = GridScenario::builder(3, 3)
            .robot(coord(0, 0), coord(2, 2))
            .obstacle(coord(obstacle.0, obstacle.1))
            .build()
            .unwrap();
        let dfs = dfs_solve(&s, &DfsConfig::default()).unwrap();
        let sim = Simulator::new(&s).unwrap();
        let pop = sim.heuristic_population();
        let init_cost = covpath::cost::cost_total(&pop[0], &s).unwrap().total;
        print!(
            "obstacle {obstacle:?}: dfs best {} init {} | ",
            dfs.best_cost.total, init_cost
        );
        for seed in 0..6u64 {
            let config = OptimizeConfig {
                iterations: 200,
                ..OptimizeConfig::default()
            };
            let (params, _hist) = optimize(&sim, 1, &pop, &config, seed).unwrap();
            let (state, expectation) = sim.run(&params, &pop).unwrap();
            let argmax = state.argmax();
            let cost = covpath::cost::cost_total(&sim.decode(argmax), &s)
                .unwrap()
                .total;
            let p = state.probabilities()[argmax as usize];
            print!(
                "s{seed}: argmax_cost={cost} p={:.3} E={:.2} beta={:.3} | ",
                p, expectation, params.betas[0]
            );
        }
        println!();
    }
}

#[test]
#[ignore]
fn qaoa_default_config_center_obstacle() {
    let s = GridScenario::builder(3, 3)
        .robot(coord(0, 0), coord(2, 2))
        .obstacle(coord(1, 1))
        .build()
        .unwrap();
    let dfs = dfs_solve(&s, &DfsConfig::default()).unwrap();
    let sim = Simulator::new(&s).unwrap();
    let pop = sim.heuristic_population();
    for seed in [0u64, 1, 2, 3, 5, 7, 11, 13, 42] {
        let t = std::time::Instant::now();
        let (params, hist) = optimize(&sim, 1, &pop, &OptimizeConfig::default(), seed).unwrap();
        let (state, e) = sim.run(&params, &pop).unwrap();
        let argmax = state.argmax();
        let cost = covpath::cost::cost_total(&sim.decode(argmax), &s)
            .unwrap()
            .total;
        println!(
            "seed {seed}: argmax_cost={cost} dfs={} E={e:.3} hist0={:.2} histlast={:.2} ({:?})",
            dfs.best_cost.total,
            hist[0],
            hist.last().unwrap(),
            t.elapsed()
        );
        assert_eq!(cost, dfs.best_cost.total);
    }
}

#[test]
#[ignore]
fn beta_scan_3x3() {
    for obstacle in [(0usize, 1usize), (1, 2)] {
        let s = GridScenario::builder(3, 3)
            .robot(coord(0, 0), coord(2, 2))
            .obstacle(coord(obstacle.0, obstacle.1))
            .build()
            .unwrap();
        let dfs = dfs_solve(&s, &DfsConfig::default()).unwrap();
        let sim = Simulator::new(&s).unwrap();
        let pop = sim.heuristic_population();
        println!("obstacle {obstacle:?} dfs {}", dfs.best_cost.total);
        for i in 0..=40 {
            let beta = i as f64 * std::f64::consts::PI / 40.0;
            let params = covpath::qaoa::QaoaParams::new(vec![beta], vec![0.0]);
            let (state, e) = sim.run(&params, &pop).unwrap();
            let argmax = state.argmax();
            let cost = covpath::cost::cost_total(&sim.decode(argmax), &s)
                .unwrap()
                .total;
            let p = state.probabilities()[argmax as usize];
            println!("  beta {beta:.3} E {e:8.3} argmax_cost {cost:6.1} p {p:.3}");
        }
    }
}

#[test]
#[ignore]
fn gradient_probe() {
    use covpath::qaoa::finite_difference_gradient;
    use rand::{Rng, SeedableRng};
    let scenario = GridScenario::builder(2, 2)
        .robot(coord(0, 0), coord(1, 1))
        .build()
        .unwrap();
    let sim = Simulator::new(&scenario).unwrap();
    let population = sim.heuristic_population();
    let layers = 2;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(77);
    for point_idx in 0..10 {
        let point: Vec<f64> = (0..2 * layers)
            .map(|_| rng.gen_range(-std::f64::consts::PI..std::f64::consts::PI))
            .collect();
        let coarse = finite_difference_gradient(&sim, layers, &population, &point, 1e-4).unwrap();
        let fine = finite_difference_gradient(&sim, layers, &population, &point, 1e-5).unwrap();
        let diff: f64 = coarse.iter().zip(&fine).map(|(a, b)| (a - b) * (a - b)).sum::<f64>().sqrt();
        let norm: f64 = fine.iter().map(|g| g * g).sum::<f64>().sqrt();
        println!("point {point_idx}: |g|={norm:.6e} diff={diff:.3e} rel={:.3e} g={fine:?}", diff / norm.max(1e-8));
    }
}

#[test]
#[ignore]
fn path_counts_multi_robot() {
    use std::time::Instant;
    let g4 = covpath::grid::Grid::new(4, 4).unwrap();
    let g5 = covpath::grid::Grid::new(5, 5).unwrap();
    for (g, name, eps) in [
        (
            &g4,
            "4x4 top/bottom",
            vec![((0, 0), (0, 3)), ((3, 0), (3, 3))],
        ),
        (
            &g4,
            "4x4 crossed",
            vec![((0, 0), (3, 3)), ((3, 0), (0, 3))],
        ),
        (
            &g5,
            "5x5 left/right",
            vec![((0, 0), (4, 0)), ((0, 4), (4, 4))],
        ),
        (
            &g5,
            "5x5 top/bottom",
            vec![((0, 0), (0, 4)), ((4, 0), (4, 4))],
        ),
    ] {
        let t = Instant::now();
        let counts: Vec<usize> = eps
            .iter()
            .map(|(s, d)| enumerate_paths(g, coord(s.0, s.1), coord(d.0, d.1)).len())
            .collect();
        let combos: u64 = counts.iter().map(|&c| c as u64).product();
        println!(
            "{name}: counts {counts:?} combos {combos} (enumerated in {:?})",
            t.elapsed()
        );
    }
}

#[test]
#[ignore]
fn dfs_vs_sa_two_robots() {
    use std::time::Instant;
    // 4x4, two robots covering halves.
    let s4 = GridScenario::builder(4, 4)
        .robot(coord(0, 0), coord(0, 3))
        .robot(coord(3, 0), coord(3, 3))
        .build()
        .unwrap();
    let t = Instant::now();
    let dfs = dfs_solve(&s4, &DfsConfig::default()).unwrap();
    println!(
        "4x4 dfs: total {} ({} evals, {:?})",
        dfs.best_cost.total,
        dfs.evaluations,
        t.elapsed()
    );
    for seed in 0..10u64 {
        let sa = sa_solve(&s4, &AnnealSchedule::for_scenario(&s4), seed).unwrap();
        print!("s{seed}={} ", sa.best_cost.total);
    }
    println!();

    let s5 = GridScenario::builder(5, 5)
        .robot(coord(0, 0), coord(4, 0))
        .robot(coord(0, 4), coord(4, 4))
        .obstacle(coord(2, 2))
        .build()
        .unwrap();
    let t = Instant::now();
    let dfs = dfs_solve(&s5, &DfsConfig::default()).unwrap();
    println!(
        "5x5 dfs: total {} ({} evals, {:?})",
        dfs.best_cost.total,
        dfs.evaluations,
        t.elapsed()
    );
    for seed in 0..10u64 {
        let sa = sa_solve(&s5, &AnnealSchedule::for_scenario(&s5), seed).unwrap();
        print!("s{seed}={} ", sa.best_cost.total);
    }
    println!();
}
