//! Command-line front end: scenario loading, solver orchestration, and
//! artifact emission (renderings, convergence curves, run records).

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::cost::CostBreakdown;
use crate::error::{Error, Result};
use crate::grid::GridScenario;
use crate::moves::{reachable_states, DEFAULT_REACHABLE_CAP};
use crate::qaoa::{optimize, OptimizeConfig, Simulator};
use crate::render::{render_ascii, render_svg};
use crate::resources::full_report;
use crate::scenario::{digest_bytes, load_scenario};
use crate::solvers::{
    dfs_solve, enumerate_paths, ga_solve, sa_solve, AnnealSchedule, DfsConfig, GaConfig,
    SolverResult,
};

/// Coverage path planning on grid maps.
#[derive(Parser, Debug)]
#[command(name = "covpath", version, about)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Solve a scenario with one of the planners.
    Solve(SolveArgs),
    /// Print qubit and gate estimates for the quantum circuit.
    Resources(ResourcesArgs),
    /// Check that flip moves reach every valid path of one robot.
    Explore(ExploreArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SolverKind {
    Dfs,
    Sa,
    Ga,
    Qaoa,
}

impl SolverKind {
    fn name(self) -> &'static str {
        match self {
            SolverKind::Dfs => "dfs",
            SolverKind::Sa => "sa",
            SolverKind::Ga => "ga",
            SolverKind::Qaoa => "qaoa",
        }
    }
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct SolveArgs {
    /// Scenario file (JSON).
    #[arg(long)]
    pub scenario: PathBuf,

    /// Planner to run.
    #[arg(long, value_enum)]
    pub solver: SolverKind,

    /// Random seed; defaults to the scenario file's seed.
    #[arg(long)]
    pub seed: Option<u64>,

    /// Output directory for artifacts.
    #[arg(long, default_value = "covpath-out")]
    pub out: PathBuf,

    /// Ansatz layers (qaoa).
    #[arg(long, default_value_t = 1)]
    pub layers: usize,

    /// Optimizer iterations (qaoa).
    #[arg(long, default_value_t = 150)]
    pub iterations: usize,

    /// Measurement shots recorded in the run record (qaoa).
    #[arg(long, default_value_t = 1024)]
    pub shots: u64,

    /// Decision-qubit cap for the statevector simulator (qaoa).
    #[arg(long, default_value_t = crate::qaoa::DEFAULT_QUBIT_CAP)]
    pub max_qubits: usize,

    /// Independent annealing restarts; the best result is kept (sa).
    #[arg(long, default_value_t = 1)]
    pub restarts: usize,

    /// Log raw per-step costs instead of best-so-far (sa).
    #[arg(long, default_value_t = false)]
    pub log_raw: bool,

    /// Population size (ga).
    #[arg(long, default_value_t = 32)]
    pub population: usize,

    /// Generations (ga).
    #[arg(long, default_value_t = 60)]
    pub generations: usize,

    /// Joint-combination budget for the exhaustive scan (dfs).
    #[arg(long, default_value_t = 200_000_000)]
    pub dfs_budget: u64,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct ResourcesArgs {
    /// Scenario file (JSON).
    #[arg(long)]
    pub scenario: PathBuf,

    /// Ansatz layers to account for.
    #[arg(long, default_value_t = 1)]
    pub layers: usize,

    /// Output directory for the report document.
    #[arg(long, default_value = "covpath-out")]
    pub out: PathBuf,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct ExploreArgs {
    /// Scenario file (JSON).
    #[arg(long)]
    pub scenario: PathBuf,

    /// Robot index to check.
    #[arg(long, default_value_t = 0)]
    pub robot: usize,

    /// Cap on the number of states explored.
    #[arg(long, default_value_t = DEFAULT_REACHABLE_CAP)]
    pub state_cap: usize,
}

/// Everything needed to reproduce and audit one run.
#[derive(Serialize)]
struct RunRecord<'a> {
    scenario_path: String,
    scenario_digest: String,
    solver: &'a str,
    config: serde_json::Value,
    seed: u64,
    best_cost: CostBreakdown,
    evaluations: u64,
    history_len: usize,
    qaoa: Option<QaoaRecord>,
    duration_ms: u128,
    artifacts: Vec<String>,
}

#[derive(Serialize)]
struct QaoaRecord {
    layers: usize,
    best_params: crate::qaoa::QaoaParams,
    final_expectation: f64,
    argmax_basis_index: u64,
    argmax_probability: f64,
    sampled_counts_top: Vec<(u64, u64)>,
}

/// Maps an error to the process exit status: 1 for unusable input, 2 for
/// infeasible scenarios, 3 for exceeded budgets and caps.
pub fn exit_code(error: &Error) -> i32 {
    match error {
        Error::Infeasible(_) => 2,
        Error::BudgetExceeded(_) | Error::QubitCapExceeded { .. } => 3,
        _ => 1,
    }
}

fn write_artifact(dir: &Path, name: &str, contents: &str) -> Result<String> {
    std::fs::create_dir_all(dir)?;
    let path = dir.join(name);
    std::fs::write(&path, contents)?;
    Ok(path.display().to_string())
}

fn convergence_csv(history: &[(u64, f64)]) -> String {
    let mut csv = String::from("iteration,cost\n");
    for (iteration, cost) in history {
        let _ = writeln!(csv, "{iteration},{cost}");
    }
    csv
}

fn print_breakdown(cost: &CostBreakdown) {
    println!(
        "best cost: total = {} (c1 = {}, c2 = {}, c3 = {})",
        cost.total, cost.c1, cost.c2, cost.c3
    );
}

/// Runs `solve`: dispatches to the requested planner, writes artifacts,
/// and prints the best plan.
pub fn run_solve(args: &SolveArgs) -> Result<()> {
    let started = Instant::now();
    let (scenario, file) = load_scenario(&args.scenario)?;
    let digest = digest_bytes(&std::fs::read(&args.scenario)?);
    let seed = args.seed.unwrap_or(file.seed);

    let mut qaoa_record = None;
    let (result, csv): (SolverResult, Option<String>) = match args.solver {
        SolverKind::Dfs => {
            let result = dfs_solve(
                &scenario,
                &DfsConfig {
                    budget: args.dfs_budget,
                },
            )?;
            (result, None)
        }
        SolverKind::Sa => {
            let result = run_sa_restarts(&scenario, seed, args.restarts)?;
            let history = if args.log_raw {
                &result.raw_history
            } else {
                &result.history
            };
            let csv = convergence_csv(history);
            (result, Some(csv))
        }
        SolverKind::Ga => {
            let result = ga_solve(
                &scenario,
                &GaConfig {
                    population_size: args.population,
                    generations: args.generations,
                },
                seed,
            )?;
            let csv = convergence_csv(&result.history);
            (result, Some(csv))
        }
        SolverKind::Qaoa => {
            let (result, record, history) = run_qaoa_solve(&scenario, args, seed)?;
            qaoa_record = Some(record);
            let csv = convergence_csv(&history);
            (result, Some(csv))
        }
    };

    let ascii = render_ascii(&result.best_state, &scenario);
    let svg = render_svg(&result.best_state, &scenario);
    let mut artifacts = vec![
        write_artifact(&args.out, "render.txt", &ascii)?,
        write_artifact(&args.out, "render.svg", &svg)?,
    ];
    if let Some(csv) = &csv {
        artifacts.push(write_artifact(&args.out, "convergence.csv", csv)?);
    }

    let record = RunRecord {
        scenario_path: args.scenario.display().to_string(),
        scenario_digest: digest,
        solver: args.solver.name(),
        config: serde_json::to_value(args).expect("args serialize"),
        seed,
        best_cost: result.best_cost,
        evaluations: result.evaluations,
        history_len: result.history.len(),
        qaoa: qaoa_record,
        duration_ms: started.elapsed().as_millis(),
        artifacts: artifacts.clone(),
    };
    let record_json = serde_json::to_string_pretty(&record).expect("record serialize");
    artifacts.push(write_artifact(&args.out, "run_record.json", &record_json)?);

    println!("solver: {}", args.solver.name());
    print!("{ascii}");
    print_breakdown(&result.best_cost);
    println!("evaluations: {}", result.evaluations);
    println!("artifacts:");
    for a in &artifacts {
        println!("  {a}");
    }
    Ok(())
}

fn run_sa_restarts(scenario: &GridScenario, seed: u64, restarts: usize) -> Result<SolverResult> {
    let schedule = AnnealSchedule::for_scenario(scenario);
    let runs = restarts.max(1);
    let mut results: Vec<(usize, SolverResult)> = Vec::with_capacity(runs);
    std::thread::scope(|scope| -> Result<()> {
        let mut handles = Vec::with_capacity(runs);
        for i in 0..runs {
            let schedule = schedule;
            handles.push((
                i,
                scope.spawn(move || sa_solve(scenario, &schedule, seed + i as u64)),
            ));
        }
        for (i, handle) in handles {
            let result = handle.join().expect("annealing thread panicked")?;
            results.push((i, result));
        }
        Ok(())
    })?;
    // Deterministic aggregation: best total first, earliest restart on ties.
    results.sort_by(|a, b| {
        a.1.best_cost
            .total
            .partial_cmp(&b.1.best_cost.total)
            .expect("finite costs")
            .then(a.0.cmp(&b.0))
    });
    Ok(results.into_iter().next().expect("at least one run").1)
}

fn run_qaoa_solve(
    scenario: &GridScenario,
    args: &SolveArgs,
    seed: u64,
) -> Result<(SolverResult, QaoaRecord, Vec<(u64, f64)>)> {
    let sim = Simulator::with_qubit_cap(scenario, args.max_qubits)?;
    let population = sim.heuristic_population();
    let config = OptimizeConfig {
        iterations: args.iterations,
        ..OptimizeConfig::default()
    };
    let (params, history) = optimize(&sim, args.layers, &population, &config, seed)?;
    let (state, expectation) = sim.run(&params, &population)?;

    let probabilities = state.probabilities();
    let argmax = state.argmax();
    let best_state = sim.decode(argmax);
    let best_cost = crate::cost::cost_total(&best_state, scenario)?;

    let mut counts: Vec<(u64, u64)> = sim
        .sample(&state, args.shots, seed)
        .into_iter()
        .collect();
    counts.sort_by(|a, b| b.1.cmp(&a.1).then(a.0.cmp(&b.0)));
    counts.truncate(8);

    let record = QaoaRecord {
        layers: args.layers,
        best_params: params,
        final_expectation: expectation,
        argmax_basis_index: argmax,
        argmax_probability: probabilities[argmax as usize],
        sampled_counts_top: counts,
    };
    let history: Vec<(u64, f64)> = history
        .into_iter()
        .enumerate()
        .map(|(i, e)| (i as u64, e))
        .collect();
    // Evaluations: one expectation per history entry plus the gradient
    // probes (2 per parameter per iteration).
    let evaluations = (history.len() * (1 + 4 * args.layers)) as u64;
    let result = SolverResult {
        best_state,
        best_cost,
        history: history.clone(),
        raw_history: Vec::new(),
        evaluations,
        seed,
    };
    Ok((result, record, history))
}

/// Runs `resources`: prints the human-readable table and writes the JSON
/// report.
pub fn run_resources(args: &ResourcesArgs) -> Result<()> {
    let (scenario, _) = load_scenario(&args.scenario)?;
    let report = full_report(&scenario, args.layers.max(1));
    println!("{report}");
    let json = serde_json::to_string_pretty(&report).expect("report serialize");
    let path = write_artifact(&args.out, "resources.json", &json)?;
    println!("report: {path}");
    Ok(())
}

/// Runs `explore`: compares the flip-move closure against brute-force path
/// enumeration and prints PASS or FAIL.
pub fn run_explore(args: &ExploreArgs) -> Result<()> {
    let (scenario, _) = load_scenario(&args.scenario)?;
    if args.robot >= scenario.robots() {
        return Err(Error::InvalidScenario(format!(
            "robot {} out of range, scenario has {}",
            args.robot,
            scenario.robots()
        )));
    }
    let reachable = reachable_states(&scenario, args.robot, args.state_cap)?;
    let ep = scenario.endpoint(args.robot);
    let enumerated: std::collections::BTreeSet<Vec<bool>> =
        enumerate_paths(scenario.grid(), ep.source, ep.dest)
            .into_iter()
            .collect();
    let equal = reachable == enumerated;
    println!("reachable states: {}", reachable.len());
    println!("enumerated valid paths: {}", enumerated.len());
    println!("{}", if equal { "PASS" } else { "FAIL" });
    if !equal {
        std::process::exit(1);
    }
    Ok(())
}
