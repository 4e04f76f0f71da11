use clap::Parser;

use covpath::cli::{exit_code, run_explore, run_resources, run_solve, Cli, Command};

fn main() {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Solve(args) => run_solve(args),
        Command::Resources(args) => run_resources(args),
        Command::Explore(args) => run_explore(args),
    };
    if let Err(error) = outcome {
        eprintln!("error: {error}");
        std::process::exit(exit_code(&error));
    }
}
