//! `ctsp`: solve, transform, check and benchmark clustered TSP instances.
//!
//! Exit codes: 0 success, 1 usage error, 2 infeasible or invalid input,
//! 3 resource limit exceeded.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use ctsp::bench::ProfileMetric;
use ctsp::eax::EsetStrategy;
use ctsp::exact::Formulation;

#[derive(Parser)]
#[command(name = "ctsp", version, about = "Clustered TSP toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve an instance through the big-M transformation.
    Solve(SolveArgs),
    /// Write the transformed TSP as a TSPLIB explicit matrix.
    Transform {
        instance: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Check an instance file and optionally a tour against it.
    Validate {
        instance: PathBuf,
        #[arg(long)]
        tour: Option<PathBuf>,
    },
    /// Brute-force optimum of a tiny instance.
    Exact {
        instance: PathBuf,
        /// Solve the transformed TSP with Held–Karp instead, then recover.
        #[arg(long)]
        via_tsp: bool,
        #[arg(long)]
        tour_out: Option<PathBuf>,
    },
    /// Export an integer-programming model in LP format.
    ExportModel {
        instance: PathBuf,
        #[arg(long, default_value = "mtz")]
        formulation: Formulation,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Generate a random clustered instance.
    Gen {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 15.0)]
        spread: f64,
        #[arg(long, default_value_t = 1000.0)]
        field: f64,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Run repeated trials over a manifest of instances.
    Bench(BenchArgs),
    /// Performance-profile data from one or more results archives.
    Profile {
        #[arg(required = true)]
        archives: Vec<PathBuf>,
        /// cost, gap (cost normalized by the reference) or time.
        #[arg(long, default_value = "cost")]
        metric: ProfileMetric,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
enum Algo {
    Eax,
    Ls,
}

#[derive(Args, Clone)]
struct SolverArgs {
    #[arg(long, value_enum, default_value = "eax")]
    algo: Algo,
    #[arg(long, default_value_t = 300)]
    pop: usize,
    #[arg(long, default_value_t = 30)]
    offspring: usize,
    /// `single` or `k-multiple:<k>`.
    #[arg(long, default_value = "single")]
    strategy: EsetStrategy,
    #[arg(long, default_value_t = 3000)]
    max_generations: usize,
    #[arg(long, default_value_t = 0.001)]
    epsilon: f64,
    #[arg(long, default_value_t = 10)]
    candidates: usize,
    /// Local-search restarts for `--algo ls`.
    #[arg(long, default_value_t = 10)]
    starts: usize,
}

#[derive(Args)]
struct SolveArgs {
    instance: PathBuf,
    #[command(flatten)]
    solver: SolverArgs,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long, default_value_t = 1)]
    runs: usize,
    /// Directory for one tour file per run.
    #[arg(long)]
    out_dir: Option<PathBuf>,
    /// JSON-lines generation log.
    #[arg(long)]
    log: Option<PathBuf>,
}

#[derive(Args)]
struct BenchArgs {
    manifest: PathBuf,
    #[command(flatten)]
    solver: SolverArgs,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long, default_value_t = 10)]
    runs: usize,
    #[arg(long)]
    csv: Option<PathBuf>,
    #[arg(long)]
    archive: Option<PathBuf>,
}

/// Failure with its exit code.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Invalid(String),
    Resource(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Invalid(_) => 2,
            CliError::Resource(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Invalid(m) | CliError::Resource(m) => m,
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match commands::run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.code())
        }
    }
}
