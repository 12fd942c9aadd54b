use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use serde_json::json;

use ctsp::bench::{
    emit_profile_plot_data, fill_session_references, parse_manifest, profile_from_stats,
    render_csv, render_table, run_trials, BenchError, ProfileMetric, ResultsArchive,
};
use ctsp::eax::{EaxError, GaConfig};
use ctsp::exact::{
    brute_force_ctsp, brute_force_tsp, export_mcf_model, export_mtz_model, ExactError, Formulation,
};
use ctsp::instance::{
    generate_clustered, parse_instance, write_instance, GenerateError, GeneratorConfig, Instance,
};
use ctsp::localsearch::LsConfig;
use ctsp::solve::{solve_with, Algorithm, SolveError};
use ctsp::tour::{is_cluster_contiguous, Tour};
use ctsp::transform::{recover_cost, to_tsp, TransformError};

use crate::{Algo, BenchArgs, CliError, Command, SolveArgs, SolverArgs};

type Result<T> = std::result::Result<T, CliError>;

impl From<TransformError> for CliError {
    fn from(e: TransformError) -> Self {
        match e {
            TransformError::Overflow { .. } | TransformError::TooLarge { .. } => {
                CliError::Resource(e.to_string())
            }
            _ => CliError::Invalid(e.to_string()),
        }
    }
}

impl From<ExactError> for CliError {
    fn from(e: ExactError) -> Self {
        CliError::Resource(e.to_string())
    }
}

impl From<EaxError> for CliError {
    fn from(e: EaxError) -> Self {
        match e {
            EaxError::InvalidConfig(_) => CliError::Usage(e.to_string()),
            _ => CliError::Invalid(e.to_string()),
        }
    }
}

impl From<SolveError> for CliError {
    fn from(e: SolveError) -> Self {
        match e {
            SolveError::Transform(t) => t.into(),
            SolveError::Eax(x) => x.into(),
        }
    }
}

impl From<BenchError> for CliError {
    fn from(e: BenchError) -> Self {
        match e {
            BenchError::Solve(s) => s.into(),
            BenchError::NoRuns => CliError::Usage(e.to_string()),
            _ => CliError::Invalid(e.to_string()),
        }
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))
}

fn write_to(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => fs::write(p, text)
            .map_err(|e| CliError::Usage(format!("cannot write {}: {e}", p.display()))),
        None => match std::io::stdout().write_all(text.as_bytes()) {
            Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => {
                Err(CliError::Usage(format!("stdout: {e}")))
            }
            _ => Ok(()),
        },
    }
}

fn load_instance(path: &Path) -> Result<Instance> {
    parse_instance(&read(path)?).map_err(|e| CliError::Invalid(format!("{}: {e}", path.display())))
}

fn algorithm(a: &SolverArgs, seed: u64) -> Algorithm {
    match a.algo {
        Algo::Eax => Algorithm::Eax(GaConfig {
            population: a.pop,
            offspring: a.offspring,
            strategy: a.strategy,
            termination_epsilon: a.epsilon,
            max_generations: a.max_generations,
            seed,
            candidates: a.candidates,
        }),
        Algo::Ls => Algorithm::LocalSearch(LsConfig {
            candidates: a.candidates,
            starts: a.starts,
            seed,
        }),
    }
}

pub fn run(cmd: Command) -> Result<()> {
    match cmd {
        Command::Solve(a) => solve(a),
        Command::Transform { instance, output } => {
            let inst = load_instance(&instance)?;
            let text = to_tsp(&inst)?.to_tsplib()?;
            write_to(output.as_deref(), &text)
        }
        Command::Validate { instance, tour } => validate(&instance, tour.as_deref()),
        Command::Exact {
            instance,
            via_tsp,
            tour_out,
        } => exact(&instance, via_tsp, tour_out.as_deref()),
        Command::ExportModel {
            instance,
            formulation,
            output,
        } => {
            let inst = load_instance(&instance)?;
            let text = match formulation {
                Formulation::Mtz => export_mtz_model(&inst)?,
                Formulation::Mcf => export_mcf_model(&inst)?,
            };
            write_to(output.as_deref(), &text)
        }
        Command::Gen {
            n,
            m,
            seed,
            spread,
            field,
            output,
        } => {
            let cfg = GeneratorConfig {
                n,
                m,
                cluster_spread: spread,
                field_size: field,
                seed,
            };
            let inst = generate_clustered(&cfg).map_err(|e| match e {
                GenerateError::InvalidConfig(_) => CliError::Usage(e.to_string()),
                _ => CliError::Invalid(e.to_string()),
            })?;
            write_to(output.as_deref(), &write_instance(&inst))
        }
        Command::Bench(a) => bench(a),
        Command::Profile {
            archives,
            metric,
            output,
        } => profile(&archives, metric, output.as_deref()),
    }
}

fn solve(a: SolveArgs) -> Result<()> {
    if a.runs == 0 {
        return Err(CliError::Usage("--runs must be at least 1".into()));
    }
    let inst = load_instance(&a.instance)?;
    let offset = {
        let tsp = to_tsp(&inst)?;
        tsp.feasible_crossings() as i64 * tsp.big_m()
    };
    let mut log = match &a.log {
        Some(p) => Some(
            fs::File::create(p)
                .map_err(|e| CliError::Usage(format!("cannot create {}: {e}", p.display())))?,
        ),
        None => None,
    };
    if let Some(dir) = &a.out_dir {
        fs::create_dir_all(dir)
            .map_err(|e| CliError::Usage(format!("cannot create {}: {e}", dir.display())))?;
    }
    let mut all_feasible = true;
    println!("run\tseed\tcost\tfeasible\tgenerations\tseconds");
    for run in 0..a.runs {
        let seed = a.seed + run as u64;
        let algo = algorithm(&a.solver, seed);
        let mut log_err = None;
        let sol = solve_with(&inst, &algo, |rec| {
            if let Some(f) = log.as_mut() {
                let line = json!({
                    "run": run,
                    "seed": seed,
                    "generation": rec.generation,
                    "best": rec.best - offset,
                    "average": rec.average - offset as f64,
                    "elapsed": rec.elapsed,
                });
                if let Err(e) = writeln!(f, "{line}") {
                    log_err.get_or_insert(e);
                }
            }
        })?;
        if let Some(e) = log_err {
            return Err(CliError::Usage(format!("log write failed: {e}")));
        }
        let gens = sol.ga.as_ref().map_or(0, |g| g.generations);
        println!(
            "{run}\t{seed}\t{}\t{}\t{gens}\t{:.1}",
            sol.cost, sol.feasible, sol.wall_time
        );
        all_feasible &= sol.feasible;
        if let Some(dir) = &a.out_dir {
            let path: PathBuf = dir.join(format!("{}.{seed}.tour", inst.name()));
            write_to(Some(&path), &sol.tour.to_text())?;
        }
    }
    if all_feasible {
        Ok(())
    } else {
        Err(CliError::Invalid(
            "a run returned a tour that is not cluster-contiguous".into(),
        ))
    }
}

fn validate(instance: &Path, tour: Option<&Path>) -> Result<()> {
    let inst = load_instance(instance)?;
    println!(
        "{}: n = {}, m = {}, weights = {:?}, c_max = {}",
        inst.name(),
        inst.len(),
        inst.num_clusters(),
        inst.kind(),
        inst.max_distance()
    );
    let Some(path) = tour else {
        return Ok(());
    };
    let (order, recorded) =
        Tour::parse_text(&read(path)?).map_err(|e| CliError::Invalid(e.to_string()))?;
    let t = Tour::new(order, &inst).map_err(|e| CliError::Invalid(e.to_string()))?;
    if t.cost() != recorded {
        return Err(CliError::Invalid(format!(
            "tour records cost {recorded} but evaluates to {}",
            t.cost()
        )));
    }
    if !is_cluster_contiguous(&inst, t.order()) {
        return Err(CliError::Invalid(format!(
            "tour (cost {}) is not cluster-contiguous",
            t.cost()
        )));
    }
    println!("tour ok: cost {}, cluster-contiguous", t.cost());
    Ok(())
}

fn exact(instance: &Path, via_tsp: bool, tour_out: Option<&Path>) -> Result<()> {
    let inst = load_instance(instance)?;
    let (tour, cost) = if via_tsp {
        let tsp = to_tsp(&inst)?;
        let (t, c) = brute_force_tsp(&tsp)?;
        let f = recover_cost(c, inst.num_clusters(), tsp.big_m())?;
        (t.with_distance(&inst), f)
    } else {
        brute_force_ctsp(&inst)?
    };
    println!("cost {cost}");
    if let Some(p) = tour_out {
        write_to(Some(p), &tour.to_text())?;
    }
    Ok(())
}

fn bench(a: BenchArgs) -> Result<()> {
    let entries = parse_manifest(&read(&a.manifest)?)?;
    let base = a.manifest.parent().unwrap_or(Path::new("."));
    let mut stats = Vec::with_capacity(entries.len());
    for e in &entries {
        let path = base.join(&e.path);
        let inst = load_instance(&path)?;
        eprintln!("{}: {} runs", inst.name(), a.runs);
        stats.push(run_trials(
            &inst,
            &algorithm(&a.solver, a.seed),
            a.runs,
            a.seed,
            e.reference,
        )?);
    }
    fill_session_references(&mut stats)?;
    print!("{}", render_table(&stats));
    if let Some(p) = &a.csv {
        write_to(Some(p), &render_csv(&stats))?;
    }
    if let Some(p) = &a.archive {
        write_to(Some(p), &ResultsArchive { stats }.to_json())?;
    }
    Ok(())
}

fn profile(archives: &[PathBuf], metric: ProfileMetric, output: Option<&Path>) -> Result<()> {
    let mut stats = Vec::new();
    for p in archives {
        let a = ResultsArchive::from_json(&read(p)?)
            .map_err(|e| CliError::Invalid(format!("{}: {e}", p.display())))?;
        stats.extend(a.stats);
    }
    fill_session_references(&mut stats)?;
    let pp = profile_from_stats(&stats, metric)?;
    write_to(output, &emit_profile_plot_data(&pp))
}
