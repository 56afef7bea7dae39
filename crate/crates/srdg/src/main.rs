//! `srdg`: solve, validate, generate, reduce, bench and export-lp.
//!
//! Exit codes: 0 valid or feasible, 1 invalid or infeasible, 2 usage or
//! parse error, 3 resource or backend failure.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;
use thiserror::Error;

use srdg::backend::{BackendError, Dialect, SolverBackend};
use srdg::bench::{load_corpus, run_bench, summarize, write_records, write_summary, BenchConfig};
use srdg::engine::{Engine, EngineError};
use srdg::io::{diagnosis_doc, parse_geo, parse_instance, parse_schedule, render_violation, write_instance, write_schedule, IoError};
use srdg::sources::{parse_cnf, parse_graph, parse_intervals, write_cnf, SourceError};
use srdg_core::generators::{
    gen_geo_instance, gen_path_instance, gen_star_instance, path_grid, star_grid, GenError, GeoParams, PathGenParams,
    StarGenParams, Zone,
};
use srdg_core::milp::{build_milp_with, export_lp, export_relaxation, MilpMode, MilpOptions};
use srdg_core::reductions::{
    oracle_223sat, oracle_is, oracle_mis_uig, oracle_vc, random_formula223, reduce_223sat, reduce_cubic_is,
    reduce_mis_uig, reduce_vertex_cover, CubicGraph, ReductionError, VcInstance,
};
use srdg_core::{validate_with_slack, Instance, SolveError, Time};

#[derive(Debug, Parser)]
#[command(name = "srdg", version, about = "Smooth routing in decaying graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args, Clone)]
struct SolverArgs {
    /// MILP solver command with {model}, {solution} and optional {start}
    /// placeholders. Defaults to $SRDG_SOLVER_CMD.
    #[arg(long)]
    solver_cmd: Option<String>,
    /// Solution file format written by the solver.
    #[arg(long, default_value = "plain")]
    dialect: Dialect,
    /// Drop capacity rows and disjunctions the bounds already settle.
    #[arg(long)]
    presolve: bool,
    /// Replace routes with a single possible schedule by constants.
    #[arg(long)]
    fold: bool,
}

impl SolverArgs {
    fn options(&self) -> MilpOptions {
        MilpOptions {
            presolve: self.presolve,
            fold_fixed_paths: self.fold,
        }
    }

    /// The configured backend, or `None` when nothing is configured.
    fn backend(&self) -> Option<SolverBackend> {
        SolverBackend::resolve(self.solver_cmd.as_deref(), self.dialect)
            .ok()
            .map(|mut b| {
                b.options = self.options();
                b
            })
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Decide feasibility or minimize the slack of an instance.
    Solve {
        instance: PathBuf,
        #[arg(long, default_value = "auto")]
        engine: Engine,
        /// Minimize the uniform deadline slack instead of deciding.
        #[arg(long)]
        min_slack: bool,
        /// Write the schedule found here.
        #[arg(long)]
        schedule_out: Option<PathBuf>,
        #[arg(long)]
        json: bool,
        #[command(flatten)]
        solver: SolverArgs,
    },
    /// Check a schedule against an instance.
    Validate {
        instance: PathBuf,
        schedule: PathBuf,
        /// Raise every deadline by this much.
        #[arg(long, default_value_t = 0)]
        slack: Time,
        #[arg(long)]
        json: bool,
    },
    /// Generate instances or source problems.
    Generate {
        #[command(subcommand)]
        family: Family,
    },
    /// Build a hardness gadget from a source problem, with the expected
    /// verdict in a `.verdict.json` sidecar.
    Reduce {
        problem: Problem,
        /// Source file: graph, interval list or CNF formula.
        input: PathBuf,
        /// Parameter k of vertex cover and independent set.
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Run engines over a directory of instances and write CSV.
    Bench {
        corpus: PathBuf,
        #[arg(long, value_delimiter = ',', default_value = "auto")]
        engines: Vec<Engine>,
        #[arg(long, default_value_t = 1)]
        repetitions: usize,
        /// Also solve the linear relaxation on MILP runs.
        #[arg(long)]
        relaxation: bool,
        #[arg(long, default_value_t = 1)]
        workers: usize,
        /// Per-run records; standard output when absent.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Per-engine aggregation.
        #[arg(long)]
        summary: Option<PathBuf>,
        #[command(flatten)]
        solver: SolverArgs,
    },
    /// Write the integer program of an instance in LP format.
    ExportLp {
        instance: PathBuf,
        /// Hard deadlines instead of slack minimization.
        #[arg(long)]
        feasibility: bool,
        /// Drop integrality.
        #[arg(long)]
        relaxation: bool,
        #[arg(long)]
        presolve: bool,
        #[arg(long)]
        fold: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Problem {
    MisUig,
    CubicIs,
    Vc,
    #[value(name = "223sat")]
    Sat223,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum TargetZone {
    A,
    B,
    C,
}

#[derive(Debug, Args)]
struct Output {
    /// Output file, or directory with --grid.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Debug, Subcommand)]
enum Family {
    /// Artificial decaying path.
    Path {
        #[arg(long, default_value_t = 8)]
        n: usize,
        #[arg(long, default_value_t = 1.0)]
        p_star: f64,
        #[arg(long, default_value_t = 0.66)]
        l_star: f64,
        #[arg(long, default_value_t = 1.0)]
        c_star: f64,
        #[arg(long, default_value_t = 1.0)]
        d_star: f64,
        /// Write the full factorial design into the --out directory.
        #[arg(long)]
        grid: bool,
        /// Keep only the first instances of the design.
        #[arg(long)]
        limit: Option<usize>,
        #[command(flatten)]
        output: Output,
    },
    /// Artificial decaying star.
    Star {
        #[arg(long, default_value_t = 8)]
        n: usize,
        #[arg(long, default_value_t = 1.0)]
        p_star: f64,
        #[arg(long, default_value_t = 1.0)]
        c_star: f64,
        #[arg(long, default_value_t = 1.0)]
        d_star: f64,
        #[arg(long)]
        grid: bool,
        #[arg(long)]
        limit: Option<usize>,
        #[command(flatten)]
        output: Output,
    },
    /// Street network with flood deadlines from a geo-graph file.
    Geo {
        geo: PathBuf,
        #[arg(long, default_value_t = 0.1)]
        p_star: f64,
        #[arg(long, default_value = "a")]
        zone: TargetZone,
        #[command(flatten)]
        output: Output,
    },
    /// Random (2,2)-3SAT formula in DIMACS CNF.
    Formula {
        #[arg(long, default_value_t = 3)]
        vars: usize,
        #[command(flatten)]
        output: Output,
    },
}

#[derive(Debug, Error)]
enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Read { path: PathBuf, source: std::io::Error },
    #[error("{path}: {source}")]
    Write { path: PathBuf, source: std::io::Error },
    #[error(transparent)]
    Parse(#[from] IoError),
    #[error(transparent)]
    Source(#[from] SourceError),
    #[error(transparent)]
    Generate(#[from] GenError),
    #[error(transparent)]
    Reduction(#[from] ReductionError),
    #[error(transparent)]
    Engine(#[from] EngineError),
    #[error(transparent)]
    Backend(#[from] BackendError),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) | CliError::Read { .. } | CliError::Parse(_) | CliError::Source(_) => 2,
            CliError::Generate(_) | CliError::Reduction(_) => 2,
            CliError::Engine(EngineError::Solve(SolveError::ShapeMismatch { .. } | SolveError::NotThroughCenter(_))) => 2,
            _ => 3,
        }
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Read {
        path: path.to_owned(),
        source,
    })
}

fn write(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|source| CliError::Write {
        path: path.to_owned(),
        source,
    })
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), CliError> {
    match out {
        Some(p) => write(p, &format!("{text}\n")),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

fn load(path: &Path) -> Result<Instance, CliError> {
    Ok(parse_instance(&read(path)?)?)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

fn run(command: Command) -> Result<u8, CliError> {
    match command {
        Command::Solve {
            instance,
            engine,
            min_slack,
            schedule_out,
            json,
            solver,
        } => solve(&load(&instance)?, engine, min_slack, schedule_out.as_deref(), json, &solver),
        Command::Validate {
            instance,
            schedule,
            slack,
            json,
        } => {
            let inst = load(&instance)?;
            let sched = parse_schedule(&read(&schedule)?)?;
            let diagnosis = validate_with_slack(&inst, &sched, slack).map_err(|e| CliError::Usage(e.to_string()))?;
            if json {
                let doc = diagnosis_doc(&inst, &diagnosis);
                println!("{}", serde_json::to_string_pretty(&doc).expect("diagnoses serialize"));
            } else if diagnosis.is_valid() {
                println!("VALID");
            } else {
                println!("INVALID ({} violations)", diagnosis.violations.len());
                for v in &diagnosis.violations {
                    println!("  {}", render_violation(&inst, v));
                }
            }
            Ok(if diagnosis.is_valid() { 0 } else { 1 })
        }
        Command::Generate { family } => generate(family),
        Command::Reduce { problem, input, k, out } => reduce(problem, &input, k, &out),
        Command::Bench {
            corpus,
            engines,
            repetitions,
            relaxation,
            workers,
            out,
            summary,
            solver,
        } => {
            let backend = solver.backend();
            if (engines.contains(&Engine::Milp) || relaxation) && backend.is_none() {
                return Err(BackendError::NotConfigured.into());
            }
            let corpus = load_corpus(&corpus).map_err(|source| CliError::Read { path: corpus, source })?;
            let cfg = BenchConfig {
                engines,
                repetitions,
                relaxation,
                backend,
                workers,
            };
            let records = run_bench(&corpus, &cfg);
            let mut buf = Vec::new();
            write_records(&records, &mut buf)?;
            emit(out.as_deref(), String::from_utf8_lossy(&buf).trim_end())?;
            if let Some(path) = summary {
                let mut buf = Vec::new();
                write_summary(&summarize(&records), &mut buf)?;
                write(&path, &String::from_utf8_lossy(&buf))?;
            }
            Ok(0)
        }
        Command::ExportLp {
            instance,
            feasibility,
            relaxation,
            presolve,
            fold,
            out,
        } => {
            let inst = load(&instance)?;
            let mode = if feasibility { MilpMode::Feasibility } else { MilpMode::MinSlack };
            let options = MilpOptions {
                presolve,
                fold_fixed_paths: fold,
            };
            let model = build_milp_with(&inst, mode, &options);
            let text = if relaxation { export_relaxation(&model) } else { export_lp(&model) };
            emit(out.as_deref(), text.trim_end())?;
            Ok(0)
        }
    }
}

fn solve(
    inst: &Instance,
    engine: Engine,
    min_slack: bool,
    schedule_out: Option<&Path>,
    json: bool,
    solver: &SolverArgs,
) -> Result<u8, CliError> {
    let backend = solver.backend();
    let used = engine.resolve(inst, backend.as_ref());
    let (feasible, d_star, schedule) = if min_slack {
        let o = engine.min_slack(inst, backend.as_ref())?;
        (o.d_star == 0, Some(o.d_star), Some(o.schedule))
    } else {
        let o = engine.decide(inst, backend.as_ref())?;
        (o.is_feasible(), None, o.schedule().cloned())
    };
    if let (Some(path), Some(s)) = (schedule_out, &schedule) {
        write(path, &write_schedule(s))?;
    }
    if json {
        let doc = json!({
            "engine": used.to_string(),
            "feasible": feasible,
            "d_star": d_star,
            "schedule": schedule.as_ref().map(|s| json!({"horizon": s.horizon, "departures": s.departures})),
        });
        println!("{}", serde_json::to_string_pretty(&doc).expect("reports serialize"));
    } else {
        println!("engine: {used}");
        match d_star {
            Some(d) => println!("d* = {d}"),
            None => println!("{}", if feasible { "FEASIBLE" } else { "INFEASIBLE" }),
        }
    }
    Ok(if feasible { 0 } else { 1 })
}

fn write_grid(dir: &Path, items: Vec<(String, Result<Instance, GenError>)>) -> Result<u8, CliError> {
    std::fs::create_dir_all(dir).map_err(|source| CliError::Write {
        path: dir.to_owned(),
        source,
    })?;
    for (name, inst) in items {
        write(&dir.join(format!("{name}.json")), &write_instance(&inst?))?;
    }
    Ok(0)
}

fn generate(family: Family) -> Result<u8, CliError> {
    match family {
        Family::Path {
            n,
            p_star,
            l_star,
            c_star,
            d_star,
            grid,
            limit,
            output,
        } => {
            if grid {
                let dir = output.out.ok_or_else(|| CliError::Usage("--grid needs --out DIR".into()))?;
                let items = path_grid(output.seed)
                    .into_iter()
                    .take(limit.unwrap_or(usize::MAX))
                    .map(|(name, p)| (name, gen_path_instance(&p)))
                    .collect();
                return write_grid(&dir, items);
            }
            let params = PathGenParams {
                n,
                p_star,
                l_star,
                c_star,
                d_star,
                seed: output.seed,
            };
            emit(output.out.as_deref(), &write_instance(&gen_path_instance(&params)?))?;
        }
        Family::Star {
            n,
            p_star,
            c_star,
            d_star,
            grid,
            limit,
            output,
        } => {
            if grid {
                let dir = output.out.ok_or_else(|| CliError::Usage("--grid needs --out DIR".into()))?;
                let items = star_grid(output.seed)
                    .into_iter()
                    .take(limit.unwrap_or(usize::MAX))
                    .map(|(name, p)| (name, gen_star_instance(&p)))
                    .collect();
                return write_grid(&dir, items);
            }
            let params = StarGenParams {
                n,
                p_star,
                c_star,
                d_star,
                seed: output.seed,
            };
            emit(output.out.as_deref(), &write_instance(&gen_star_instance(&params)?))?;
        }
        Family::Geo {
            geo,
            p_star,
            zone,
            output,
        } => {
            let graph = parse_geo(&read(&geo)?)?;
            let target = match zone {
                TargetZone::A => Zone::A,
                TargetZone::B => Zone::B,
                TargetZone::C => Zone::C,
            };
            let params = GeoParams {
                p_star,
                target,
                seed: output.seed,
            };
            emit(output.out.as_deref(), &write_instance(&gen_geo_instance(&graph, &params)?))?;
        }
        Family::Formula { vars, output } => {
            let mut rng = ChaCha8Rng::seed_from_u64(output.seed);
            emit(output.out.as_deref(), write_cnf(&random_formula223(&mut rng, vars)?).trim_end())?;
        }
    }
    Ok(0)
}

/// Sidecar path: `x.json` becomes `x.verdict.json`.
fn sidecar(out: &Path) -> PathBuf {
    out.with_extension("verdict.json")
}

fn reduce(problem: Problem, input: &Path, k: Option<usize>, out: &Path) -> Result<u8, CliError> {
    let text = read(input)?;
    let need_k = || k.ok_or_else(|| CliError::Usage("this problem needs --k".into()));
    let (name, instance, expected) = match problem {
        Problem::MisUig => {
            let src = parse_intervals(&text)?;
            ("mis-uig", reduce_mis_uig(&src)?, oracle_mis_uig(&src).ok())
        }
        Problem::CubicIs => {
            let k = need_k()?;
            let g = CubicGraph::new(parse_graph(&text)?)?;
            ("cubic-is", reduce_cubic_is(&g, k)?, oracle_is(g.graph(), k).ok())
        }
        Problem::Vc => {
            let src = VcInstance::new(parse_graph(&text)?, need_k()?)?;
            ("vc", reduce_vertex_cover(&src)?, oracle_vc(&src).ok())
        }
        Problem::Sat223 => {
            let f = parse_cnf(&text)?;
            ("223sat", reduce_223sat(&f)?, oracle_223sat(&f).ok())
        }
    };
    write(out, &write_instance(&instance))?;
    let doc = json!({
        "problem": name,
        "source": input.display().to_string(),
        "k": k,
        "expected_feasible": expected,
    });
    write(&sidecar(out), &serde_json::to_string_pretty(&doc).expect("sidecars serialize"))?;
    println!(
        "{}: {} vertices, {} paths, expected {}",
        out.display(),
        instance.graph().vertex_count(),
        instance.paths().len(),
        match expected {
            Some(true) => "feasible",
            Some(false) => "infeasible",
            None => "unknown (source too large for the oracle)",
        }
    );
    Ok(0)
}
