//! Driving an external MILP solver through LP files.
//!
//! The solver is a command template. `{model}` is replaced by the LP file,
//! `{solution}` by the file the solver must write and the optional `{start}`
//! by a file holding a feasible starting assignment as `name value` lines.

use std::collections::HashMap;
use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use srdg_core::milp::{
    build_milp_with, color_schedule, decode_solution, encode_schedule, export_assignment, export_lp,
    export_relaxation, DecodeError, MilpMode, MilpModel, MilpOptions,
};
use srdg_core::{Instance, OptimizeOutcome, SolveOutcome};
use thiserror::Error;

/// Environment variable holding the default command template.
pub const SOLVER_ENV: &str = "SRDG_SOLVER_CMD";

#[derive(Debug, Error)]
pub enum BackendError {
    #[error("no MILP solver configured; pass --solver-cmd or set {SOLVER_ENV}")]
    NotConfigured,
    #[error("solver command template is empty")]
    EmptyTemplate,
    #[error("could not start the solver: {0}")]
    Launch(#[source] std::io::Error),
    #[error("solver exited with {status}: {stderr}")]
    Failed { status: String, stderr: String },
    #[error("temporary files: {0}")]
    Io(#[from] std::io::Error),
    #[error("unreadable solution file: {0}")]
    Parse(String),
    #[error("solver reports status `{0}`")]
    Status(String),
    #[error("solution misses variable `{0}`")]
    Missing(String),
    #[error("the slack program was reported infeasible, which it never is")]
    SlackInfeasible,
    #[error(transparent)]
    Decode(#[from] DecodeError),
}

/// Shape of the solution file the solver writes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Dialect {
    /// Optional `status <word>` line, then `name value` lines.
    #[default]
    Plain,
    /// The HiGHS solution file: a `Model status` block and a `# Columns`
    /// section of `name value` lines.
    Highs,
}

impl std::str::FromStr for Dialect {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "plain" => Ok(Dialect::Plain),
            "highs" => Ok(Dialect::Highs),
            _ => Err(format!("unknown solution dialect `{s}` (plain, highs)")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Status {
    Optimal,
    Infeasible,
    /// Anything else, for instance a time limit without incumbent.
    Other,
}

/// A solution file read back.
#[derive(Debug, Clone, PartialEq)]
pub struct Solution {
    pub status: Status,
    pub values: HashMap<String, f64>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolverBackend {
    pub template: String,
    pub dialect: Dialect,
    pub options: MilpOptions,
}

impl SolverBackend {
    pub fn new(template: impl Into<String>, dialect: Dialect) -> Self {
        SolverBackend {
            template: template.into(),
            dialect,
            options: MilpOptions::default(),
        }
    }

    /// The backend named by `explicit`, else by the environment.
    pub fn resolve(explicit: Option<&str>, dialect: Dialect) -> Result<Self, BackendError> {
        match explicit {
            Some(t) => Ok(Self::new(t, dialect)),
            None => std::env::var(SOLVER_ENV)
                .ok()
                .filter(|t| !t.trim().is_empty())
                .map(|t| Self::new(t, dialect))
                .ok_or(BackendError::NotConfigured),
        }
    }

    /// Writes `lp`, runs the solver and parses what it wrote.
    pub fn run(&self, lp: &str, start: Option<&str>) -> Result<Solution, BackendError> {
        let dir = tempfile::tempdir()?;
        let model = dir.path().join("model.lp");
        let solution = dir.path().join("model.sol");
        let start_file = dir.path().join("start.sol");
        std::fs::write(&model, lp)?;
        if let Some(s) = start {
            std::fs::write(&start_file, s)?;
        }
        let args = self.command_line(&model, &solution, start.map(|_| start_file.as_path()))?;
        let output = Command::new(&args[0])
            .args(&args[1..])
            .output()
            .map_err(BackendError::Launch)?;
        if !output.status.success() {
            return Err(BackendError::Failed {
                status: output.status.to_string(),
                stderr: String::from_utf8_lossy(&output.stderr).trim().to_owned(),
            });
        }
        let text = std::fs::read_to_string(&solution)
            .map_err(|e| BackendError::Parse(format!("{}: {e}", solution.display())))?;
        parse_solution(&text, self.dialect)
    }

    fn command_line(&self, model: &Path, solution: &Path, start: Option<&Path>) -> Result<Vec<String>, BackendError> {
        let mut args: Vec<String> = Vec::new();
        for token in self.template.split_whitespace() {
            if token.contains("{start}") && start.is_none() {
                // A start flag directly before the placeholder goes too.
                if args.last().is_some_and(|a| a.starts_with('-')) && !token.starts_with('-') {
                    args.pop();
                }
                continue;
            }
            let mut arg = token
                .replace("{model}", &model.to_string_lossy())
                .replace("{solution}", &solution.to_string_lossy());
            if let Some(s) = start {
                arg = arg.replace("{start}", &s.to_string_lossy());
            }
            args.push(arg);
        }
        if args.is_empty() {
            return Err(BackendError::EmptyTemplate);
        }
        Ok(args)
    }

    pub fn build(&self, instance: &Instance, mode: MilpMode) -> MilpModel {
        build_milp_with(instance, mode, &self.options)
    }
}

pub fn parse_solution(text: &str, dialect: Dialect) -> Result<Solution, BackendError> {
    match dialect {
        Dialect::Plain => parse_plain(text),
        Dialect::Highs => parse_highs(text),
    }
}

fn status_of(word: &str) -> Status {
    let w = word.to_ascii_lowercase();
    if w.starts_with("optimal") {
        Status::Optimal
    } else if w.contains("infeasible") {
        Status::Infeasible
    } else {
        Status::Other
    }
}

fn value_line(line: &str) -> Result<(String, f64), BackendError> {
    let mut parts = line.split_whitespace();
    let (Some(name), Some(value), None) = (parts.next(), parts.next(), parts.next()) else {
        return Err(BackendError::Parse(format!("expected `name value`, got `{line}`")));
    };
    let value = value
        .parse::<f64>()
        .map_err(|e| BackendError::Parse(format!("value of {name}: {e}")))?;
    Ok((name.to_owned(), value))
}

fn parse_plain(text: &str) -> Result<Solution, BackendError> {
    let mut status = Status::Optimal;
    let mut values = HashMap::new();
    for line in text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#')) {
        if let Some(word) = line.strip_prefix("status") {
            status = status_of(word.trim());
            continue;
        }
        let (name, value) = value_line(line)?;
        values.insert(name, value);
    }
    Ok(Solution { status, values })
}

fn parse_highs(text: &str) -> Result<Solution, BackendError> {
    let mut lines = text.lines().map(str::trim);
    let mut status = None;
    let mut values = HashMap::new();
    while let Some(line) = lines.next() {
        if line == "Model status" {
            status = lines.next().map(status_of);
        } else if let Some(count) = line.strip_prefix("# Columns") {
            let count: usize = count
                .trim()
                .parse()
                .map_err(|e| BackendError::Parse(format!("column count: {e}")))?;
            for _ in 0..count {
                let line = lines
                    .next()
                    .ok_or_else(|| BackendError::Parse("truncated column section".into()))?;
                let (name, value) = value_line(line)?;
                values.insert(name, value);
            }
            // Only the primal section is wanted.
            break;
        }
    }
    let status = status.ok_or_else(|| BackendError::Parse("no `Model status` block".into()))?;
    Ok(Solution { status, values })
}

/// The solution as a dense vector in model order.
fn dense(model: &MilpModel, solution: &Solution) -> Result<Vec<f64>, BackendError> {
    model
        .variables
        .iter()
        .map(|v| {
            solution
                .values
                .get(&v.name)
                .copied()
                .ok_or_else(|| BackendError::Missing(v.name.clone()))
        })
        .collect()
}

/// A feasible start from the color-by-color schedule, if it fits the model.
fn warm_start(instance: &Instance, model: &MilpModel) -> Option<String> {
    let values = encode_schedule(instance, model, &color_schedule(instance));
    model
        .is_satisfied_by(&values)
        .then(|| export_assignment(model, &values))
}

/// Minimum slack and a schedule attaining it. The schedule is validated
/// before it is returned.
pub fn solve_milp(instance: &Instance, backend: &SolverBackend) -> Result<OptimizeOutcome, BackendError> {
    let model = backend.build(instance, MilpMode::MinSlack);
    let start = backend
        .template
        .contains("{start}")
        .then(|| warm_start(instance, &model))
        .flatten();
    let solution = backend.run(&export_lp(&model), start.as_deref())?;
    match solution.status {
        Status::Optimal => Ok(decode_solution(instance, &model, &dense(&model, &solution)?)?),
        Status::Infeasible => Err(BackendError::SlackInfeasible),
        Status::Other => Err(BackendError::Status("not optimal".into())),
    }
}

/// Feasibility without slack.
pub fn decide(instance: &Instance, backend: &SolverBackend) -> Result<SolveOutcome, BackendError> {
    let model = backend.build(instance, MilpMode::Feasibility);
    let solution = backend.run(&export_lp(&model), None)?;
    match solution.status {
        Status::Optimal => {
            let outcome = decode_solution(instance, &model, &dense(&model, &solution)?)?;
            if outcome.d_star != 0 {
                return Err(BackendError::Status(format!(
                    "feasibility solution needs slack {}",
                    outcome.d_star
                )));
            }
            Ok(SolveOutcome::Feasible(outcome.schedule))
        }
        Status::Infeasible => Ok(SolveOutcome::Infeasible),
        Status::Other => Err(BackendError::Status("neither optimal nor infeasible".into())),
    }
}

/// Optimal slack of the linear relaxation, a lower bound on the integral
/// minimum.
pub fn solve_relaxation(instance: &Instance, backend: &SolverBackend) -> Result<f64, BackendError> {
    let model = backend.build(instance, MilpMode::MinSlack);
    let solution = backend.run(&export_relaxation(&model), None)?;
    match solution.status {
        Status::Optimal => {
            let name = &model.variables[model.slack_var].name;
            let value = solution
                .values
                .get(name)
                .copied()
                .ok_or_else(|| BackendError::Missing(name.clone()))?;
            Ok(value.max(0.0))
        }
        Status::Infeasible => Err(BackendError::SlackInfeasible),
        Status::Other => Err(BackendError::Status("relaxation not optimal".into())),
    }
}

/// Wall-clock time of a closure.
pub fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let start = Instant::now();
    let out = f();
    (out, start.elapsed())
}
