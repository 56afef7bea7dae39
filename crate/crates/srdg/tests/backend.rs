use std::path::Path;

use srdg::backend::{decide, parse_solution, solve_milp, BackendError, Dialect, SolverBackend, Status};
use srdg::io::parse_instance;
use srdg_core::milp::{build_milp_with, encode_schedule, export_assignment, MilpMode, MilpOptions};
use srdg_core::{validate, Instance, Temporalization};
use tempfile::TempDir;

/// `a - b` with one edge of traversal time 2 and one route each way.
fn head_on() -> Instance {
    parse_instance(
        r#"{
      "tau": 10,
      "vertices": [{"id": "a", "capacity": 1}, {"id": "b", "capacity": 1}],
      "connections": [{"tail": "a", "head": "b", "kind": "edge", "theta": 2, "deadline": 10}],
      "paths": [["a", "b"], ["b", "a"]]
    }"#,
    )
    .unwrap()
}

/// A solver stand-in: logs its arguments next to the canned answer and
/// copies the answer to the solution path.
const FAKE: &str = r#"
import shutil, sys, os
here = os.path.dirname(os.path.abspath(__file__))
with open(os.path.join(here, "argv.txt"), "w") as f:
    f.write("\n".join(sys.argv[1:]))
shutil.copy(os.path.join(here, "answer.sol"), sys.argv[2])
"#;

fn fake_backend(dir: &TempDir, answer: &str, template_tail: &str) -> SolverBackend {
    let script = dir.path().join("fake.py");
    std::fs::write(&script, FAKE).unwrap();
    std::fs::write(dir.path().join("answer.sol"), answer).unwrap();
    SolverBackend::new(format!("python3 {} {template_tail}", script.display()), Dialect::Plain)
}

fn argv(dir: &Path) -> Vec<String> {
    std::fs::read_to_string(dir.join("argv.txt"))
        .unwrap()
        .lines()
        .map(str::to_owned)
        .collect()
}

fn answer_for(inst: &Instance, mode: MilpMode, schedule: &Temporalization) -> String {
    let model = build_milp_with(inst, mode, &MilpOptions::default());
    let values = encode_schedule(inst, &model, schedule);
    format!("status optimal\n{}", export_assignment(&model, &values))
}

#[test]
fn plain_dialect() {
    let s = parse_solution("# comment\nstatus optimal\nx 1.5\ny -2\n", Dialect::Plain).unwrap();
    assert_eq!(s.status, Status::Optimal);
    assert_eq!(s.values["x"], 1.5);
    assert_eq!(s.values["y"], -2.0);
    assert_eq!(parse_solution("status infeasible\n", Dialect::Plain).unwrap().status, Status::Infeasible);
    assert_eq!(parse_solution("status time_limit\n", Dialect::Plain).unwrap().status, Status::Other);
    assert!(parse_solution("x 1 2\n", Dialect::Plain).is_err());
}

#[test]
fn highs_dialect() {
    let text = "Model status\nOptimal\n\n# Primal solution values\nFeasible\nObjective 3\n# Columns 2\nx 1\ny 2.5\n# Rows 1\nr0 3.5\n";
    let s = parse_solution(text, Dialect::Highs).unwrap();
    assert_eq!(s.status, Status::Optimal);
    assert_eq!(s.values.len(), 2);
    assert_eq!(s.values["y"], 2.5);
    let s = parse_solution("Model status\nInfeasible\n", Dialect::Highs).unwrap();
    assert_eq!(s.status, Status::Infeasible);
    assert!(parse_solution("# Columns 2\nx 1\n", Dialect::Highs).is_err());
}

#[test]
fn decide_decodes_and_validates_a_solver_answer() {
    let inst = head_on();
    let schedule = Temporalization::new(10, vec![vec![1], vec![4]]);
    let dir = TempDir::new().unwrap();
    let backend = fake_backend(&dir, &answer_for(&inst, MilpMode::Feasibility, &schedule), "{model} {solution}");
    let outcome = decide(&inst, &backend).unwrap();
    let found = outcome.schedule().expect("feasible");
    assert!(validate(&inst, found).unwrap().is_valid());
    let args = argv(dir.path());
    assert_eq!(args.len(), 2);
    assert!(args[0].ends_with("model.lp"));
}

#[test]
fn infeasible_answers_are_reported() {
    let dir = TempDir::new().unwrap();
    let backend = fake_backend(&dir, "status infeasible\n", "{model} {solution}");
    assert!(!decide(&head_on(), &backend).unwrap().is_feasible());
    assert!(matches!(solve_milp(&head_on(), &backend), Err(BackendError::SlackInfeasible)));
}

#[test]
fn start_flag_is_dropped_or_filled() {
    let inst = head_on();
    let schedule = Temporalization::new(10, vec![vec![1], vec![4]]);
    let dir = TempDir::new().unwrap();
    let answer = answer_for(&inst, MilpMode::MinSlack, &schedule);
    // Feasibility runs never pass a start.
    let backend = fake_backend(&dir, &answer, "{model} {solution} --start {start}");
    let _ = decide(&inst, &backend);
    assert_eq!(argv(dir.path()).len(), 2);
    // Slack runs pass the colour schedule when it fits the model.
    let outcome = solve_milp(&inst, &backend).unwrap();
    assert_eq!(outcome.d_star, 0);
    let args = argv(dir.path());
    assert_eq!(args.len(), 4, "{args:?}");
    assert_eq!(args[2], "--start");
    assert!(std::fs::metadata(&args[3]).is_err(), "temp files are cleaned up");
}

#[test]
fn launch_and_exit_failures_surface() {
    let inst = head_on();
    let missing = SolverBackend::new("/nonexistent/solver {model} {solution}", Dialect::Plain);
    assert!(matches!(decide(&inst, &missing), Err(BackendError::Launch(_))));
    let failing = SolverBackend::new("false {model} {solution}", Dialect::Plain);
    assert!(matches!(decide(&inst, &failing), Err(BackendError::Failed { .. })));
    let empty = SolverBackend::new("   ", Dialect::Plain);
    assert!(matches!(decide(&inst, &empty), Err(BackendError::EmptyTemplate)));
}

#[test]
fn missing_variables_are_errors() {
    let dir = TempDir::new().unwrap();
    let backend = fake_backend(&dir, "status optimal\n", "{model} {solution}");
    assert!(matches!(decide(&head_on(), &backend), Err(BackendError::Missing(_))));
}
