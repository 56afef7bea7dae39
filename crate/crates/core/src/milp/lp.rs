//! LP-format text export.

use alloc::string::String;
use core::fmt::Write;

use super::program::{MilpModel, Objective, VarKind};

/// Terms per line before wrapping.
const TERMS_PER_LINE: usize = 10;

fn write_terms(out: &mut String, model: &MilpModel, terms: &[(usize, i64)]) {
    for (i, &(v, c)) in terms.iter().enumerate() {
        if i > 0 && i % TERMS_PER_LINE == 0 {
            out.push_str("\n  ");
        }
        let name = &model.variables[v].name;
        match (i, c < 0) {
            (0, false) => write!(out, " {c} {name}"),
            (0, true) => write!(out, " -{} {name}", -c),
            (_, false) => write!(out, " + {c} {name}"),
            (_, true) => write!(out, " - {} {name}", -c),
        }
        .expect("writing to a string");
    }
}

fn export(model: &MilpModel, integral: bool) -> String {
    let mut out = String::new();
    out.push_str("\\ smooth routing schedule\n");
    match model.objective {
        Objective::Feasibility => out.push_str("Minimize\n 0\n"),
        Objective::MinimizeSlack => {
            let name = &model.variables[model.slack_var].name;
            writeln!(out, "Minimize\n obj: {name}").expect("writing to a string");
        }
    }
    out.push_str("Subject To\n");
    if model.constraints.is_empty() {
        let name = &model.variables[model.slack_var].name;
        writeln!(out, " trivial: 1 {name} >= 0").expect("writing to a string");
    }
    for c in &model.constraints {
        write!(out, " {}:", c.name).expect("writing to a string");
        if c.terms.is_empty() {
            let name = &model.variables[model.slack_var].name;
            write!(out, " 0 {name}").expect("writing to a string");
        }
        write_terms(&mut out, model, &c.terms);
        writeln!(out, " {} {}", c.sense.symbol(), c.rhs).expect("writing to a string");
    }
    out.push_str("Bounds\n");
    for v in &model.variables {
        writeln!(out, " {} <= {} <= {}", v.lower, v.name, v.upper).expect("writing to a string");
    }
    if integral {
        for (kind, header) in [(VarKind::Integer, "Generals"), (VarKind::Binary, "Binaries")] {
            let names: alloc::vec::Vec<&str> = model
                .variables
                .iter()
                .filter(|v| v.kind == kind)
                .map(|v| v.name.as_str())
                .collect();
            if names.is_empty() {
                continue;
            }
            writeln!(out, "{header}").expect("writing to a string");
            for chunk in names.chunks(TERMS_PER_LINE) {
                writeln!(out, " {}", chunk.join(" ")).expect("writing to a string");
            }
        }
    }
    out.push_str("End\n");
    out
}

/// The model in LP format.
pub fn export_lp(model: &MilpModel) -> String {
    export(model, true)
}

/// The model in LP format with all integrality requirements dropped.
pub fn export_relaxation(model: &MilpModel) -> String {
    export(model, false)
}

/// `name value` lines of an assignment, one per variable.
pub fn export_assignment(model: &MilpModel, values: &[i64]) -> String {
    let mut out = String::new();
    for (v, x) in model.variables.iter().zip(values) {
        writeln!(out, "{} {}", v.name, x).expect("writing to a string");
    }
    out
}
