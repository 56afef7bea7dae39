//! Reading schedules out of solutions and writing schedules into them.

use alloc::string::String;
use alloc::vec::Vec;

use thiserror::Error;

use super::program::{MilpModel, VarRole};
use crate::exact::OptimizeOutcome;
use crate::model::{occupancy_at, Instance, Temporalization, Time};
use crate::validate::{validate_with_slack, Diagnosis};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum DecodeError {
    #[error("solution has {found} values, model has {expected} variables")]
    Length { expected: usize, found: usize },
    #[error("value {value} of {name} is not finite")]
    NotFinite { name: String, value: f64 },
    #[error("decoded schedule is invalid ({} violations)", .0.violations.len())]
    Rejected(Diagnosis),
}

/// Largest amount by which `departures` miss a deadline, at least zero.
pub fn lateness(instance: &Instance, departures: &[Vec<Time>]) -> Time {
    let g = instance.graph();
    let mut worst = 0;
    for (path, deps) in instance.paths().iter().zip(departures) {
        for (&c, &x) in path.hops().iter().zip(deps) {
            let conn = g.connection(c);
            worst = worst.max(x + conn.theta - conn.deadline);
        }
    }
    worst
}

/// Rounds the hop variables of a solution into a schedule, derives the slack
/// it needs and validates the schedule under that slack.
pub fn decode_solution(instance: &Instance, model: &MilpModel, values: &[f64]) -> Result<OptimizeOutcome, DecodeError> {
    if values.len() != model.variables.len() {
        return Err(DecodeError::Length {
            expected: model.variables.len(),
            found: values.len(),
        });
    }
    let mut departures = Vec::with_capacity(model.hop_vars.len());
    for (vars, fixed) in model.hop_vars.iter().zip(&model.fixed) {
        let route = match fixed {
            Some(times) => times.clone(),
            None => vars
                .iter()
                .map(|v| {
                    let v = v.expect("free route has variables");
                    let value = values[v];
                    if value.is_finite() {
                        Ok(libm::round(value) as Time)
                    } else {
                        Err(DecodeError::NotFinite {
                            name: model.variables[v].name.clone(),
                            value,
                        })
                    }
                })
                .collect::<Result<Vec<_>, _>>()?,
        };
        departures.push(route);
    }
    let d_star = lateness(instance, &departures);
    let schedule = Temporalization::new(instance.tau() + d_star, departures);
    let diagnosis = validate_with_slack(instance, &schedule, d_star).expect("schedule shape follows the model");
    if diagnosis.is_valid() {
        Ok(OptimizeOutcome { d_star, schedule })
    } else {
        Err(DecodeError::Rejected(diagnosis))
    }
}

/// The assignment a schedule induces on every variable of the model. For a
/// valid schedule whose lateness fits the slack bound this satisfies the
/// model; it also serves as a warm start.
pub fn encode_schedule(instance: &Instance, model: &MilpModel, schedule: &Temporalization) -> Vec<i64> {
    let g = instance.graph();
    let paths = instance.paths();
    let deps = &schedule.departures;
    let d_star = lateness(instance, deps);
    let pos = |p: usize, v: usize| {
        paths[p]
            .position(crate::model::VertexId(v))
            .expect("route visits vertex")
    };
    let occ = |p: usize, v: usize| occupancy_at(g, &paths[p], &deps[p], pos(p, v));
    model
        .variables
        .iter()
        .map(|var| match var.role {
            VarRole::Hop { path, hop } => deps[path][hop],
            VarRole::Slack => d_star,
            VarRole::Alpha { vertex, p, q } => (occ(p, vertex).lo < occ(q, vertex).lo) as i64,
            VarRole::Beta { vertex, p, q } => (occ(p, vertex).lo > occ(q, vertex).hi) as i64,
            VarRole::Gamma { vertex, p, q } => occ(q, vertex).contains(occ(p, vertex).lo) as i64,
            VarRole::Order { p, hp, q, hq } => (deps[p][hp] < deps[q][hq]) as i64,
            VarRole::ArrivalAt { vertex, p, time } => (occ(p, vertex).lo == time) as i64,
        })
        .collect()
}
