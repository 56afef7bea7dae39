use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use super::*;
use crate::model::{Connection, DecayingGraph, Instance, Temporalization, Time, Vertex, VertexId};

fn ids(v: &[usize]) -> Vec<VertexId> {
    v.iter().map(|&i| VertexId(i)).collect()
}

fn line(n: usize, theta: Time, deadline: Time, cap: u32) -> DecayingGraph {
    let vs = (0..n).map(|i| Vertex::new(format!("v{i}"), cap)).collect();
    let cs = (0..n - 1)
        .map(|i| Connection::edge(VertexId(i), VertexId(i + 1), theta, deadline))
        .collect();
    DecayingGraph::new(vs, cs, deadline).unwrap()
}

#[test]
fn one_variable_per_hop() {
    let inst = Instance::new(line(4, 1, 9, 1), vec![ids(&[0, 1, 2, 3]), ids(&[3, 2]), ids(&[1, 2])]).unwrap();
    let m = build_milp(&inst, MilpMode::Feasibility);
    let hops = m
        .variables
        .iter()
        .filter(|v| matches!(v.role, VarRole::Hop { .. }))
        .count();
    assert_eq!(hops, 5);
    assert_eq!(m.count(VarKind::Integer), 6);
    assert!(m.var_index("x_P0_h2").is_some());
    assert!(m.var_index("dstar").is_some());
}

#[test]
fn single_route_has_no_disjunctions() {
    let inst = Instance::new(line(3, 1, 3, 1), vec![ids(&[0, 1, 2])]).unwrap();
    let m = build_milp(&inst, MilpMode::Feasibility);
    assert!(!m.variables.iter().any(|v| matches!(v.role, VarRole::Order { .. })));
    // One self triple per visited vertex.
    assert_eq!(m.count(VarKind::Binary), 9);
    let values = encode_schedule(&inst, &m, &Temporalization::no_wait(&inst));
    assert!(m.is_satisfied_by(&values));
    let g = m.var_index("g_v1_p0_q0").unwrap();
    assert_eq!(values[g], 1);
    // Any other choice for the self pair breaks the triple.
    let mut wrong = values.clone();
    wrong[g] = 0;
    wrong[m.var_index("a_v1_p0_q0").unwrap()] = 1;
    assert!(!m.is_satisfied_by(&wrong));
}

#[test]
fn too_tight_deadline_is_marked_infeasible() {
    let inst = Instance::new(line(3, 2, 3, 1), vec![ids(&[0, 1, 2])]).unwrap();
    let m = build_milp(&inst, MilpMode::Feasibility);
    assert!(m.constraints.iter().any(|c| c.name == "infeasible"));
    let s = build_milp(&inst, MilpMode::MinSlack);
    assert!(!s.constraints.iter().any(|c| c.name == "infeasible"));
    let values = encode_schedule(&inst, &s, &Temporalization::no_wait(&inst));
    assert!(s.is_satisfied_by(&values));
    assert_eq!(values[s.slack_var], 2);
}

#[test]
fn lp_text() {
    let inst = Instance::new(line(3, 1, 4, 1), vec![ids(&[0, 1, 2]), ids(&[2, 1])]).unwrap();
    let feas = export_lp(&build_milp(&inst, MilpMode::Feasibility));
    assert!(feas.contains("Minimize\n 0\n"));
    assert!(feas.contains("Generals\n") && feas.contains("Binaries\n") && feas.ends_with("End\n"));
    let model = build_milp(&inst, MilpMode::MinSlack);
    let text = export_lp(&model);
    assert!(text.contains("Minimize\n obj: dstar\n"));
    assert_eq!(text, export_lp(&model.clone()));
    let relaxed = export_relaxation(&model);
    assert!(!relaxed.contains("Generals") && !relaxed.contains("Binaries"));
    let empty = Instance::new(line(2, 1, 4, 1), vec![]).unwrap();
    assert!(export_lp(&build_milp(&empty, MilpMode::Feasibility)).contains("trivial: 1 dstar >= 0"));
}

#[test]
fn decode_round_trip() {
    let inst = Instance::new(line(3, 1, 6, 1), vec![ids(&[0, 1, 2]), ids(&[2, 1, 0])]).unwrap();
    let m = build_milp(&inst, MilpMode::MinSlack);
    let schedule = Temporalization::new(6, vec![vec![1, 2], vec![4, 5]]);
    let values: Vec<f64> = encode_schedule(&inst, &m, &schedule).iter().map(|&x| x as f64).collect();
    let out = decode_solution(&inst, &m, &values).unwrap();
    assert_eq!(out.d_star, 0);
    assert_eq!(out.schedule.departures, schedule.departures);
    let clash: Vec<f64> = encode_schedule(&inst, &m, &Temporalization::no_wait(&inst))
        .iter()
        .map(|&x| x as f64)
        .collect();
    assert!(matches!(decode_solution(&inst, &m, &clash), Err(DecodeError::Rejected(_))));
    assert!(matches!(decode_solution(&inst, &m, &[]), Err(DecodeError::Length { .. })));
}

#[test]
fn folding_counts_fixed_routes() {
    // The second route has deadline-tight bounds and gets folded.
    let vs = (0..3).map(|i| Vertex::new(format!("v{i}"), 1)).collect();
    let cs = vec![
        Connection::arc(VertexId(0), VertexId(1), 1, 4),
        Connection::arc(VertexId(2), VertexId(1), 1, 2),
    ];
    let g = DecayingGraph::new(vs, cs, 4).unwrap();
    let inst = Instance::new(g, vec![ids(&[0, 1]), ids(&[2, 1])]).unwrap();
    let opts = MilpOptions {
        presolve: true,
        fold_fixed_paths: true,
    };
    let m = build_milp_with(&inst, MilpMode::Feasibility, &opts);
    assert_eq!(m.fixed[1], Some(vec![1]));
    assert!(m.var_index("x_P1_h0").is_none());
    assert!(m.var_index("z_v1_p0_t2").is_some());
    let good = Temporalization::new(4, vec![vec![2], vec![1]]);
    assert!(m.is_satisfied_by(&encode_schedule(&inst, &m, &good)));
    let bad = Temporalization::new(4, vec![vec![1], vec![1]]);
    assert!(!m.is_satisfied_by(&encode_schedule(&inst, &m, &bad)));
}
