//! Construction of the scheduling program.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use super::big_m::compute_big_m;
use super::program::{Affine, Constraint, MilpModel, Objective, Sense, VarKind, VarRole};
use crate::model::{occupancy_at, Instance, Time};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MilpMode {
    /// Deadlines are hard; the slack variable is fixed to zero.
    Feasibility,
    /// Deadlines are relaxed by the slack variable, which is minimized.
    MinSlack,
}

/// Optional reformulations. The default emits the plain program.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct MilpOptions {
    /// Skip capacity rows at vertices whose capacity covers every route
    /// through them, disjunctions and overlaps already decided by the
    /// bounds, and repeated rows of fixed routes arriving together.
    pub presolve: bool,
    /// Replace routes whose bounds leave a single schedule by constants and
    /// count them with arrival-time indicators.
    pub fold_fixed_paths: bool,
}

/// Earliest and latest departure of every hop given the slack.
pub fn hop_bounds(instance: &Instance, slack: Time) -> Vec<Vec<(Time, Time)>> {
    let g = instance.graph();
    instance
        .paths()
        .iter()
        .map(|path| {
            let hops = path.hops();
            let mut lb = Vec::with_capacity(hops.len());
            let mut t = 1;
            for &c in hops {
                lb.push(t);
                t += g.connection(c).theta;
            }
            let mut ub = vec![0; hops.len()];
            let mut next = Time::MAX;
            for h in (0..hops.len()).rev() {
                let conn = g.connection(hops[h]);
                let latest = (conn.deadline + slack - conn.theta).min(next.saturating_sub(conn.theta));
                ub[h] = latest;
                next = latest;
            }
            lb.into_iter().zip(ub).collect()
        })
        .collect()
}

/// Builds the program with default options.
pub fn build_milp(instance: &Instance, mode: MilpMode) -> MilpModel {
    build_milp_with(instance, mode, &MilpOptions::default())
}

struct Builder<'a> {
    instance: &'a Instance,
    model: MilpModel,
    bounds: Vec<Vec<(Time, Time)>>,
    infeasible: bool,
}

impl Builder<'_> {
    fn x(&self, p: usize, h: usize) -> Affine {
        match self.model.hop_vars[p][h] {
            Some(v) => Affine::var(v),
            None => Affine::constant(self.model.fixed[p].as_ref().expect("folded route")[h]),
        }
    }

    fn is_fixed(&self, p: usize) -> bool {
        self.model.fixed[p].is_some()
    }

    fn theta(&self, p: usize, h: usize) -> Time {
        let g = self.instance.graph();
        g.connection(self.instance.paths()[p].hops()[h]).theta
    }

    /// Arrival expression of route `p` at its `pos`-th vertex.
    fn t_arr(&self, p: usize, pos: usize) -> Affine {
        if pos == 0 {
            self.x(p, 0)
        } else {
            self.x(p, pos - 1).plus(self.theta(p, pos - 1))
        }
    }

    /// Departure expression of route `p` at its `pos`-th vertex.
    fn t_dep(&self, p: usize, pos: usize) -> Affine {
        if pos == self.instance.paths()[p].hop_count() {
            self.t_arr(p, pos)
        } else {
            self.x(p, pos)
        }
    }

    /// Range of the arrival of route `p` at its `pos`-th vertex.
    fn arrival_range(&self, p: usize, pos: usize) -> (Time, Time) {
        if pos == 0 {
            self.bounds[p][0]
        } else {
            let (lo, hi) = self.bounds[p][pos - 1];
            let th = self.theta(p, pos - 1);
            (lo + th, hi + th)
        }
    }

    /// Range of the departure of route `p` from its `pos`-th vertex.
    fn departure_range(&self, p: usize, pos: usize) -> (Time, Time) {
        if pos == self.instance.paths()[p].hop_count() {
            self.arrival_range(p, pos)
        } else {
            self.bounds[p][pos]
        }
    }

    /// Whether `q` may be at its `pq`-th vertex when `p` arrives at its `pp`-th.
    fn may_overlap(&self, (p, pp): (usize, usize), (q, pq): (usize, usize)) -> bool {
        let (lo, hi) = self.arrival_range(p, pp);
        self.arrival_range(q, pq).0 <= hi && self.departure_range(q, pq).1 >= lo
    }

    /// Adds a row, or checks it directly when it has no variables.
    fn row(&mut self, name: String, expr: Affine, sense: Sense, rhs: i64) {
        if expr.is_constant() {
            let c = Constraint {
                name,
                terms: Vec::new(),
                sense,
                rhs: rhs - expr.constant,
            };
            if !c.holds(&[]) {
                self.infeasible = true;
            }
        } else {
            self.model.add_constraint(name, expr, sense, rhs);
        }
    }

    fn binary(&mut self, name: String, role: VarRole) -> usize {
        self.model.add_var(name, VarKind::Binary, 0, 1, role)
    }

    /// `|a - b| >= k` through one order binary.
    fn disjunction(&mut self, (p, hp): (usize, usize), (q, hq): (usize, usize), k: Time, presolve: bool) {
        let a = self.x(p, hp);
        let b = self.x(q, hq);
        if a.is_constant() && b.is_constant() {
            if (a.constant - b.constant).abs() < k {
                self.infeasible = true;
            }
            return;
        }
        let (alo, ahi) = self.bounds[p][hp];
        let (blo, bhi) = self.bounds[q][hq];
        if presolve && (ahi + k <= blo || bhi + k <= alo) {
            return;
        }
        let m = self.model.effective_m;
        let o = self.binary(format!("o_p{p}_h{hp}_q{q}_h{hq}"), VarRole::Order { p, hp, q, hq });
        let diff = a.clone().add_scaled(&b, -1);
        self.row(
            format!("ord1_p{p}_h{hp}_q{q}_h{hq}"),
            diff.clone().with_term(o, m),
            Sense::Ge,
            k,
        );
        self.row(
            format!("ord2_p{p}_h{hp}_q{q}_h{hq}"),
            Affine::default().add_scaled(&diff, -1).with_term(o, -m),
            Sense::Ge,
            k - m,
        );
    }

    /// Indicator triple telling whether route `q` is at `v` when `p` arrives.
    /// Returns the gamma variable.
    fn overlap(&mut self, v: usize, (p, pp): (usize, usize), (q, pq): (usize, usize)) -> usize {
        let m = self.model.effective_m;
        let alpha = self.binary(format!("a_v{v}_p{p}_q{q}"), VarRole::Alpha { vertex: v, p, q });
        let beta = self.binary(format!("b_v{v}_p{p}_q{q}"), VarRole::Beta { vertex: v, p, q });
        let gamma = self.binary(format!("g_v{v}_p{p}_q{q}"), VarRole::Gamma { vertex: v, p, q });
        let arr_p = self.t_arr(p, pp);
        let before = arr_p.clone().add_scaled(&self.t_arr(q, pq), -1).with_term(alpha, m);
        self.row(format!("alpha_v{v}_p{p}_q{q}"), before, Sense::Le, m - 1);
        let after = arr_p.add_scaled(&self.t_dep(q, pq), -1).with_term(beta, -m);
        self.row(format!("beta_v{v}_p{p}_q{q}"), after, Sense::Ge, 1 - m);
        let one = Affine::var(alpha).with_term(beta, 1).with_term(gamma, 1);
        self.row(format!("one_v{v}_p{p}_q{q}"), one, Sense::Eq, 1);
        gamma
    }
}

/// Builds the program. Departure variables get the bounds implied by
/// adequacy and the deadlines; in slack mode times may run up to the
/// lifetime plus the slack bound of the instance.
pub fn build_milp_with(instance: &Instance, mode: MilpMode, options: &MilpOptions) -> MilpModel {
    let g = instance.graph();
    let paths = instance.paths();
    let slack_upper = match mode {
        MilpMode::Feasibility => 0,
        MilpMode::MinSlack => instance.slack_upper_bound(),
    };
    let horizon = instance.tau() + slack_upper;
    let max_gap = g.connections().iter().map(|c| c.head_on_gap()).max().unwrap_or(1);
    let big_m = compute_big_m(instance);
    let effective_m = (big_m + slack_upper).max(horizon + max_gap);

    let mut infeasible = false;
    let mut bounds = hop_bounds(instance, slack_upper);
    for route in &mut bounds {
        for b in route.iter_mut() {
            if b.0 > b.1 {
                infeasible = true;
                b.1 = b.0;
            }
        }
    }

    let mut model = MilpModel {
        variables: Vec::new(),
        constraints: Vec::new(),
        objective: match mode {
            MilpMode::Feasibility => Objective::Feasibility,
            MilpMode::MinSlack => Objective::MinimizeSlack,
        },
        big_m,
        effective_m,
        slack_upper,
        hop_vars: Vec::with_capacity(paths.len()),
        fixed: Vec::with_capacity(paths.len()),
        slack_var: 0,
    };
    model.slack_var = model.add_var(String::from("dstar"), VarKind::Integer, 0, slack_upper, VarRole::Slack);
    for (p, route) in bounds.iter().enumerate() {
        if options.fold_fixed_paths && route.iter().all(|&(lo, hi)| lo == hi) {
            model.fixed.push(Some(route.iter().map(|&(lo, _)| lo).collect()));
            model.hop_vars.push(vec![None; route.len()]);
        } else {
            model.fixed.push(None);
            let vars = route
                .iter()
                .enumerate()
                .map(|(h, &(lo, hi))| {
                    Some(model.add_var(
                        format!("x_P{p}_h{h}"),
                        VarKind::Integer,
                        lo,
                        hi,
                        VarRole::Hop { path: p, hop: h },
                    ))
                })
                .collect();
            model.hop_vars.push(vars);
        }
    }

    let mut b = Builder {
        instance,
        model,
        bounds,
        infeasible,
    };
    let dstar = b.model.slack_var;

    // Adequacy and deadlines.
    for (p, path) in paths.iter().enumerate() {
        if b.is_fixed(p) {
            continue;
        }
        for h in 0..path.hop_count() {
            let conn = g.connection(path.hops()[h]);
            if h + 1 < path.hop_count() {
                let expr = b.x(p, h).add_scaled(&b.x(p, h + 1), -1);
                b.row(format!("adq_p{p}_h{h}"), expr, Sense::Le, -conn.theta);
            }
            let expr = b.x(p, h).with_term(dstar, -1);
            b.row(format!("dl_p{p}_h{h}"), expr, Sense::Le, conn.deadline - conn.theta);
        }
    }

    // Temporal disjointness on connections.
    let mut users: Vec<Vec<(usize, usize, bool)>> = vec![Vec::new(); g.connections().len()];
    for (p, path) in paths.iter().enumerate() {
        for (h, &c) in path.hops().iter().enumerate() {
            users[c.0].push((p, h, path.hop_is_forward(g, h)));
        }
    }
    for (c, list) in users.iter().enumerate() {
        let conn = g.connection(crate::model::ConnectionId(c));
        for (i, &(p, hp, fp)) in list.iter().enumerate() {
            for &(q, hq, fq) in &list[i + 1..] {
                let k = if fp == fq {
                    1
                } else if conn.is_edge() {
                    conn.head_on_gap()
                } else {
                    continue;
                };
                b.disjunction((p, hp), (q, hq), k, options.presolve);
            }
        }
    }

    // Vertex capacities.
    for v in 0..g.vertex_count() {
        let at: Vec<(usize, usize)> = instance
            .paths_at(crate::model::VertexId(v))
            .iter()
            .map(|&p| (p.0, paths[p.0].position(crate::model::VertexId(v)).expect("route visits vertex")))
            .collect();
        let cap = g.vertices()[v].capacity as i64;
        if at.is_empty() || (options.presolve && cap >= at.len() as i64) {
            continue;
        }
        let fixed_occ: Vec<_> = at
            .iter()
            .filter(|&&(q, _)| b.is_fixed(q))
            .map(|&(q, pos)| occupancy_at(g, &paths[q], b.model.fixed[q].as_ref().expect("folded route"), pos))
            .collect();
        let fixed_load = |t: Time| fixed_occ.iter().filter(|iv| iv.contains(t)).count() as i64;
        // Fixed routes arriving at the same time share one row.
        let mut fixed_arrivals = BTreeSet::new();
        for &(p, pp) in &at {
            if options.presolve && b.is_fixed(p) && !fixed_arrivals.insert(b.t_arr(p, pp).constant) {
                continue;
            }
            let mut sum = Affine::default();
            let mut rhs = cap;
            for &(q, pq) in &at {
                if b.is_fixed(q) {
                    continue;
                }
                if options.presolve && q == p {
                    rhs -= 1;
                    continue;
                }
                if options.presolve && !b.may_overlap((p, pp), (q, pq)) {
                    continue;
                }
                let gamma = b.overlap(v, (p, pp), (q, pq));
                sum.add_term(gamma, 1);
            }
            if b.is_fixed(p) {
                let a = b.t_arr(p, pp).constant;
                rhs -= fixed_load(a);
            } else if !fixed_occ.is_empty() {
                let (lo, hi) = b.arrival_range(p, pp);
                let mut pick = Affine::default();
                let mut tie = Affine::default().add_scaled(&b.t_arr(p, pp), -1);
                for t in lo..=hi {
                    let z = b.binary(format!("z_v{v}_p{p}_t{t}"), VarRole::ArrivalAt { vertex: v, p, time: t });
                    pick.add_term(z, 1);
                    tie.add_term(z, t);
                    sum.add_term(z, fixed_load(t));
                }
                b.row(format!("pick_v{v}_p{p}"), pick, Sense::Eq, 1);
                // `tie` is sum(t * z) minus the arrival expression.
                b.row(format!("tie_v{v}_p{p}"), tie, Sense::Eq, 0);
            }
            b.row(format!("cap_v{v}_p{p}"), sum, Sense::Le, rhs);
        }
    }

    if b.infeasible {
        b.model.constraints.push(Constraint {
            name: String::from("infeasible"),
            terms: vec![(dstar, 0)],
            sense: Sense::Ge,
            rhs: 1,
        });
    }
    b.model
}
