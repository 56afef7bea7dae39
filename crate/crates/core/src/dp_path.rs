//! Left-to-right dynamic program for decaying paths.
//!
//! Vertices are processed along the path. The state at position `i` records
//! when every rightward route crossing into `v_i` arrives there and when every
//! leftward route crossing out of `v_i` departs from it. A state at `i + 1` is
//! reachable when some reachable state at `i` is compatible with it on the
//! connection between `v_i` and `v_{i+1}` and on the capacity of `v_i`.

use alloc::vec;
use alloc::vec::Vec;

use hashbrown::HashSet;

use crate::exact::{SolveError, SolveOutcome};
use crate::interval::max_simultaneous;
use crate::model::{Instance, Interval, PathId, Shape, Temporalization, Time, VertexId};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DpOptions {
    /// Maximum number of states stored at one position.
    pub state_limit: usize,
}

impl Default for DpOptions {
    fn default() -> Self {
        DpOptions {
            state_limit: 4_000_000,
        }
    }
}

/// Sizes of the table built by one run.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct DpStats {
    pub states_per_index: Vec<usize>,
}

/// Which routes cross into position `i` from the left.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Restriction {
    /// Every route with at least two vertices among `v_1..=v_i`, cut to them.
    pub paths: Vec<(PathId, Vec<VertexId>)>,
    /// Rightward routes arriving at `v_i`.
    pub arriving: Vec<PathId>,
    /// Leftward routes departing from `v_i`.
    pub departing: Vec<PathId>,
}

/// A table entry: arrival times of the arriving routes and departure times
/// of the departing routes, in the order of [`Restriction`].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FrontierState {
    pub index: usize,
    pub rho: Vec<Time>,
    pub lambda: Vec<Time>,
}

#[derive(Debug, Clone, Copy)]
struct Route {
    /// Positions of source and sink along the graph.
    from: usize,
    to: usize,
}

impl Route {
    fn rightward(&self) -> bool {
        self.from < self.to
    }
}

#[derive(Debug, Clone, Copy)]
struct Link {
    theta_right: Time,
    deadline_right: Time,
    theta_left: Time,
    deadline_left: Time,
    edge: bool,
}

/// Precomputed layer data for one instance and slack.
pub struct PathDp<'a> {
    instance: &'a Instance,
    order: Vec<VertexId>,
    routes: Vec<Route>,
    links: Vec<Link>,
    /// `R_i` and `L_i` per position, ascending path ids.
    right: Vec<Vec<usize>>,
    left: Vec<Vec<usize>>,
    slack: Time,
    horizon: Time,
}

impl<'a> PathDp<'a> {
    pub fn new(instance: &'a Instance, slack: Time) -> Result<Self, SolveError> {
        let g = instance.graph();
        let found = g.shape();
        let order = match g.path_order() {
            Some(order) => order,
            None => {
                return Err(SolveError::ShapeMismatch {
                    expected: Shape::Path,
                    found,
                })
            }
        };
        let n = order.len();
        let mut pos = vec![0; n];
        for (i, v) in order.iter().enumerate() {
            pos[v.0] = i;
        }
        let routes: Vec<Route> = instance
            .paths()
            .iter()
            .map(|p| Route {
                from: pos[p.source().0],
                to: pos[p.sink().0],
            })
            .collect();
        let missing = Time::MIN / 4;
        let links = (0..n.saturating_sub(1))
            .map(|i| {
                let (a, b) = (order[i], order[i + 1]);
                let r = g.hop(a, b).map(|c| g.connection(c));
                let l = g.hop(b, a).map(|c| g.connection(c));
                Link {
                    theta_right: r.map_or(0, |c| c.theta),
                    deadline_right: r.map_or(missing, |c| c.deadline),
                    theta_left: l.map_or(0, |c| c.theta),
                    deadline_left: l.map_or(missing, |c| c.deadline),
                    edge: r.is_some_and(|c| c.is_edge()),
                }
            })
            .collect();
        let mut right = vec![Vec::new(); n];
        let mut left = vec![Vec::new(); n];
        for (p, r) in routes.iter().enumerate() {
            if r.rightward() {
                for layer in &mut right[r.from + 1..=r.to] {
                    layer.push(p);
                }
            } else {
                for layer in &mut left[r.to + 1..=r.from] {
                    layer.push(p);
                }
            }
        }
        Ok(PathDp {
            instance,
            order,
            routes,
            links,
            right,
            left,
            slack,
            horizon: instance.tau() + slack,
        })
    }

    /// Vertices from left to right.
    pub fn order(&self) -> &[VertexId] {
        &self.order
    }

    /// Route restriction to the first `i + 1` vertices (positions are
    /// zero-based).
    pub fn restrict(&self, i: usize) -> Restriction {
        let paths = self
            .instance
            .paths()
            .iter()
            .enumerate()
            .filter_map(|(p, path)| {
                let kept: Vec<VertexId> = path
                    .vertices()
                    .iter()
                    .copied()
                    .filter(|v| self.position(*v) <= i)
                    .collect();
                (kept.len() >= 2).then_some((PathId(p), kept))
            })
            .collect();
        Restriction {
            paths,
            arriving: self.right[i].iter().map(|&p| PathId(p)).collect(),
            departing: self.left[i].iter().map(|&p| PathId(p)).collect(),
        }
    }

    fn position(&self, v: VertexId) -> usize {
        self.order.iter().position(|&w| w == v).unwrap()
    }

    /// Whether `to` (at position `i + 1`) extends `from` (at position `i`).
    pub fn transition_ok(&self, from: &FrontierState, to: &FrontierState) -> bool {
        let i = from.index;
        if to.index != i + 1
            || from.rho.len() != self.right[i].len()
            || from.lambda.len() != self.left[i].len()
            || to.rho.len() != self.right[i + 1].len()
            || to.lambda.len() != self.left[i + 1].len()
        {
            return false;
        }
        let step = Step::new(self, i, &from.rho, &from.lambda);
        let mut values = Vec::with_capacity(step.vars());
        for (k, &t) in to.rho.iter().chain(&to.lambda).enumerate() {
            if t < step.lo(k) || t > step.hi(k) || !step.compatible(k, t, &values) {
                return false;
            }
            values.push(t);
        }
        step.capacity_ok(&values)
    }

    /// Runs the table fill, returning the verdict and table sizes.
    pub fn solve(&self, options: &DpOptions) -> Result<(SolveOutcome, DpStats), SolveError> {
        let mut stats = DpStats::default();
        let n = self.order.len();
        if self.instance.paths().is_empty() || n < 2 {
            let empty = Temporalization::new(self.horizon, vec![Vec::new(); self.instance.paths().len()]);
            return Ok((SolveOutcome::Feasible(empty), stats));
        }
        if self.instance.vertex_load().max as Time > 4 * self.horizon {
            return Ok((SolveOutcome::Infeasible, stats));
        }

        // Each layer: concatenated (rho, lambda) keys and predecessor indices.
        let mut layers: Vec<(Vec<Vec<Time>>, Vec<usize>)> = vec![(vec![Vec::new()], vec![0])];
        stats.states_per_index.push(1);
        for i in 0..n - 1 {
            let (prev_keys, _) = &layers[i];
            let split = self.right[i].len();
            let mut seen: HashSet<Vec<Time>> = HashSet::new();
            let mut keys = Vec::new();
            let mut preds = Vec::new();
            for (pi, key) in prev_keys.iter().enumerate() {
                let step = Step::new(self, i, &key[..split], &key[split..]);
                let mut values = Vec::with_capacity(step.vars());
                let mut overflow = false;
                step.enumerate(&mut values, &mut |vals: &[Time]| {
                    if seen.contains(vals) {
                        return;
                    }
                    if keys.len() >= options.state_limit {
                        overflow = true;
                        return;
                    }
                    seen.insert(vals.to_vec());
                    keys.push(vals.to_vec());
                    preds.push(pi);
                });
                if overflow {
                    return Err(SolveError::StateLimit {
                        index: i + 1,
                        limit: options.state_limit,
                    });
                }
            }
            stats.states_per_index.push(keys.len());
            if keys.is_empty() {
                return Ok((SolveOutcome::Infeasible, stats));
            }
            layers.push((keys, preds));
        }

        // The last vertex is only checked here.
        let last = n - 1;
        let cap = self.instance.graph().capacity(self.order[last]) as usize;
        let (keys, _) = &layers[last];
        let accepted = keys.iter().position(|key| {
            let ivs: Vec<Interval> = key.iter().map(|&t| Interval::point(t)).collect();
            max_simultaneous(&ivs) <= cap
        });
        let Some(mut state) = accepted else {
            return Ok((SolveOutcome::Infeasible, stats));
        };

        let mut departures: Vec<Vec<Time>> = self
            .instance
            .paths()
            .iter()
            .map(|p| vec![0; p.hop_count()])
            .collect();
        for i in (1..n).rev() {
            let (keys, preds) = &layers[i];
            let key = &keys[state];
            let link = self.links[i - 1];
            let split = self.right[i].len();
            for (k, &p) in self.right[i].iter().enumerate() {
                let hop = i - 1 - self.routes[p].from;
                departures[p][hop] = key[k] - link.theta_right;
            }
            for (k, &p) in self.left[i].iter().enumerate() {
                let hop = self.routes[p].from - i;
                departures[p][hop] = key[split + k];
            }
            state = preds[state];
        }
        let schedule = Temporalization::new(self.horizon, departures);
        debug_assert!(crate::validate::validate_with_slack(self.instance, &schedule, self.slack)
            .map(|d| d.is_valid())
            .unwrap_or(false));
        Ok((SolveOutcome::Feasible(schedule), stats))
    }
}

/// One transition from position `i` to `i + 1` with the state at `i` fixed.
struct Step<'s, 'a> {
    dp: &'s PathDp<'a>,
    i: usize,
    link: Link,
    rho_prev: &'s [Time],
    lambda_prev: &'s [Time],
    /// For every new variable, the index of the same route in the previous
    /// state, if present.
    prev_slot: Vec<Option<usize>>,
    n_right: usize,
    cap_here: usize,
    cap_next_is_one: bool,
}

impl<'s, 'a> Step<'s, 'a> {
    fn new(dp: &'s PathDp<'a>, i: usize, rho_prev: &'s [Time], lambda_prev: &'s [Time]) -> Self {
        let right_next = &dp.right[i + 1];
        let left_next = &dp.left[i + 1];
        let mut prev_slot = Vec::with_capacity(right_next.len() + left_next.len());
        for p in right_next {
            prev_slot.push(dp.right[i].binary_search(p).ok());
        }
        for p in left_next {
            prev_slot.push(dp.left[i].binary_search(p).ok());
        }
        let g = dp.instance.graph();
        Step {
            dp,
            i,
            link: dp.links[i],
            rho_prev,
            lambda_prev,
            prev_slot,
            n_right: right_next.len(),
            cap_here: g.capacity(dp.order[i]) as usize,
            cap_next_is_one: g.capacity(dp.order[i + 1]) == 1,
        }
    }

    fn vars(&self) -> usize {
        self.prev_slot.len()
    }

    fn lo(&self, k: usize) -> Time {
        if k < self.n_right {
            // Departure from v_i is at least 1 and at least the arrival there.
            let ready = self.prev_slot[k].map_or(1, |s| self.rho_prev[s]).max(1);
            ready + self.link.theta_right
        } else {
            1
        }
    }

    fn hi(&self, k: usize) -> Time {
        let slack = self.dp.slack;
        let horizon = self.dp.horizon;
        if k < self.n_right {
            (self.link.deadline_right + slack).min(horizon)
        } else {
            let by_deadline = self.link.deadline_left + slack - self.link.theta_left;
            let by_next = self.prev_slot[k].map_or(Time::MAX, |s| self.lambda_prev[s] - self.link.theta_left);
            by_deadline.min(by_next).min(horizon)
        }
    }

    /// Pairwise conditions between variable `k` at value `t` and the values
    /// already chosen for variables `0..k`.
    fn compatible(&self, k: usize, t: Time, values: &[Time]) -> bool {
        let link = self.link;
        if k < self.n_right {
            values.iter().all(|&u| u != t)
        } else {
            let (rho, lambda) = values.split_at(self.n_right);
            if lambda.iter().any(|&u| u == t) {
                return false;
            }
            if link.edge {
                let gap = link.theta_right.max(1);
                if rho.iter().any(|&r| (r - link.theta_right - t).abs() < gap) {
                    return false;
                }
            }
            if self.cap_next_is_one && rho.iter().any(|&r| r == t) {
                return false;
            }
            true
        }
    }

    /// Capacity of `v_i` given a complete assignment of the new variables.
    fn capacity_ok(&self, values: &[Time]) -> bool {
        let dp = self.dp;
        let i = self.i;
        let link = self.link;
        let mut ivs: Vec<Interval> = Vec::new();
        let (rho, lambda) = values.split_at(self.n_right);
        for (k, &r) in rho.iter().enumerate() {
            let dep = r - link.theta_right;
            let lo = self.prev_slot[k].map_or(dep, |s| self.rho_prev[s]);
            ivs.push(Interval::new(lo, dep));
        }
        for (k, &l) in lambda.iter().enumerate() {
            let arr = l + link.theta_left;
            let hi = self.prev_slot[self.n_right + k].map_or(arr, |s| self.lambda_prev[s]);
            ivs.push(Interval::new(arr, hi));
        }
        // Routes ending at v_i from the left, and routes leaving v_i leftward
        // that start there.
        for (s, p) in dp.right[i].iter().enumerate() {
            if dp.routes[*p].to == i {
                ivs.push(Interval::point(self.rho_prev[s]));
            }
        }
        for (s, p) in dp.left[i].iter().enumerate() {
            if dp.routes[*p].from == i {
                ivs.push(Interval::point(self.lambda_prev[s]));
            }
        }
        ivs.len() <= self.cap_here || max_simultaneous(&ivs) <= self.cap_here
    }

    fn enumerate(&self, values: &mut Vec<Time>, emit: &mut impl FnMut(&[Time])) {
        let k = values.len();
        if k == self.vars() {
            if self.capacity_ok(values) {
                emit(values);
            }
            return;
        }
        for t in self.lo(k)..=self.hi(k) {
            if self.compatible(k, t, values) {
                values.push(t);
                self.enumerate(values, emit);
                values.pop();
            }
        }
    }
}

/// Decides feasibility on a decaying path.
pub fn solve_path_dp(instance: &Instance) -> Result<SolveOutcome, SolveError> {
    solve_path_dp_with(instance, 0, &DpOptions::default()).map(|(o, _)| o)
}

/// Decides feasibility with every deadline raised by `slack`.
pub fn solve_path_dp_with(
    instance: &Instance,
    slack: Time,
    options: &DpOptions,
) -> Result<(SolveOutcome, DpStats), SolveError> {
    PathDp::new(instance, slack)?.solve(options)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{Connection, DecayingGraph, Vertex};
    use crate::validate::validate;

    fn line(n: usize, theta: Time, deadline: Time, cap: u32) -> DecayingGraph {
        let vs = (0..n).map(|i| Vertex::new(alloc::format!("v{}", i + 1), cap)).collect();
        let cs = (0..n - 1)
            .map(|i| Connection::edge(VertexId(i), VertexId(i + 1), theta, deadline))
            .collect();
        DecayingGraph::new(vs, cs, deadline).unwrap()
    }

    fn ids(v: &[usize]) -> Vec<VertexId> {
        v.iter().map(|&i| VertexId(i)).collect()
    }

    #[test]
    fn restriction_rule() {
        let inst = Instance::new(line(5, 0, 5, 2), vec![ids(&[1, 2, 3]), ids(&[3, 2]), ids(&[0, 1])]).unwrap();
        let dp = PathDp::new(&inst, 0).unwrap();
        let r = dp.restrict(2);
        assert!(r.arriving.contains(&PathId(0)));
        assert_eq!(r.paths[0], (PathId(0), ids(&[1, 2])));
        assert!(!r.paths.iter().any(|(p, _)| *p == PathId(1)));
        assert!(dp.restrict(3).departing.contains(&PathId(1)));
        let first = dp.restrict(0);
        assert!(first.arriving.is_empty() && first.departing.is_empty() && first.paths.is_empty());
    }

    #[test]
    fn transition_conditions() {
        let g = DecayingGraph::new(
            (0..3).map(|i| Vertex::new(alloc::format!("v{i}"), 2)).collect(),
            vec![
                Connection::arc(VertexId(0), VertexId(1), 0, 9),
                Connection::arc(VertexId(1), VertexId(2), 2, 9),
            ],
            9,
        )
        .unwrap();
        let inst = Instance::new(g, vec![ids(&[0, 1, 2]), ids(&[1, 2])]).unwrap();
        let dp = PathDp::new(&inst, 0).unwrap();
        let at1 = FrontierState { index: 1, rho: vec![3], lambda: vec![] };
        let bad = FrontierState { index: 2, rho: vec![4, 6], lambda: vec![] };
        assert!(!dp.transition_ok(&at1, &bad));
        let good = FrontierState { index: 2, rho: vec![5, 6], lambda: vec![] };
        assert!(dp.transition_ok(&at1, &good));
        let equal = FrontierState { index: 2, rho: vec![6, 6], lambda: vec![] };
        assert!(!dp.transition_ok(&at1, &equal));

        let empty = Instance::new(line(3, 0, 3, 1), vec![]).unwrap();
        let dp = PathDp::new(&empty, 0).unwrap();
        let a = FrontierState { index: 0, rho: vec![], lambda: vec![] };
        let b = FrontierState { index: 1, rho: vec![], lambda: vec![] };
        assert!(dp.transition_ok(&a, &b));
    }

    #[test]
    fn solves_small_cases() {
        let inst = Instance::new(line(2, 0, 1, 2), vec![ids(&[0, 1]), ids(&[0, 1])]).unwrap();
        assert_eq!(solve_path_dp(&inst).unwrap(), SolveOutcome::Infeasible);
        let inst = Instance::new(line(3, 1, 4, 1), vec![ids(&[0, 1, 2]), ids(&[2, 1, 0])]).unwrap();
        let out = solve_path_dp(&inst).unwrap();
        if let SolveOutcome::Feasible(s) = &out {
            assert!(validate(&inst, s).unwrap().is_valid());
        }
        let none = Instance::new(line(3, 1, 4, 1), vec![]).unwrap();
        assert!(solve_path_dp(&none).unwrap().is_feasible());
    }

    #[test]
    fn end_vertex_capacity() {
        let graph = |cap: u32| {
            DecayingGraph::new(
                vec![Vertex::new("a", 2), Vertex::new("b", 2), Vertex::new("c", cap)],
                vec![
                    Connection::edge(VertexId(0), VertexId(1), 0, 1),
                    Connection::arc(VertexId(1), VertexId(2), 0, 1),
                    Connection::arc(VertexId(2), VertexId(1), 0, 1),
                ],
                1,
            )
            .unwrap()
        };
        // One route reaches `c` at step 1 while another leaves it.
        let routes = vec![ids(&[1, 2]), ids(&[2, 1])];
        let inst = Instance::new(graph(2), routes.clone()).unwrap();
        assert!(solve_path_dp(&inst).unwrap().is_feasible());
        let inst = Instance::new(graph(1), routes).unwrap();
        assert_eq!(solve_path_dp(&inst).unwrap(), SolveOutcome::Infeasible);
    }

    #[test]
    fn rejects_non_paths() {
        let g = DecayingGraph::new(
            (0..4).map(|i| Vertex::new(alloc::format!("v{i}"), 1)).collect(),
            (1..4).map(|i| Connection::edge(VertexId(0), VertexId(i), 0, 1)).collect(),
            1,
        )
        .unwrap();
        let inst = Instance::new(g, vec![]).unwrap();
        assert!(matches!(solve_path_dp(&inst), Err(SolveError::ShapeMismatch { .. })));
    }
}
