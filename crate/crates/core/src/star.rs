//! Enumeration solver for decaying stars.
//!
//! Every route touches the center and has at most two hops, so a route is
//! fully described by one or two departure times. Routes are assigned one at
//! a time and every partial assignment is checked for clashes and capacity.

use alloc::vec;
use alloc::vec::Vec;

use crate::exact::{SolveError, SolveOutcome};
use crate::model::{Instance, PathId, Shape, Temporalization, Time, VertexId};

/// Work done by one run.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct StarStats {
    /// Partial and complete tuples looked at.
    pub nodes: u64,
    /// Complete time tuples looked at.
    pub complete: u64,
    /// Whether the capacity-times-deadline bound settled the instance.
    pub short_circuit: bool,
}

/// Decides feasibility on a decaying star.
pub fn solve_star(instance: &Instance) -> Result<SolveOutcome, SolveError> {
    solve_star_with(instance, 0).map(|(o, _)| o)
}

/// Decides feasibility with every deadline raised by `slack`.
pub fn solve_star_with(instance: &Instance, slack: Time) -> Result<(SolveOutcome, StarStats), SolveError> {
    let g = instance.graph();
    let center = g.star_center().ok_or(SolveError::ShapeMismatch {
        expected: Shape::Star,
        found: g.shape(),
    })?;
    for (p, path) in instance.paths().iter().enumerate() {
        if path.position(center).is_none() {
            return Err(SolveError::NotThroughCenter(PathId(p)));
        }
    }
    let mut stats = StarStats::default();
    let horizon = instance.tau() + slack;
    let max_deadline = g.connections().iter().map(|c| c.deadline).max().unwrap_or(0) + slack;
    if instance.paths().len() as Time > g.capacity(center) as Time * max_deadline {
        stats.short_circuit = true;
        return Ok((SolveOutcome::Infeasible, stats));
    }
    let mut search = Enumeration {
        instance,
        slack,
        horizon,
        departures: instance.paths().iter().map(|p| vec![0; p.hop_count()]).collect(),
        used: vec![Vec::new(); g.connections().len()],
        located: vec![vec![0; horizon as usize + 2]; g.vertex_count()],
        stats,
    };
    let found = search.assign(0);
    let stats = search.stats;
    if found {
        Ok((SolveOutcome::Feasible(Temporalization::new(horizon, search.departures)), stats))
    } else {
        Ok((SolveOutcome::Infeasible, stats))
    }
}

struct Enumeration<'a> {
    instance: &'a Instance,
    slack: Time,
    horizon: Time,
    departures: Vec<Vec<Time>>,
    /// `(departure, forward)` per connection.
    used: Vec<Vec<(Time, bool)>>,
    /// Number of located routes per vertex and time step.
    located: Vec<Vec<u32>>,
    stats: StarStats,
}

/// Occupied vertex intervals of one route, at most three.
type Footprint = [(VertexId, Time, Time); 3];

impl Enumeration<'_> {
    fn assign(&mut self, p: usize) -> bool {
        if p == self.instance.paths().len() {
            return true;
        }
        let g = self.instance.graph();
        let path = &self.instance.paths()[p];
        let first = g.connection(path.hops()[0]);
        let first_hi = (first.deadline + self.slack - first.theta).min(self.horizon);
        let last_path = p + 1 == self.instance.paths().len();
        for t1 in 1..=first_hi {
            if path.hop_count() == 1 {
                if self.try_tuple(p, &[t1], last_path) {
                    return true;
                }
                continue;
            }
            let second = g.connection(path.hops()[1]);
            let hi = (second.deadline + self.slack - second.theta).min(self.horizon);
            for t2 in t1 + first.theta..=hi {
                if self.try_tuple(p, &[t1, t2], last_path) {
                    return true;
                }
            }
        }
        false
    }

    fn try_tuple(&mut self, p: usize, times: &[Time], complete: bool) -> bool {
        self.stats.nodes += 1;
        if complete {
            self.stats.complete += 1;
        }
        if !self.clash_free(p, times) {
            return false;
        }
        let (footprint, len) = self.footprint(p, times);
        if !footprint[..len].iter().all(|&(v, a, b)| self.fits(v, a, b)) {
            return false;
        }
        self.place(p, times, &footprint[..len], true);
        self.departures[p].copy_from_slice(times);
        if self.assign(p + 1) {
            return true;
        }
        self.place(p, times, &footprint[..len], false);
        false
    }

    fn clash_free(&self, p: usize, times: &[Time]) -> bool {
        let g = self.instance.graph();
        let path = &self.instance.paths()[p];
        times.iter().enumerate().all(|(h, &t)| {
            let c = path.hops()[h];
            let conn = g.connection(c);
            let forward = path.hop_is_forward(g, h);
            self.used[c.0].iter().all(|&(u, f)| {
                if f == forward {
                    u != t
                } else {
                    !conn.is_edge() || (u - t).abs() >= conn.head_on_gap()
                }
            })
        })
    }

    fn footprint(&self, p: usize, times: &[Time]) -> (Footprint, usize) {
        let g = self.instance.graph();
        let path = &self.instance.paths()[p];
        let vs = path.vertices();
        let arrive = |h: usize| times[h] + g.connection(path.hops()[h]).theta;
        let mut out = [(VertexId(0), 0, 0); 3];
        out[0] = (vs[0], times[0], times[0]);
        if times.len() == 1 {
            out[1] = (vs[1], arrive(0), arrive(0));
            (out, 2)
        } else {
            out[1] = (vs[1], arrive(0), times[1]);
            out[2] = (vs[2], arrive(1), arrive(1));
            (out, 3)
        }
    }

    fn fits(&self, v: VertexId, from: Time, to: Time) -> bool {
        let cap = self.instance.graph().capacity(v);
        (from..=to).all(|t| self.located[v.0][t as usize] < cap)
    }

    fn place(&mut self, p: usize, times: &[Time], footprint: &[(VertexId, Time, Time)], add: bool) {
        let g = self.instance.graph();
        let path = &self.instance.paths()[p];
        for (h, &t) in times.iter().enumerate() {
            let c = path.hops()[h].0;
            if add {
                self.used[c].push((t, path.hop_is_forward(g, h)));
            } else {
                self.used[c].pop();
            }
        }
        for &(v, a, b) in footprint {
            for t in a..=b {
                let cell = &mut self.located[v.0][t as usize];
                if add {
                    *cell += 1;
                } else {
                    *cell -= 1;
                }
            }
        }
    }
}
