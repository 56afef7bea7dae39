//! Brute-force feasibility and minimum-slack search for small instances.

use alloc::vec;
use alloc::vec::Vec;

use thiserror::Error;

use crate::model::{Instance, PathId, Shape, Temporalization, Time};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolveError {
    #[error("search budget of {0} nodes exceeded")]
    Budget(u64),
    #[error("state limit of {limit} exceeded at vertex index {index}")]
    StateLimit { index: usize, limit: usize },
    #[error("engine needs a {expected} but the graph is a {found}")]
    ShapeMismatch { expected: Shape, found: Shape },
    #[error("path {0} does not pass the star center")]
    NotThroughCenter(PathId),
    #[error("no schedule found within the slack bound {0}")]
    SlackBound(Time),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SolveOutcome {
    Feasible(Temporalization),
    Infeasible,
}

impl SolveOutcome {
    pub fn is_feasible(&self) -> bool {
        matches!(self, SolveOutcome::Feasible(_))
    }

    pub fn schedule(&self) -> Option<&Temporalization> {
        match self {
            SolveOutcome::Feasible(s) => Some(s),
            SolveOutcome::Infeasible => None,
        }
    }
}

/// Minimum slack together with a schedule valid at horizon `tau + d_star`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OptimizeOutcome {
    pub d_star: Time,
    pub schedule: Temporalization,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExactOptions {
    /// Maximum number of departure assignments tried.
    pub node_limit: u64,
}

impl Default for ExactOptions {
    fn default() -> Self {
        ExactOptions {
            node_limit: 10_000_000,
        }
    }
}

/// Decides whether a valid schedule exists with every deadline raised by
/// `slack`.
pub fn brute_force_feasible(instance: &Instance, slack: Time) -> Result<SolveOutcome, SolveError> {
    brute_force_feasible_with(instance, slack, &ExactOptions::default())
}

pub fn brute_force_feasible_with(
    instance: &Instance,
    slack: Time,
    options: &ExactOptions,
) -> Result<SolveOutcome, SolveError> {
    let mut search = Search::new(instance, slack, options.node_limit);
    if search.run(0, 0)? {
        let horizon = instance.tau() + slack;
        Ok(SolveOutcome::Feasible(Temporalization::new(horizon, search.departures)))
    } else {
        Ok(SolveOutcome::Infeasible)
    }
}

/// Smallest slack admitting a valid schedule, found by a linear scan up to
/// [`Instance::slack_upper_bound`].
pub fn min_slack_oracle(instance: &Instance) -> Result<OptimizeOutcome, SolveError> {
    min_slack_oracle_with(instance, &ExactOptions::default())
}

pub fn min_slack_oracle_with(instance: &Instance, options: &ExactOptions) -> Result<OptimizeOutcome, SolveError> {
    scan_slack(instance, |s| brute_force_feasible_with(instance, s, options))
}

/// Linear scan over slack values with any exact decision procedure.
pub fn scan_slack(
    instance: &Instance,
    mut decide: impl FnMut(Time) -> Result<SolveOutcome, SolveError>,
) -> Result<OptimizeOutcome, SolveError> {
    let bound = instance.slack_upper_bound();
    for d_star in 0..=bound {
        if let SolveOutcome::Feasible(schedule) = decide(d_star)? {
            return Ok(OptimizeOutcome { d_star, schedule });
        }
    }
    Err(SolveError::SlackBound(bound))
}

struct Search<'a> {
    instance: &'a Instance,
    horizon: Time,
    /// Paths in search order.
    order: Vec<usize>,
    /// For each position in `order`, the earlier position of an identical
    /// route, used to break symmetry.
    twin: Vec<Option<usize>>,
    /// Latest feasible departure per path and hop, from deadlines alone.
    latest: Vec<Vec<Time>>,
    departures: Vec<Vec<Time>>,
    /// `(departure, forward)` per connection.
    on_connection: Vec<Vec<(Time, bool)>>,
    /// Located routes per vertex and time step.
    load: Vec<Vec<u32>>,
    nodes: u64,
    node_limit: u64,
}

impl<'a> Search<'a> {
    fn new(instance: &'a Instance, slack: Time, node_limit: u64) -> Self {
        let g = instance.graph();
        let horizon = instance.tau() + slack;
        let paths = instance.paths();
        let mut order: Vec<usize> = (0..paths.len()).collect();
        order.sort_by_key(|&p| (paths[p].source(), paths[p].hop_count(), p));
        let twin = order
            .iter()
            .enumerate()
            .map(|(i, &p)| {
                (0..i)
                    .rev()
                    .find(|&j| paths[order[j]].vertices() == paths[p].vertices())
            })
            .collect();
        let latest = paths
            .iter()
            .map(|path| {
                let mut latest = vec![0; path.hop_count()];
                let mut next = Time::MAX;
                for (h, &c) in path.hops().iter().enumerate().rev() {
                    let conn = g.connection(c);
                    let by_deadline = conn.deadline + slack - conn.theta;
                    latest[h] = by_deadline.min(next.saturating_sub(conn.theta));
                    next = latest[h];
                }
                latest
            })
            .collect();
        Search {
            instance,
            horizon,
            order,
            twin,
            latest,
            departures: paths.iter().map(|p| vec![0; p.hop_count()]).collect(),
            on_connection: vec![Vec::new(); g.connections().len()],
            load: vec![vec![0; horizon as usize + 2]; g.vertex_count()],
            nodes: 0,
            node_limit,
        }
    }

    fn run(&mut self, index: usize, hop: usize) -> Result<bool, SolveError> {
        if index == self.order.len() {
            return Ok(true);
        }
        let p = self.order[index];
        let path = &self.instance.paths()[p];
        let g = self.instance.graph();
        if hop == path.hop_count() {
            return self.run(index + 1, 0);
        }
        let c = path.hops()[hop];
        let conn = g.connection(c);
        let forward = path.hop_is_forward(g, hop);
        let ready = if hop == 0 {
            1
        } else {
            let prev = g.connection(path.hops()[hop - 1]);
            self.departures[p][hop - 1] + prev.theta
        };
        let mut lo = ready;
        // Identical routes are interchangeable: order them lexicographically.
        if let Some(j) = self.twin[index] {
            let q = self.order[j];
            if self.departures[q][..hop] == self.departures[p][..hop] {
                lo = lo.max(self.departures[q][hop]);
            }
        }
        let hi = self.latest[p][hop].min(self.horizon);
        let vertex = path.vertices()[hop];
        let last = hop + 1 == path.hop_count();
        let sink = path.sink();
        for t in lo..=hi {
            self.nodes += 1;
            if self.nodes > self.node_limit {
                return Err(SolveError::Budget(self.node_limit));
            }
            if self.clashes(c.0, t, forward, conn.is_edge(), conn.head_on_gap()) {
                continue;
            }
            let arrival = t + conn.theta;
            let here = if hop == 0 { (t, t) } else { (ready, t) };
            if !self.fits(vertex.0, here) {
                continue;
            }
            if last && !self.fits(sink.0, (arrival, arrival)) {
                continue;
            }
            self.add(vertex.0, here, 1);
            if last {
                self.add(sink.0, (arrival, arrival), 1);
            }
            self.on_connection[c.0].push((t, forward));
            self.departures[p][hop] = t;
            if self.run(index, hop + 1)? {
                return Ok(true);
            }
            self.on_connection[c.0].pop();
            self.add(vertex.0, here, -1);
            if last {
                self.add(sink.0, (arrival, arrival), -1);
            }
        }
        Ok(false)
    }

    fn clashes(&self, c: usize, t: Time, forward: bool, edge: bool, gap: Time) -> bool {
        self.on_connection[c].iter().any(|&(u, f)| {
            if f == forward {
                u == t
            } else {
                edge && (u - t).abs() < gap
            }
        })
    }

    fn fits(&self, v: usize, (from, to): (Time, Time)) -> bool {
        let cap = self.instance.graph().capacity(crate::model::VertexId(v));
        (from..=to).all(|t| self.load[v][t as usize] < cap)
    }

    fn add(&mut self, v: usize, (from, to): (Time, Time), delta: i32) {
        for t in from..=to {
            let cell = &mut self.load[v][t as usize];
            *cell = (*cell as i32 + delta) as u32;
        }
    }
}
