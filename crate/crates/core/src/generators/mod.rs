//! Random instance families.
//!
//! * [`artificial`]: decaying paths and stars with random connection kinds,
//!   traversal times, routes, capacities and deadlines.
//! * [`geo`]: street networks next to rivers, with flood-driven deadlines.
//! * [`small`]: tiny random instances for cross-checking exact solvers.
//!
//! Every generator is a pure function of its parameters and seed.

pub mod artificial;
pub mod geo;
pub mod small;

use alloc::string::String;
use alloc::vec::Vec;

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::model::{Connection, ConnectionId, DecayingGraph, Instance, ModelError, RoutePath, Time, Vertex, VertexId};
use crate::rounding::{ceil_tol, round_half_up};

pub use artificial::{gen_path_instance, gen_star_instance, path_grid, star_grid, PathGenParams, StarGenParams};
pub use geo::{assign_zones, gen_geo_instance, GeoConnection, GeoGraph, GeoParams, GeoVertex, Zone};
pub use small::{random_small_instance, SmallParams, SmallShape};

/// Uniform traversal-time range of the artificial families.
pub const THETA_RANGE: (Time, Time) = (5, 20);

/// How often a sampler retries before giving up.
pub const MAX_RETRIES: usize = 10_000;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GenError {
    #[error("need at least two vertices, got {0}")]
    TooFewVertices(usize),
    #[error("factor {name} = {value} is out of range")]
    Factor { name: &'static str, value: f64 },
    #[error("no route could be sampled after {0} attempts")]
    NoRoute(usize),
    #[error("unknown geo vertex `{0}`")]
    UnknownGeoVertex(String),
    #[error(transparent)]
    Model(#[from] ModelError),
}

/// The three equally likely ways of joining two vertices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LinkKind {
    /// One arc whose direction is a fair coin.
    SingleArc,
    /// Two antiparallel arcs.
    TwoArcs,
    /// One undirected edge.
    Edge,
}

/// Draws a link kind and traversal times for the pair `(a, b)`. Deadlines
/// are placeholders to be replaced by [`finish`].
pub(crate) fn random_link(rng: &mut ChaCha8Rng, a: VertexId, b: VertexId, out: &mut Vec<Connection>) -> LinkKind {
    let (lo, hi) = THETA_RANGE;
    match rng.gen_range(0..3) {
        0 => {
            let theta = rng.gen_range(lo..=hi);
            if rng.gen_bool(0.5) {
                out.push(Connection::arc(a, b, theta, 1));
            } else {
                out.push(Connection::arc(b, a, theta, 1));
            }
            LinkKind::SingleArc
        }
        1 => {
            out.push(Connection::arc(a, b, rng.gen_range(lo..=hi), 1));
            out.push(Connection::arc(b, a, rng.gen_range(lo..=hi), 1));
            LinkKind::TwoArcs
        }
        _ => {
            out.push(Connection::edge(a, b, rng.gen_range(lo..=hi), 1));
            LinkKind::Edge
        }
    }
}

/// Lower deadline reference of every connection: its traversal time plus the
/// larger of the number of routes using it and the latest arrival over it
/// when every route starts at step 1 and never waits. Unused connections get
/// `theta + 1`.
pub fn d_lb(instance: &Instance) -> Vec<Time> {
    let g = instance.graph();
    let mut users = alloc::vec![0 as Time; g.connections().len()];
    let mut latest = alloc::vec![0 as Time; g.connections().len()];
    for path in instance.paths() {
        let mut t = 1;
        for &c in path.hops() {
            t += g.connection(c).theta;
            users[c.0] += 1;
            latest[c.0] = latest[c.0].max(t);
        }
    }
    g.connections()
        .iter()
        .enumerate()
        .map(|(c, conn)| {
            if users[c] == 0 {
                (conn.theta + 1).max(1)
            } else {
                conn.theta + users[c].max(latest[c])
            }
        })
        .collect()
}

/// Capacity rule `max(1, ceil(c_star * |P(v)|))`.
pub fn scaled_capacity(c_star: f64, load: usize) -> u32 {
    ceil_tol(c_star * load as f64).max(1) as u32
}

/// Deadline rule `round(d_star * d_lb)`, at least 1.
pub fn scaled_deadline(d_star: f64, d_lb: Time) -> Time {
    round_half_up(d_star * d_lb as f64).max(1)
}

/// Turns sampled routes into an instance: capacities from route loads,
/// deadlines from [`d_lb`], lifetime as small as the ranges allow.
pub(crate) fn finish(
    names: Vec<String>,
    connections: Vec<Connection>,
    routes: Vec<Vec<VertexId>>,
    c_star: f64,
    d_star: f64,
) -> Result<Instance, GenError> {
    let max_theta = connections.iter().map(|c| c.theta).max().unwrap_or(0);
    let total_theta: Time = connections.iter().map(|c| c.theta).sum();
    let provisional_tau = total_theta + routes.len() as Time + max_theta + 2;
    let provisional: Vec<Connection> = connections
        .iter()
        .map(|c| Connection {
            deadline: provisional_tau,
            ..c.clone()
        })
        .collect();
    let vertices: Vec<Vertex> = names.iter().map(|n| Vertex::new(n.clone(), 1)).collect();
    let graph = DecayingGraph::new(vertices, provisional, provisional_tau)?;
    let draft = Instance::new(graph, routes)?;
    let lower = d_lb(&draft);
    let load = draft.vertex_load();
    let deadlines: Vec<Time> = lower.iter().map(|&l| scaled_deadline(d_star, l)).collect();
    let tau = deadlines.iter().copied().max().unwrap_or(1).max(max_theta + 1);
    let vertices = names
        .into_iter()
        .zip(&load.per_vertex)
        .map(|(n, &l)| Vertex::new(n, scaled_capacity(c_star, l)))
        .collect();
    let connections = connections
        .into_iter()
        .zip(deadlines)
        .map(|(c, d)| Connection { deadline: d, ..c })
        .collect();
    let graph = DecayingGraph::new(vertices, connections, tau)?;
    let routes: Vec<RoutePath> = draft.paths().to_vec();
    Ok(Instance::from_routes(graph, routes))
}

pub(crate) fn check_factor(name: &'static str, value: f64, max: f64) -> Result<(), GenError> {
    if value.is_finite() && value >= 0.0 && value <= max {
        Ok(())
    } else {
        Err(GenError::Factor { name, value })
    }
}

/// Connection traversed by `from -> to` in a draft connection list.
pub(crate) fn hop_in(connections: &[Connection], from: VertexId, to: VertexId) -> Option<ConnectionId> {
    connections
        .iter()
        .position(|c| (c.tail == from && c.head == to) || (c.is_edge() && c.tail == to && c.head == from))
        .map(ConnectionId)
}
