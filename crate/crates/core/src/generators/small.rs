//! Tiny random instances for cross-checking exact solvers.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::model::{Connection, DecayingGraph, Instance, Time, Vertex, VertexId};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SmallShape {
    Path,
    Star,
    /// Random tree by attaching every vertex to an earlier one.
    Tree,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SmallParams {
    pub shape: SmallShape,
    /// Vertex count is drawn from `2..=max_vertices`.
    pub max_vertices: usize,
    /// Lifetime is drawn from `1..=max_tau`.
    pub max_tau: Time,
    /// Route count is drawn from `1..=max_paths`.
    pub max_paths: usize,
    /// Traversal times are drawn from `0..=max_theta` and kept below the
    /// lifetime.
    pub max_theta: Time,
}

impl SmallParams {
    pub fn new(shape: SmallShape) -> Self {
        SmallParams {
            shape,
            max_vertices: 6,
            max_tau: 8,
            max_paths: 4,
            max_theta: 2,
        }
    }
}

/// Draws a small instance with mixed connection kinds, deadlines uniform in
/// `1..=tau` and capacities uniform over one, two and unlimited.
pub fn random_small_instance(rng: &mut ChaCha8Rng, params: &SmallParams) -> Instance {
    let n = rng.gen_range(2..=params.max_vertices.max(2));
    let tau = rng.gen_range(1..=params.max_tau.max(1));
    let max_theta = params.max_theta.min(tau - 1);
    let mut connections = Vec::new();
    for v in 1..n {
        let parent = match params.shape {
            SmallShape::Path => v - 1,
            SmallShape::Star => 0,
            SmallShape::Tree => rng.gen_range(0..v),
        };
        let (a, b) = (VertexId(parent), VertexId(v));
        let draw = |rng: &mut ChaCha8Rng| (rng.gen_range(0..=max_theta), rng.gen_range(1..=tau));
        match rng.gen_range(0..4) {
            0 => {
                let (t, d) = draw(rng);
                connections.push(Connection::edge(a, b, t, d));
            }
            1 => {
                let (t, d) = draw(rng);
                connections.push(Connection::arc(a, b, t, d));
            }
            2 => {
                let (t, d) = draw(rng);
                connections.push(Connection::arc(b, a, t, d));
            }
            _ => {
                let (t, d) = draw(rng);
                connections.push(Connection::arc(a, b, t, d));
                let (t, d) = draw(rng);
                connections.push(Connection::arc(b, a, t, d));
            }
        }
    }
    let vertices: Vec<Vertex> = (0..n).map(|i| Vertex::new(format!("v{}", i + 1), 1)).collect();
    let graph = DecayingGraph::new(vertices, connections, tau).expect("sampled graph is well-formed");

    let count = rng.gen_range(1..=params.max_paths.max(1));
    let mut routes = Vec::with_capacity(count);
    for _ in 0..count {
        if let Some(route) = random_route(rng, &graph) {
            routes.push(route);
        }
    }
    let draft = Instance::new(graph.clone(), routes.clone()).expect("sampled routes are traversable");
    let load = draft.vertex_load();
    let caps: Vec<u32> = (0..n)
        .map(|v| match rng.gen_range(0..3) {
            0 => 1,
            1 => 2,
            _ => load.per_vertex[v].max(1) as u32,
        })
        .collect();
    let graph = graph.with_capacities(|v| caps[v.0]);
    Instance::new(graph, routes).expect("sampled routes are traversable")
}

/// Random simple walk of random length following connection directions.
fn random_route(rng: &mut ChaCha8Rng, g: &DecayingGraph) -> Option<Vec<VertexId>> {
    let n = g.vertex_count();
    for _ in 0..32 {
        let mut cur = VertexId(rng.gen_range(0..n));
        let target = rng.gen_range(1..n);
        let mut route = vec![cur];
        while route.len() <= target {
            let next: Vec<VertexId> = g
                .neighbours(cur)
                .filter(|w| !route.contains(w) && g.hop(cur, *w).is_some())
                .collect();
            if next.is_empty() {
                break;
            }
            cur = next[rng.gen_range(0..next.len())];
            route.push(cur);
        }
        if route.len() >= 2 {
            return Some(route);
        }
    }
    None
}
