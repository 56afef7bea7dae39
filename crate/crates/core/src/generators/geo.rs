//! Street networks along rivers with flood-driven deadlines.

use alloc::collections::{BTreeMap, BinaryHeap};
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Reverse;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{check_factor, GenError, MAX_RETRIES};
use crate::model::{Connection, DecayingGraph, Instance, Time, Vertex, VertexId};
use crate::rounding::{ceil_tol, round_half_up};

/// Speed limit used for traversal times, in km/h.
pub const SPEED_KMH: f64 = 50.0;
/// Flood front speed used for deadlines, in m/s.
pub const FLOOD_SPEED: f64 = 1.0;
/// Fraction of the nearest eligible vertices a sink is drawn from.
pub const SINK_FRACTION: f64 = 0.2;

#[derive(Debug, Clone, PartialEq)]
pub struct GeoVertex {
    pub id: String,
    pub x: f64,
    pub y: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GeoConnection {
    pub tail: String,
    pub head: String,
    pub length_m: f64,
    pub oneway: bool,
    /// Number of lanes; two-way streets with several lanes become two arcs.
    pub lanes: Option<u32>,
}

/// Planar street network in meters with one or more river polylines.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct GeoGraph {
    pub vertices: Vec<GeoVertex>,
    pub connections: Vec<GeoConnection>,
    pub rivers: Vec<Vec<(f64, f64)>>,
}

/// Flood zones by distance to the nearest river.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Zone {
    /// At most 250 m.
    Zero,
    /// Up to 500 m.
    A,
    /// Up to 1000 m.
    B,
    /// Beyond 1000 m.
    C,
}

impl Zone {
    pub fn of_distance(dist: f64) -> Zone {
        if dist <= 250.0 {
            Zone::Zero
        } else if dist <= 500.0 {
            Zone::A
        } else if dist <= 1000.0 {
            Zone::B
        } else {
            Zone::C
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeoParams {
    /// Routes per vertex inside the target zone boundary.
    pub p_star: f64,
    /// Zone to evacuate to; one of A, B, C.
    pub target: Zone,
    pub seed: u64,
}

fn segment_distance(p: (f64, f64), a: (f64, f64), b: (f64, f64)) -> f64 {
    let (dx, dy) = (b.0 - a.0, b.1 - a.1);
    let len2 = dx * dx + dy * dy;
    let t = if len2 > 0.0 {
        (((p.0 - a.0) * dx + (p.1 - a.1) * dy) / len2).clamp(0.0, 1.0)
    } else {
        0.0
    };
    let (qx, qy) = (a.0 + t * dx, a.1 + t * dy);
    libm::sqrt((p.0 - qx) * (p.0 - qx) + (p.1 - qy) * (p.1 - qy))
}

/// Euclidean distance from a point to the nearest river polyline.
pub fn river_distance(geo: &GeoGraph, p: (f64, f64)) -> f64 {
    let mut best = f64::INFINITY;
    for river in &geo.rivers {
        match river.len() {
            0 => {}
            1 => best = best.min(segment_distance(p, river[0], river[0])),
            _ => {
                for w in river.windows(2) {
                    best = best.min(segment_distance(p, w[0], w[1]));
                }
            }
        }
    }
    best
}

/// Zone of every vertex, in input order.
pub fn assign_zones(geo: &GeoGraph) -> Vec<Zone> {
    geo.vertices
        .iter()
        .map(|v| Zone::of_distance(river_distance(geo, (v.x, v.y))))
        .collect()
}

/// Traversal time in seconds of a street at the speed limit.
pub fn travel_seconds(length_m: f64) -> Time {
    ceil_tol(length_m * 3.6 / SPEED_KMH).max(0)
}

/// Decaying graph of a street network: one connection per street, deadlines
/// from the flood front, capacities from incident streets.
pub fn geo_graph(geo: &GeoGraph) -> Result<DecayingGraph, GenError> {
    let index: BTreeMap<&str, usize> = geo.vertices.iter().enumerate().map(|(i, v)| (v.id.as_str(), i)).collect();
    let dist: Vec<f64> = geo.vertices.iter().map(|v| river_distance(geo, (v.x, v.y))).collect();
    let lookup = |id: &str| index.get(id).copied().ok_or_else(|| GenError::UnknownGeoVertex(id.into()));

    // Per unordered pair: shortest undirected street, shortest street per
    // direction.
    #[derive(Default)]
    struct Pair {
        edge: Option<f64>,
        forward: Option<f64>,
        backward: Option<f64>,
    }
    let keep = |slot: &mut Option<f64>, len: f64| *slot = Some(slot.map_or(len, |l: f64| l.min(len)));
    let mut pairs: BTreeMap<(usize, usize), Pair> = BTreeMap::new();
    for c in &geo.connections {
        let (t, h) = (lookup(&c.tail)?, lookup(&c.head)?);
        if t == h {
            continue;
        }
        let pair = pairs.entry((t.min(h), t.max(h))).or_default();
        if c.oneway {
            if t < h {
                keep(&mut pair.forward, c.length_m);
            } else {
                keep(&mut pair.backward, c.length_m);
            }
        } else if c.lanes.unwrap_or(1) >= 2 {
            keep(&mut pair.forward, c.length_m);
            keep(&mut pair.backward, c.length_m);
        } else {
            keep(&mut pair.edge, c.length_m);
        }
    }

    let mut connections = Vec::new();
    let mut incident = vec![0u32; geo.vertices.len()];
    for (&(a, b), pair) in &pairs {
        let deadline_floor = ceil_tol(dist[a].min(dist[b]) / FLOOD_SPEED);
        let mut add = |tail: usize, head: usize, len: f64, edge: bool| {
            let theta = travel_seconds(len);
            let deadline = deadline_floor.max(theta + 1).max(1);
            let (t, h) = (VertexId(tail), VertexId(head));
            connections.push(if edge {
                Connection::edge(t, h, theta, deadline)
            } else {
                Connection::arc(t, h, theta, deadline)
            });
            incident[tail] += 1;
            incident[head] += 1;
        };
        if let Some(len) = pair.edge {
            add(a, b, len, true);
        } else {
            if let Some(len) = pair.forward {
                add(a, b, len, false);
            }
            if let Some(len) = pair.backward {
                add(b, a, len, false);
            }
        }
    }
    let tau = connections
        .iter()
        .map(|c| c.deadline.max(c.theta + 1))
        .max()
        .unwrap_or(1);
    let vertices = geo
        .vertices
        .iter()
        .zip(&incident)
        .map(|(v, &k)| Vertex::new(v.id.clone(), k.max(1)))
        .collect();
    Ok(DecayingGraph::new(vertices, connections, tau)?)
}

/// Travel-time shortest paths from `source`, ties broken by vertex id.
/// Returns distances and predecessors.
fn dijkstra(g: &DecayingGraph, out_hops: &[Vec<(usize, Time)>], source: usize) -> (Vec<Option<Time>>, Vec<usize>) {
    let n = g.vertex_count();
    let mut dist: Vec<Option<Time>> = vec![None; n];
    let mut pred = vec![usize::MAX; n];
    let mut done = vec![false; n];
    let mut heap = BinaryHeap::new();
    dist[source] = Some(0);
    heap.push(Reverse((0, source)));
    while let Some(Reverse((d, v))) = heap.pop() {
        if done[v] {
            continue;
        }
        done[v] = true;
        for &(w, theta) in &out_hops[v] {
            let nd = d + theta;
            let better = match dist[w] {
                None => true,
                Some(old) => nd < old || (nd == old && !done[w] && v < pred[w]),
            };
            if better && !done[w] {
                dist[w] = Some(nd);
                pred[w] = v;
                heap.push(Reverse((nd, w)));
            }
        }
    }
    (dist, pred)
}

/// Evacuation instance towards `params.target`: sources inside the zones
/// before the target, sinks among the nearest eligible vertices at or beyond
/// it, routes along shortest travel-time paths.
pub fn gen_geo_instance(geo: &GeoGraph, params: &GeoParams) -> Result<Instance, GenError> {
    check_factor("p*", params.p_star, 1.0)?;
    let g = geo_graph(geo)?;
    let zones = assign_zones(geo);
    let target = if params.target == Zone::Zero { Zone::A } else { params.target };
    let inner: Vec<usize> = (0..zones.len()).filter(|&v| zones[v] < target).collect();
    let count = round_half_up(params.p_star * inner.len() as f64).max(0) as usize;

    let n = g.vertex_count();
    let mut out_hops: Vec<Vec<(usize, Time)>> = vec![Vec::new(); n];
    for v in 0..n {
        for w in g.neighbours(VertexId(v)) {
            if let Some(c) = g.hop(VertexId(v), w) {
                out_hops[v].push((w.0, g.connection(c).theta));
            }
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let mut routes = Vec::with_capacity(count);
    let mut cache: BTreeMap<usize, (Vec<Option<Time>>, Vec<usize>)> = BTreeMap::new();
    'route: for _ in 0..count {
        for _ in 0..MAX_RETRIES {
            let source = inner[rng.gen_range(0..inner.len())];
            let (dist, pred) = cache
                .entry(source)
                .or_insert_with(|| dijkstra(&g, &out_hops, source));
            let mut eligible: Vec<(Time, usize)> = (0..n)
                .filter(|&w| zones[w] >= target)
                .filter_map(|w| dist[w].map(|d| (d, w)))
                .collect();
            if eligible.is_empty() {
                continue;
            }
            eligible.sort_unstable();
            let keep = ceil_tol(SINK_FRACTION * eligible.len() as f64).max(1) as usize;
            let sink = eligible[rng.gen_range(0..keep)].1;
            let mut route = vec![VertexId(sink)];
            let mut cur = sink;
            while cur != source {
                cur = pred[cur];
                route.push(VertexId(cur));
            }
            route.reverse();
            routes.push(route);
            continue 'route;
        }
        return Err(GenError::NoRoute(MAX_RETRIES));
    }
    Ok(Instance::new(g, routes)?)
}
