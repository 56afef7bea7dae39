//! Decaying graphs, fixed routes and timed schedules.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use thiserror::Error;

/// A discrete time step. Valid schedules only use values `>= 1`.
pub type Time = i64;

macro_rules! index_newtype {
    ($(#[$meta:meta])* $name:ident) => {
        $(#[$meta])*
        #[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
        pub struct $name(pub usize);

        impl $name {
            #[inline]
            pub fn index(self) -> usize {
                self.0
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(f, "{}", self.0)
            }
        }
    };
}

index_newtype!(
    /// Index of a vertex in [`DecayingGraph::vertices`].
    VertexId
);
index_newtype!(
    /// Index of a connection in [`DecayingGraph::connections`].
    ConnectionId
);
index_newtype!(
    /// Index of a route in [`Instance::paths`].
    PathId
);

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("lifetime must be positive")]
    ZeroLifetime,
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("duplicate vertex `{0}`")]
    DuplicateVertex(String),
    #[error("vertex `{0}` has capacity zero")]
    ZeroCapacity(String),
    #[error("connection {0} is a self-loop")]
    SelfLoop(usize),
    #[error("traversal time out of range on connection {index}: {theta} not in 0..={max}")]
    TraversalTimeOutOfRange { index: usize, theta: Time, max: Time },
    #[error("deadline out of range on connection {index}: {deadline} not in 1..={max}")]
    DeadlineOutOfRange { index: usize, deadline: Time, max: Time },
    #[error("conflicting connection kinds between `{0}` and `{1}`")]
    ConflictingKinds(String, String),
    #[error("duplicate connection between `{0}` and `{1}`")]
    DuplicateConnection(String, String),
    #[error("path {0} has fewer than two vertices")]
    PathTooShort(usize),
    #[error("path {path} visits `{vertex}` twice")]
    RepeatedVertex { path: usize, vertex: String },
    #[error("path {path} cannot traverse from `{from}` to `{to}`")]
    UntraversableHop {
        path: usize,
        from: String,
        to: String,
    },
    #[error("vertex {vertex} is not on path {path}")]
    NotOnPath { path: usize, vertex: usize },
    #[error("graph is not a tree")]
    NotATree,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ConnectionKind {
    /// Traversable in both directions, but never in both at once.
    Edge,
    /// Traversable only from `tail` to `head`.
    Arc,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Connection {
    pub tail: VertexId,
    pub head: VertexId,
    pub kind: ConnectionKind,
    pub theta: Time,
    pub deadline: Time,
}

impl Connection {
    pub fn edge(a: VertexId, b: VertexId, theta: Time, deadline: Time) -> Self {
        Connection {
            tail: a,
            head: b,
            kind: ConnectionKind::Edge,
            theta,
            deadline,
        }
    }

    pub fn arc(tail: VertexId, head: VertexId, theta: Time, deadline: Time) -> Self {
        Connection {
            tail,
            head,
            kind: ConnectionKind::Arc,
            theta,
            deadline,
        }
    }

    pub fn is_edge(&self) -> bool {
        self.kind == ConnectionKind::Edge
    }

    /// Separation required between two opposite traversals of an edge.
    pub fn head_on_gap(&self) -> Time {
        self.theta.max(1)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Vertex {
    pub name: String,
    pub capacity: u32,
}

impl Vertex {
    pub fn new(name: impl Into<String>, capacity: u32) -> Self {
        Vertex {
            name: name.into(),
            capacity,
        }
    }
}

/// Shape of the underlying undirected simple graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Shape {
    Path,
    Star,
    Tree,
    Other,
}

impl Shape {
    pub fn is_tree(self) -> bool {
        !matches!(self, Shape::Other)
    }
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Shape::Path => "path",
            Shape::Star => "star",
            Shape::Tree => "tree",
            Shape::Other => "other",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecayingGraph {
    vertices: Vec<Vertex>,
    connections: Vec<Connection>,
    tau: Time,
    /// Directed traversal lookup: `(from, to)` to the connection used.
    hops: BTreeMap<(usize, usize), ConnectionId>,
    /// Sorted neighbour lists of the underlying undirected simple graph.
    neighbours: Vec<Vec<usize>>,
    shape: Shape,
}

impl DecayingGraph {
    pub fn new(
        vertices: Vec<Vertex>,
        connections: Vec<Connection>,
        tau: Time,
    ) -> Result<Self, ModelError> {
        if tau < 1 {
            return Err(ModelError::ZeroLifetime);
        }
        for (i, v) in vertices.iter().enumerate() {
            if v.capacity == 0 {
                return Err(ModelError::ZeroCapacity(v.name.clone()));
            }
            if vertices[..i].iter().any(|w| w.name == v.name) {
                return Err(ModelError::DuplicateVertex(v.name.clone()));
            }
        }
        let n = vertices.len();
        let mut by_pair: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
        for (index, c) in connections.iter().enumerate() {
            for end in [c.tail, c.head] {
                if end.0 >= n {
                    return Err(ModelError::UnknownVertex(alloc::format!("#{}", end.0)));
                }
            }
            if c.tail == c.head {
                return Err(ModelError::SelfLoop(index));
            }
            if c.theta < 0 || c.theta > tau - 1 {
                return Err(ModelError::TraversalTimeOutOfRange {
                    index,
                    theta: c.theta,
                    max: tau - 1,
                });
            }
            if c.deadline < 1 || c.deadline > tau {
                return Err(ModelError::DeadlineOutOfRange {
                    index,
                    deadline: c.deadline,
                    max: tau,
                });
            }
            let key = (c.tail.0.min(c.head.0), c.tail.0.max(c.head.0));
            by_pair.entry(key).or_default().push(index);
        }

        let mut hops = BTreeMap::new();
        let mut neighbours = vec![Vec::new(); n];
        for (&(a, b), list) in &by_pair {
            let names = || (vertices[a].name.clone(), vertices[b].name.clone());
            let edges = list
                .iter()
                .filter(|&&i| connections[i].is_edge())
                .count();
            if edges > 0 && edges < list.len() {
                let (x, y) = names();
                return Err(ModelError::ConflictingKinds(x, y));
            }
            if edges > 1 || list.len() > 2 {
                let (x, y) = names();
                return Err(ModelError::DuplicateConnection(x, y));
            }
            if list.len() == 2 && connections[list[0]].tail == connections[list[1]].tail {
                let (x, y) = names();
                return Err(ModelError::DuplicateConnection(x, y));
            }
            for &i in list {
                let c = &connections[i];
                hops.insert((c.tail.0, c.head.0), ConnectionId(i));
                if c.is_edge() {
                    hops.insert((c.head.0, c.tail.0), ConnectionId(i));
                }
            }
            neighbours[a].push(b);
            neighbours[b].push(a);
        }
        for list in &mut neighbours {
            list.sort_unstable();
        }
        let shape = classify(&neighbours);
        Ok(DecayingGraph {
            vertices,
            connections,
            tau,
            hops,
            neighbours,
            shape,
        })
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn vertex(&self, v: VertexId) -> &Vertex {
        &self.vertices[v.0]
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn capacity(&self, v: VertexId) -> u32 {
        self.vertices[v.0].capacity
    }

    pub fn connections(&self) -> &[Connection] {
        &self.connections
    }

    pub fn connection(&self, c: ConnectionId) -> &Connection {
        &self.connections[c.0]
    }

    pub fn tau(&self) -> Time {
        self.tau
    }

    pub fn vertex_by_name(&self, name: &str) -> Option<VertexId> {
        self.vertices
            .iter()
            .position(|v| v.name == name)
            .map(VertexId)
    }

    /// The connection a route uses to move from `from` to `to`, if any.
    pub fn hop(&self, from: VertexId, to: VertexId) -> Option<ConnectionId> {
        self.hops.get(&(from.0, to.0)).copied()
    }

    /// Neighbours in the underlying undirected simple graph.
    pub fn neighbours(&self, v: VertexId) -> impl Iterator<Item = VertexId> + '_ {
        self.neighbours[v.0].iter().map(|&w| VertexId(w))
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.neighbours[v.0].len()
    }

    pub fn shape(&self) -> Shape {
        self.shape
    }

    /// Vertices of a decaying path from one end to the other; `None` unless
    /// the shape is [`Shape::Path`].
    pub fn path_order(&self) -> Option<Vec<VertexId>> {
        if self.shape != Shape::Path || self.vertices.is_empty() {
            return None;
        }
        let start = (0..self.vertices.len()).find(|&v| self.neighbours[v].len() <= 1)?;
        let mut order = Vec::with_capacity(self.vertices.len());
        let mut prev = usize::MAX;
        let mut cur = start;
        loop {
            order.push(VertexId(cur));
            match self.neighbours[cur].iter().find(|&&w| w != prev) {
                Some(&next) => {
                    prev = cur;
                    cur = next;
                }
                None => break,
            }
        }
        Some(order)
    }

    /// Center of the underlying star. Two- and three-vertex paths are stars
    /// as well; for two vertices the first one is reported.
    pub fn star_center(&self) -> Option<VertexId> {
        if !self.shape.is_tree() {
            return None;
        }
        let n = self.vertices.len();
        match n {
            0 | 1 => None,
            2 => Some(VertexId(0)),
            _ => (0..n)
                .find(|&v| self.neighbours[v].len() == n - 1)
                .map(VertexId),
        }
    }

    /// True iff at every time step the surviving connections induce a single
    /// tree plus isolated vertices.
    pub fn is_exogenous(&self) -> Result<bool, ModelError> {
        if !self.shape.is_tree() {
            return Err(ModelError::NotATree);
        }
        let n = self.vertices.len();
        for t in 1..=self.tau {
            let mut dsu = Dsu::new(n);
            let mut touched = vec![false; n];
            for c in self.connections.iter().filter(|c| c.deadline >= t) {
                dsu.union(c.tail.0, c.head.0);
                touched[c.tail.0] = true;
                touched[c.head.0] = true;
            }
            let mut root = None;
            for v in (0..n).filter(|&v| touched[v]) {
                let r = dsu.find(v);
                match root {
                    None => root = Some(r),
                    Some(r0) if r0 != r => return Ok(false),
                    _ => {}
                }
            }
        }
        Ok(true)
    }

    /// Sets every capacity, keeping everything else.
    pub fn with_capacities(mut self, capacity: impl Fn(VertexId) -> u32) -> Self {
        for (i, v) in self.vertices.iter_mut().enumerate() {
            v.capacity = capacity(VertexId(i)).max(1);
        }
        self
    }
}

fn classify(neighbours: &[Vec<usize>]) -> Shape {
    let n = neighbours.len();
    if n <= 1 {
        return if n == 1 { Shape::Path } else { Shape::Other };
    }
    let edges: usize = neighbours.iter().map(Vec::len).sum::<usize>() / 2;
    if edges != n - 1 {
        return Shape::Other;
    }
    let mut seen = vec![false; n];
    let mut stack = vec![0];
    seen[0] = true;
    let mut count = 1;
    while let Some(v) = stack.pop() {
        for &w in &neighbours[v] {
            if !seen[w] {
                seen[w] = true;
                count += 1;
                stack.push(w);
            }
        }
    }
    if count != n {
        return Shape::Other;
    }
    if neighbours.iter().all(|l| l.len() <= 2) {
        Shape::Path
    } else if neighbours.iter().any(|l| l.len() == n - 1) {
        Shape::Star
    } else {
        Shape::Tree
    }
}

struct Dsu {
    parent: Vec<usize>,
}

impl Dsu {
    fn new(n: usize) -> Self {
        Dsu {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut v: usize) -> usize {
        while self.parent[v] != v {
            self.parent[v] = self.parent[self.parent[v]];
            v = self.parent[v];
        }
        v
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// A fixed route through the graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RoutePath {
    vertices: Vec<VertexId>,
    hops: Vec<ConnectionId>,
}

impl RoutePath {
    pub fn new(graph: &DecayingGraph, vertices: Vec<VertexId>, index: usize) -> Result<Self, ModelError> {
        if vertices.len() < 2 {
            return Err(ModelError::PathTooShort(index));
        }
        for (i, v) in vertices.iter().enumerate() {
            if v.0 >= graph.vertex_count() {
                return Err(ModelError::UnknownVertex(alloc::format!("#{}", v.0)));
            }
            if vertices[..i].contains(v) {
                return Err(ModelError::RepeatedVertex {
                    path: index,
                    vertex: graph.vertex(*v).name.clone(),
                });
            }
        }
        let hops = vertices
            .windows(2)
            .map(|w| {
                graph.hop(w[0], w[1]).ok_or_else(|| ModelError::UntraversableHop {
                    path: index,
                    from: graph.vertex(w[0]).name.clone(),
                    to: graph.vertex(w[1]).name.clone(),
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(RoutePath { vertices, hops })
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.vertices
    }

    /// Connection used by each hop, in travel order.
    pub fn hops(&self) -> &[ConnectionId] {
        &self.hops
    }

    pub fn hop_count(&self) -> usize {
        self.hops.len()
    }

    pub fn source(&self) -> VertexId {
        self.vertices[0]
    }

    pub fn sink(&self) -> VertexId {
        self.vertices[self.vertices.len() - 1]
    }

    pub fn position(&self, v: VertexId) -> Option<usize> {
        self.vertices.iter().position(|&w| w == v)
    }

    /// Whether hop `h` runs from the connection's tail to its head.
    pub fn hop_is_forward(&self, graph: &DecayingGraph, h: usize) -> bool {
        graph.connection(self.hops[h]).tail == self.vertices[h]
    }

    /// Sum of traversal times along the route.
    pub fn travel_time(&self, graph: &DecayingGraph) -> Time {
        self.hops.iter().map(|&c| graph.connection(c).theta).sum()
    }
}

/// A closed interval of time steps; empty when `lo > hi`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Interval {
    pub lo: Time,
    pub hi: Time,
}

impl Interval {
    pub fn new(lo: Time, hi: Time) -> Self {
        Interval { lo, hi }
    }

    pub fn point(t: Time) -> Self {
        Interval { lo: t, hi: t }
    }

    pub fn is_empty(&self) -> bool {
        self.lo > self.hi
    }

    pub fn contains(&self, t: Time) -> bool {
        self.lo <= t && t <= self.hi
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    graph: DecayingGraph,
    paths: Vec<RoutePath>,
    paths_at: Vec<Vec<PathId>>,
}

impl Instance {
    pub fn new(graph: DecayingGraph, paths: Vec<Vec<VertexId>>) -> Result<Self, ModelError> {
        let paths = paths
            .into_iter()
            .enumerate()
            .map(|(i, p)| RoutePath::new(&graph, p, i))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Self::from_routes(graph, paths))
    }

    pub fn from_routes(graph: DecayingGraph, paths: Vec<RoutePath>) -> Self {
        let mut paths_at = vec![Vec::new(); graph.vertex_count()];
        for (i, p) in paths.iter().enumerate() {
            for v in p.vertices() {
                paths_at[v.0].push(PathId(i));
            }
        }
        Instance {
            graph,
            paths,
            paths_at,
        }
    }

    pub fn graph(&self) -> &DecayingGraph {
        &self.graph
    }

    pub fn paths(&self) -> &[RoutePath] {
        &self.paths
    }

    pub fn path(&self, p: PathId) -> &RoutePath {
        &self.paths[p.0]
    }

    pub fn tau(&self) -> Time {
        self.graph.tau
    }

    /// Routes through `v`, in index order.
    pub fn paths_at(&self, v: VertexId) -> &[PathId] {
        &self.paths_at[v.0]
    }

    pub fn vertex_load(&self) -> VertexLoad {
        let per_vertex: Vec<usize> = self.paths_at.iter().map(Vec::len).collect();
        let max = per_vertex.iter().copied().max().unwrap_or(0);
        VertexLoad { per_vertex, max }
    }

    /// The same instance with every deadline raised by `slack` and the
    /// lifetime extended accordingly.
    pub fn with_slack(&self, slack: Time) -> Instance {
        let tau = self.graph.tau + slack;
        let connections = self
            .graph
            .connections
            .iter()
            .map(|c| Connection {
                deadline: c.deadline + slack,
                ..c.clone()
            })
            .collect();
        let graph = DecayingGraph::new(self.graph.vertices.clone(), connections, tau)
            .expect("raising deadlines keeps a graph well-formed");
        Instance::from_routes(graph, self.paths.clone())
    }

    /// Same routes, different capacities.
    pub fn with_capacities(&self, capacity: impl Fn(VertexId) -> u32) -> Instance {
        Instance::from_routes(self.graph.clone().with_capacities(capacity), self.paths.clone())
    }

    /// Whether every capacity is at least the number of routes through it.
    pub fn is_uncapacitated(&self) -> bool {
        (0..self.graph.vertex_count())
            .all(|v| self.graph.vertices[v].capacity as usize >= self.paths_at[v].len())
    }

    /// Upper bound on the minimum slack: routes one after the other, each
    /// given its own no-wait window.
    pub fn slack_upper_bound(&self) -> Time {
        let longest = self
            .paths
            .iter()
            .map(|p| 1 + p.travel_time(&self.graph))
            .max()
            .unwrap_or(0);
        self.paths.len() as Time * longest
    }
}

/// `|P(v)|` for every vertex plus the maximum.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexLoad {
    pub per_vertex: Vec<usize>,
    pub max: usize,
}

/// Departure time of every hop of every route.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Temporalization {
    pub horizon: Time,
    pub departures: Vec<Vec<Time>>,
}

impl Temporalization {
    pub fn new(horizon: Time, departures: Vec<Vec<Time>>) -> Self {
        Temporalization {
            horizon,
            departures,
        }
    }

    pub fn departure(&self, p: PathId, hop: usize) -> Time {
        self.departures[p.0][hop]
    }

    /// Every route leaves at step 1 and never waits.
    pub fn no_wait(instance: &Instance) -> Self {
        let g = instance.graph();
        let departures = instance
            .paths()
            .iter()
            .map(|p| {
                let mut t = 1;
                p.hops()
                    .iter()
                    .map(|&c| {
                        let dep = t;
                        t += g.connection(c).theta;
                        dep
                    })
                    .collect()
            })
            .collect();
        Temporalization::new(instance.tau(), departures)
    }

    /// Latest time step at which any route is located anywhere.
    pub fn makespan(&self, instance: &Instance) -> Time {
        instance
            .paths()
            .iter()
            .zip(&self.departures)
            .filter_map(|(p, d)| {
                d.last()
                    .map(|&t| t + instance.graph().connection(*p.hops().last().unwrap()).theta)
            })
            .max()
            .unwrap_or(0)
    }
}

/// Time steps at which route `p` is located at vertex `v` under `schedule`.
pub fn occupancy(
    instance: &Instance,
    p: PathId,
    schedule: &Temporalization,
    v: VertexId,
) -> Result<Interval, ModelError> {
    let path = instance.path(p);
    let pos = path.position(v).ok_or(ModelError::NotOnPath {
        path: p.0,
        vertex: v.0,
    })?;
    Ok(occupancy_at(instance.graph(), path, &schedule.departures[p.0], pos))
}

/// Occupancy of the `pos`-th vertex of `path` given its departures.
pub fn occupancy_at(graph: &DecayingGraph, path: &RoutePath, departures: &[Time], pos: usize) -> Interval {
    let k = path.hop_count();
    if pos == 0 {
        Interval::point(departures[0])
    } else {
        let arrival = departures[pos - 1] + graph.connection(path.hops()[pos - 1]).theta;
        if pos == k {
            Interval::point(arrival)
        } else {
            Interval::new(arrival, departures[pos])
        }
    }
}
