//! Hardness gadgets: source problems, their reductions to smooth routing and
//! exhaustive source-problem oracles.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;

use thiserror::Error;

use crate::model::{Connection, DecayingGraph, Instance, ModelError, Time, Vertex, VertexId};

mod cubic_is;
mod graph;
mod mis_uig;
mod sat223;
mod vertex_cover;

pub use cubic_is::{oracle_is, reduce_cubic_is, table2_room, CubicGraph, CUBIC_TAU};
pub use graph::SimpleGraph;
pub use mis_uig::{oracle_mis_uig, reduce_mis_uig, UnitIntervalInstance};
pub use sat223::{oracle_223sat, random_formula223, reduce_223sat, Formula223, Literal};
pub use vertex_cover::{normalize_vc, oracle_vc, reduce_vertex_cover, VcInstance, MIN_EDGES};

/// Largest source size the exhaustive oracles accept.
pub const ORACLE_LIMIT: usize = 24;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReductionError {
    #[error("vertex {0} is out of range")]
    VertexOutOfRange(usize),
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("edge {{{0}, {1}}} is listed twice")]
    DuplicateEdge(usize, usize),
    #[error("vertex {vertex} has degree {degree}, expected 3")]
    NotCubic { vertex: usize, degree: usize },
    #[error("parameter k = {k} exceeds the {n} vertices")]
    ParameterTooLarge { k: usize, n: usize },
    #[error("interval [{0}, {1}] is empty")]
    EmptyInterval(Time, Time),
    #[error("color class {0} is empty")]
    EmptyClass(usize),
    #[error("color class {0} contains intersecting intervals")]
    ClassNotIndependent(usize),
    #[error("endpoints {0} and {1} are closer than two")]
    Spacing(Time, Time),
    #[error("malformed formula: {0}")]
    Formula(&'static str),
    #[error("source of size {size} exceeds the oracle limit {limit}")]
    TooLarge { size: usize, limit: usize },
    #[error(transparent)]
    Model(#[from] ModelError),
}

/// Incremental construction of a gadget instance by vertex names.
#[derive(Debug, Default)]
pub(crate) struct Gadget {
    vertices: Vec<Vertex>,
    index: BTreeMap<String, VertexId>,
    connections: Vec<Connection>,
    paths: Vec<Vec<VertexId>>,
}

impl Gadget {
    pub(crate) fn vertex(&mut self, name: String, capacity: u32) -> VertexId {
        let id = VertexId(self.vertices.len());
        self.index.insert(name.clone(), id);
        self.vertices.push(Vertex::new(name, capacity));
        id
    }

    pub(crate) fn id(&self, name: &str) -> VertexId {
        self.index[name]
    }

    pub(crate) fn edge(&mut self, a: VertexId, b: VertexId, theta: Time, deadline: Time) {
        self.connections.push(Connection::edge(a, b, theta, deadline));
    }

    pub(crate) fn path(&mut self, route: Vec<VertexId>) {
        self.paths.push(route);
    }

    /// Sets every capacity to the number of routes through the vertex.
    pub(crate) fn uncapacitated(&mut self) {
        let mut load = alloc::vec![0u32; self.vertices.len()];
        for route in &self.paths {
            for v in route {
                load[v.0] += 1;
            }
        }
        for (v, l) in self.vertices.iter_mut().zip(load) {
            v.capacity = l.max(1);
        }
    }

    pub(crate) fn finish(self, tau: Time) -> Result<Instance, ReductionError> {
        let graph = DecayingGraph::new(self.vertices, self.connections, tau)?;
        Ok(Instance::new(graph, self.paths)?)
    }
}
