//! JSON instance, schedule, diagnosis and geo-graph files.

use serde::{Deserialize, Serialize};
use srdg_core::generators::{GeoConnection, GeoGraph, GeoVertex};
use srdg_core::{
    Connection, ConnectionKind, DecayingGraph, Diagnosis, Instance, ModelError, Temporalization, Time, Vertex,
    VertexId, Violation,
};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum IoError {
    #[error("malformed document: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error("capacity `{0}` is neither a positive integer nor \"inf\"")]
    Capacity(String),
    #[error("geo graph: {0}")]
    Geo(String),
}

/// A vertex capacity: a number, or `"inf"` for the number of routes through
/// the vertex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CapacitySpec {
    Finite(u32),
    Named(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexDoc {
    pub id: String,
    pub capacity: CapacitySpec,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum KindDoc {
    Edge,
    Arc,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConnectionDoc {
    pub tail: String,
    pub head: String,
    pub kind: KindDoc,
    pub theta: Time,
    pub deadline: Time,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceDoc {
    pub tau: Time,
    pub vertices: Vec<VertexDoc>,
    pub connections: Vec<ConnectionDoc>,
    pub paths: Vec<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScheduleDoc {
    pub horizon: Time,
    pub departures: Vec<Vec<Time>>,
}

impl InstanceDoc {
    pub fn from_instance(instance: &Instance) -> Self {
        let g = instance.graph();
        let name = |v: VertexId| g.vertex(v).name.clone();
        InstanceDoc {
            tau: g.tau(),
            vertices: g
                .vertices()
                .iter()
                .map(|v| VertexDoc {
                    id: v.name.clone(),
                    capacity: CapacitySpec::Finite(v.capacity),
                })
                .collect(),
            connections: g
                .connections()
                .iter()
                .map(|c| ConnectionDoc {
                    tail: name(c.tail),
                    head: name(c.head),
                    kind: match c.kind {
                        ConnectionKind::Edge => KindDoc::Edge,
                        ConnectionKind::Arc => KindDoc::Arc,
                    },
                    theta: c.theta,
                    deadline: c.deadline,
                })
                .collect(),
            paths: instance
                .paths()
                .iter()
                .map(|p| p.vertices().iter().map(|&v| name(v)).collect())
                .collect(),
        }
    }

    pub fn to_instance(&self) -> Result<Instance, IoError> {
        let index = |id: &str| -> Result<VertexId, ModelError> {
            self.vertices
                .iter()
                .position(|v| v.id == id)
                .map(VertexId)
                .ok_or_else(|| ModelError::UnknownVertex(id.to_owned()))
        };
        let mut unlimited = vec![false; self.vertices.len()];
        let mut vertices = Vec::with_capacity(self.vertices.len());
        for (i, v) in self.vertices.iter().enumerate() {
            let capacity = match &v.capacity {
                CapacitySpec::Finite(c) => *c,
                CapacitySpec::Named(s) if s == "inf" => {
                    unlimited[i] = true;
                    1
                }
                CapacitySpec::Named(s) => return Err(IoError::Capacity(s.clone())),
            };
            vertices.push(Vertex::new(v.id.clone(), capacity));
        }
        let connections = self
            .connections
            .iter()
            .map(|c| {
                let (tail, head) = (index(&c.tail)?, index(&c.head)?);
                Ok(match c.kind {
                    KindDoc::Edge => Connection::edge(tail, head, c.theta, c.deadline),
                    KindDoc::Arc => Connection::arc(tail, head, c.theta, c.deadline),
                })
            })
            .collect::<Result<Vec<_>, ModelError>>()?;
        let paths = self
            .paths
            .iter()
            .map(|p| p.iter().map(|id| index(id)).collect())
            .collect::<Result<Vec<Vec<_>>, _>>()?;
        let instance = Instance::new(DecayingGraph::new(vertices, connections, self.tau)?, paths)?;
        if unlimited.iter().any(|&u| u) {
            let caps: Vec<u32> = instance
                .graph()
                .vertices()
                .iter()
                .enumerate()
                .map(|(v, vert)| {
                    if unlimited[v] {
                        instance.paths_at(VertexId(v)).len() as u32
                    } else {
                        vert.capacity
                    }
                })
                .collect();
            return Ok(instance.with_capacities(|v| caps[v.0]));
        }
        Ok(instance)
    }
}

pub fn parse_instance(text: &str) -> Result<Instance, IoError> {
    serde_json::from_str::<InstanceDoc>(text)?.to_instance()
}

pub fn write_instance(instance: &Instance) -> String {
    serde_json::to_string_pretty(&InstanceDoc::from_instance(instance)).expect("instances serialize")
}

pub fn parse_schedule(text: &str) -> Result<Temporalization, IoError> {
    let doc: ScheduleDoc = serde_json::from_str(text)?;
    Ok(Temporalization::new(doc.horizon, doc.departures))
}

pub fn write_schedule(schedule: &Temporalization) -> String {
    serde_json::to_string_pretty(&ScheduleDoc {
        horizon: schedule.horizon,
        departures: schedule.departures.clone(),
    })
    .expect("schedules serialize")
}

/// One violation in machine-readable form, with vertex and connection
/// names resolved.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ViolationDoc {
    pub kind: String,
    pub paths: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub vertex: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub connection: Option<(String, String)>,
    pub times: Vec<Time>,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DiagnosisDoc {
    pub valid: bool,
    pub violations: Vec<ViolationDoc>,
}

pub fn diagnosis_doc(instance: &Instance, diagnosis: &Diagnosis) -> DiagnosisDoc {
    DiagnosisDoc {
        valid: diagnosis.is_valid(),
        violations: diagnosis
            .violations
            .iter()
            .map(|v| violation_doc(instance, v))
            .collect(),
    }
}

fn violation_doc(instance: &Instance, v: &Violation) -> ViolationDoc {
    let g = instance.graph();
    let name = |v: VertexId| g.vertex(v).name.clone();
    let hop_ends = |p: usize, h: usize| {
        let vs = instance.paths()[p].vertices();
        (name(vs[h]), name(vs[h + 1]))
    };
    let mut doc = ViolationDoc {
        kind: v.kind().to_string(),
        paths: Vec::new(),
        vertex: None,
        connection: None,
        times: Vec::new(),
        message: render_violation(instance, v),
    };
    match *v {
        Violation::Monotonicity {
            path,
            hop,
            ready,
            departure,
        } => {
            doc.paths = vec![path.0];
            doc.connection = Some(hop_ends(path.0, hop));
            doc.times = vec![ready, departure];
        }
        Violation::Deadline {
            path,
            hop,
            arrival,
            deadline,
        } => {
            doc.paths = vec![path.0];
            doc.connection = Some(hop_ends(path.0, hop));
            doc.times = vec![arrival, deadline];
        }
        Violation::SameConnectionClash {
            connection,
            first,
            second,
            time,
        } => {
            let c = g.connection(connection);
            doc.paths = vec![first.0, second.0];
            doc.connection = Some((name(c.tail), name(c.head)));
            doc.times = vec![time];
        }
        Violation::HeadOnClash {
            connection,
            first,
            first_time,
            second,
            second_time,
        } => {
            let c = g.connection(connection);
            doc.paths = vec![first.0, second.0];
            doc.connection = Some((name(c.tail), name(c.head)));
            doc.times = vec![first_time, second_time];
        }
        Violation::Capacity {
            vertex,
            from,
            to,
            ref located,
            ..
        } => {
            doc.paths = located.iter().map(|p| p.0).collect();
            doc.vertex = Some(name(vertex));
            doc.times = (from..=to).collect();
        }
    }
    doc
}

/// One line of human-readable text per violation.
pub fn render_violation(instance: &Instance, v: &Violation) -> String {
    let g = instance.graph();
    let name = |v: VertexId| g.vertex(v).name.as_str();
    let hop = |p: usize, h: usize| {
        let vs = instance.paths()[p].vertices();
        format!("{} -> {}", name(vs[h]), name(vs[h + 1]))
    };
    match *v {
        Violation::Monotonicity {
            path,
            hop: h,
            ready,
            departure,
        } => format!(
            "monotonicity: path {} departs {} at {departure} before it is ready at {ready}",
            path.0,
            hop(path.0, h)
        ),
        Violation::Deadline {
            path,
            hop: h,
            arrival,
            deadline,
        } => format!(
            "deadline: path {} finishes {} at {arrival} after deadline {deadline}",
            path.0,
            hop(path.0, h)
        ),
        Violation::SameConnectionClash {
            connection,
            first,
            second,
            time,
        } => {
            let c = g.connection(connection);
            format!(
                "same-connection-clash: paths {} and {} both depart on {{{}, {}}} in the same direction at {time}",
                first.0,
                second.0,
                name(c.tail),
                name(c.head)
            )
        }
        Violation::HeadOnClash {
            connection,
            first,
            first_time,
            second,
            second_time,
        } => {
            let c = g.connection(connection);
            format!(
                "head-on-clash: paths {} (departs at {first_time}) and {} (departs at {second_time}) cross edge {{{}, {}}} in opposite directions less than {} apart",
                first.0,
                second.0,
                name(c.tail),
                name(c.head),
                c.head_on_gap()
            )
        }
        Violation::Capacity {
            vertex,
            from,
            to,
            capacity,
            ref located,
        } => {
            let when = if from == to { format!("at {from}") } else { format!("during {from}..={to}") };
            format!(
                "capacity: vertex {} hosts paths {:?} {when}, capacity {capacity}",
                name(vertex),
                located.iter().map(|p| p.0).collect::<Vec<_>>()
            )
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GeoVertexDoc {
    pub id: String,
    pub x: f64,
    pub y: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GeoConnectionDoc {
    pub tail: String,
    pub head: String,
    pub length_m: f64,
    pub oneway: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lanes: Option<u32>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PointDoc {
    pub x: f64,
    pub y: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GeoGraphDoc {
    pub vertices: Vec<GeoVertexDoc>,
    pub connections: Vec<GeoConnectionDoc>,
    pub rivers: Vec<Vec<PointDoc>>,
}

/// Reads a geo graph. Coordinates must be finite, connections must join
/// listed vertices and at least one river needs a point.
pub fn parse_geo(text: &str) -> Result<GeoGraph, IoError> {
    let doc: GeoGraphDoc = serde_json::from_str(text)?;
    let geo = |m: String| Err(IoError::Geo(m));
    if let Some(v) = doc.vertices.iter().find(|v| !v.x.is_finite() || !v.y.is_finite()) {
        return geo(format!("vertex `{}` has non-finite coordinates", v.id));
    }
    for c in &doc.connections {
        for end in [&c.tail, &c.head] {
            if !doc.vertices.iter().any(|v| &v.id == end) {
                return geo(format!("connection endpoint `{end}` is not a vertex"));
            }
        }
    }
    let points = doc.rivers.iter().flatten();
    if points.clone().next().is_none() {
        return geo("no river point".into());
    }
    if points.clone().any(|p| !p.x.is_finite() || !p.y.is_finite()) {
        return geo("river point with non-finite coordinates".into());
    }
    Ok(GeoGraph {
        vertices: doc
            .vertices
            .into_iter()
            .map(|v| GeoVertex { id: v.id, x: v.x, y: v.y })
            .collect(),
        connections: doc
            .connections
            .into_iter()
            .map(|c| GeoConnection {
                tail: c.tail,
                head: c.head,
                length_m: c.length_m,
                oneway: c.oneway,
                lanes: c.lanes,
            })
            .collect(),
        rivers: doc
            .rivers
            .into_iter()
            .map(|r| r.into_iter().map(|p| (p.x, p.y)).collect())
            .collect(),
    })
}
