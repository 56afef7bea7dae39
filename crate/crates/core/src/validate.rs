//! Itemized validity checking of schedules.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;
use core::fmt;

use thiserror::Error;

use crate::model::{occupancy_at, ConnectionId, Instance, PathId, Temporalization, Time, VertexId};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScheduleError {
    #[error("schedule has {found} paths, instance has {expected}")]
    PathCount { expected: usize, found: usize },
    #[error("path {path} has {found} departures for {expected} hops")]
    HopCount {
        path: usize,
        expected: usize,
        found: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ViolationKind {
    Monotonicity,
    Deadline,
    SameConnectionClash,
    HeadOnClash,
    Capacity,
}

impl fmt::Display for ViolationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ViolationKind::Monotonicity => "monotonicity",
            ViolationKind::Deadline => "deadline",
            ViolationKind::SameConnectionClash => "same-connection-clash",
            ViolationKind::HeadOnClash => "head-on-clash",
            ViolationKind::Capacity => "capacity",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    /// A hop departs before the route is ready: step 1 for the first hop,
    /// the previous arrival otherwise.
    Monotonicity {
        path: PathId,
        hop: usize,
        ready: Time,
        departure: Time,
    },
    Deadline {
        path: PathId,
        hop: usize,
        arrival: Time,
        deadline: Time,
    },
    /// Two routes depart along the same connection in the same direction
    /// at the same step.
    SameConnectionClash {
        connection: ConnectionId,
        first: PathId,
        second: PathId,
        time: Time,
    },
    /// Two routes cross an undirected connection in opposite directions too
    /// close together.
    HeadOnClash {
        connection: ConnectionId,
        first: PathId,
        first_time: Time,
        second: PathId,
        second_time: Time,
    },
    /// More routes than allowed are located at `vertex` during `from..=to`.
    Capacity {
        vertex: VertexId,
        from: Time,
        to: Time,
        capacity: u32,
        located: Vec<PathId>,
    },
}

impl Violation {
    pub fn kind(&self) -> ViolationKind {
        match self {
            Violation::Monotonicity { .. } => ViolationKind::Monotonicity,
            Violation::Deadline { .. } => ViolationKind::Deadline,
            Violation::SameConnectionClash { .. } => ViolationKind::SameConnectionClash,
            Violation::HeadOnClash { .. } => ViolationKind::HeadOnClash,
            Violation::Capacity { .. } => ViolationKind::Capacity,
        }
    }
}

/// All violations found in a schedule; empty iff the schedule is valid.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Diagnosis {
    pub violations: Vec<Violation>,
}

impl Diagnosis {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn count(&self, kind: ViolationKind) -> usize {
        self.violations.iter().filter(|v| v.kind() == kind).count()
    }
}

/// Validates `schedule` with every deadline raised by `horizon - tau`.
pub fn validate(instance: &Instance, schedule: &Temporalization) -> Result<Diagnosis, ScheduleError> {
    let slack = (schedule.horizon - instance.tau()).max(0);
    validate_with_slack(instance, schedule, slack)
}

/// Validates `schedule` with every deadline raised by `slack`.
pub fn validate_with_slack(
    instance: &Instance,
    schedule: &Temporalization,
    slack: Time,
) -> Result<Diagnosis, ScheduleError> {
    check_shape(instance, schedule)?;
    let g = instance.graph();
    let mut violations = Vec::new();

    for (p, path) in instance.paths().iter().enumerate() {
        let deps = &schedule.departures[p];
        let mut ready = 1;
        for (h, &c) in path.hops().iter().enumerate() {
            let conn = g.connection(c);
            if deps[h] < ready {
                violations.push(Violation::Monotonicity {
                    path: PathId(p),
                    hop: h,
                    ready,
                    departure: deps[h],
                });
            }
            let arrival = deps[h] + conn.theta;
            if arrival > conn.deadline + slack {
                violations.push(Violation::Deadline {
                    path: PathId(p),
                    hop: h,
                    arrival,
                    deadline: conn.deadline + slack,
                });
            }
            ready = arrival;
        }
    }

    check_clashes(instance, schedule, &mut violations);
    check_capacities(instance, schedule, &mut violations);
    Ok(Diagnosis { violations })
}

fn check_shape(instance: &Instance, schedule: &Temporalization) -> Result<(), ScheduleError> {
    if schedule.departures.len() != instance.paths().len() {
        return Err(ScheduleError::PathCount {
            expected: instance.paths().len(),
            found: schedule.departures.len(),
        });
    }
    for (p, path) in instance.paths().iter().enumerate() {
        if schedule.departures[p].len() != path.hop_count() {
            return Err(ScheduleError::HopCount {
                path: p,
                expected: path.hop_count(),
                found: schedule.departures[p].len(),
            });
        }
    }
    Ok(())
}

fn check_clashes(instance: &Instance, schedule: &Temporalization, out: &mut Vec<Violation>) {
    let g = instance.graph();
    // (departure, path) per connection and direction.
    let mut forward: Vec<Vec<(Time, PathId)>> = alloc::vec![Vec::new(); g.connections().len()];
    let mut backward: Vec<Vec<(Time, PathId)>> = alloc::vec![Vec::new(); g.connections().len()];
    for (p, path) in instance.paths().iter().enumerate() {
        for (h, &c) in path.hops().iter().enumerate() {
            let entry = (schedule.departures[p][h], PathId(p));
            if path.hop_is_forward(g, h) {
                forward[c.0].push(entry);
            } else {
                backward[c.0].push(entry);
            }
        }
    }
    for (c, conn) in g.connections().iter().enumerate() {
        let connection = ConnectionId(c);
        for list in [&mut forward[c], &mut backward[c]] {
            list.sort_unstable();
            for (i, &(t, first)) in list.iter().enumerate() {
                for &(u, second) in list[i + 1..].iter().take_while(|(u, _)| *u == t) {
                    debug_assert_eq!(u, t);
                    out.push(Violation::SameConnectionClash {
                        connection,
                        first,
                        second,
                        time: t,
                    });
                }
            }
        }
        if conn.is_edge() {
            let gap = conn.head_on_gap();
            for &(t, first) in &forward[c] {
                let start = backward[c].partition_point(|&(u, _)| u <= t - gap);
                for &(u, second) in backward[c][start..].iter().take_while(|(u, _)| *u < t + gap) {
                    out.push(Violation::HeadOnClash {
                        connection,
                        first,
                        first_time: t,
                        second,
                        second_time: u,
                    });
                }
            }
        }
    }
}

fn check_capacities(instance: &Instance, schedule: &Temporalization, out: &mut Vec<Violation>) {
    let g = instance.graph();
    let n = g.vertex_count();
    let mut events: Vec<Vec<(Time, bool, PathId)>> = alloc::vec![Vec::new(); n];
    for (p, path) in instance.paths().iter().enumerate() {
        for (pos, &v) in path.vertices().iter().enumerate() {
            let iv = occupancy_at(g, path, &schedule.departures[p], pos);
            if iv.is_empty() {
                continue;
            }
            // Closing events at `hi + 1` sort before openings at the same step.
            events[v.0].push((iv.lo, true, PathId(p)));
            events[v.0].push((iv.hi + 1, false, PathId(p)));
        }
    }
    for (v, list) in events.iter_mut().enumerate() {
        let capacity = g.capacity(VertexId(v));
        if list.len() / 2 <= capacity as usize {
            continue;
        }
        list.sort_unstable();
        let mut active: BTreeSet<PathId> = BTreeSet::new();
        let mut i = 0;
        while i < list.len() {
            let t = list[i].0;
            while i < list.len() && list[i].0 == t {
                let (_, open, p) = list[i];
                if open {
                    active.insert(p);
                } else {
                    active.remove(&p);
                }
                i += 1;
            }
            if active.len() > capacity as usize {
                let to = list[i].0 - 1;
                let located: Vec<PathId> = active.iter().copied().collect();
                match out.last_mut() {
                    Some(Violation::Capacity {
                        vertex,
                        to: prev_to,
                        located: prev,
                        ..
                    }) if vertex.0 == v && *prev_to + 1 == t && *prev == located => *prev_to = to,
                    _ => out.push(Violation::Capacity {
                        vertex: VertexId(v),
                        from: t,
                        to,
                        capacity,
                        located,
                    }),
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{Connection, DecayingGraph, Vertex};
    use alloc::vec;

    fn two_vertices(theta: Time, deadline: Time, capacity: u32) -> DecayingGraph {
        DecayingGraph::new(
            vec![Vertex::new("u", capacity), Vertex::new("v", capacity)],
            vec![Connection::edge(VertexId(0), VertexId(1), theta, deadline)],
            deadline,
        )
        .unwrap()
    }

    #[test]
    fn same_direction_same_time_clashes() {
        let inst = Instance::new(
            two_vertices(0, 1, 2),
            vec![vec![VertexId(0), VertexId(1)], vec![VertexId(0), VertexId(1)]],
        )
        .unwrap();
        let d = validate(&inst, &Temporalization::new(1, vec![vec![1], vec![1]])).unwrap();
        assert_eq!(d.violations.len(), 1);
        assert_eq!(d.count(ViolationKind::SameConnectionClash), 1);
    }

    #[test]
    fn opposite_directions_too_close_clash() {
        let inst = Instance::new(
            two_vertices(1, 2, 2),
            vec![vec![VertexId(0), VertexId(1)], vec![VertexId(1), VertexId(0)]],
        )
        .unwrap();
        let d = validate(&inst, &Temporalization::new(2, vec![vec![1], vec![1]])).unwrap();
        assert_eq!(d.count(ViolationKind::HeadOnClash), 1);
        assert_eq!(d.violations.len(), 1);
    }

    #[test]
    fn empty_instance_is_valid() {
        let inst = Instance::new(two_vertices(0, 1, 1), vec![]).unwrap();
        assert!(validate(&inst, &Temporalization::new(1, vec![])).unwrap().is_valid());
    }

    #[test]
    fn capacity_breach_lists_located_paths() {
        let g = DecayingGraph::new(
            vec![Vertex::new("a", 3), Vertex::new("b", 2), Vertex::new("c", 3)],
            vec![
                Connection::arc(VertexId(0), VertexId(1), 1, 9),
                Connection::arc(VertexId(1), VertexId(2), 1, 9),
            ],
            9,
        )
        .unwrap();
        let route = vec![VertexId(0), VertexId(1), VertexId(2)];
        let inst = Instance::new(g, vec![route.clone(), route.clone(), route]).unwrap();
        let s = Temporalization::new(9, vec![vec![1, 4], vec![2, 5], vec![3, 6]]);
        let d = validate(&inst, &s).unwrap();
        assert_eq!(
            d.violations,
            vec![Violation::Capacity {
                vertex: VertexId(1),
                from: 4,
                to: 4,
                capacity: 2,
                located: vec![PathId(0), PathId(1), PathId(2)],
            }]
        );
    }

    #[test]
    fn monotonicity_and_deadline() {
        let inst = Instance::new(two_vertices(2, 3, 1), vec![vec![VertexId(0), VertexId(1)]]).unwrap();
        let d = validate(&inst, &Temporalization::new(3, vec![vec![0]])).unwrap();
        assert_eq!(d.count(ViolationKind::Monotonicity), 1);
        let d = validate(&inst, &Temporalization::new(3, vec![vec![2]])).unwrap();
        assert_eq!(d.count(ViolationKind::Deadline), 1);
        let d = validate(&inst, &Temporalization::new(4, vec![vec![2]])).unwrap();
        assert!(d.is_valid());
    }

    #[test]
    fn missing_assignment_is_an_error() {
        let inst = Instance::new(two_vertices(0, 1, 1), vec![vec![VertexId(0), VertexId(1)]]).unwrap();
        assert!(validate(&inst, &Temporalization::new(1, vec![vec![]])).is_err());
        assert!(validate(&inst, &Temporalization::new(1, vec![])).is_err());
    }
}
