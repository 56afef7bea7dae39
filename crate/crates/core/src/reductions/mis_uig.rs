//! Multicolored independent set on unit interval graphs to exogenous
//! decaying paths with unit capacities.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use super::{Gadget, ReductionError, ORACLE_LIMIT};
use crate::model::{Instance, Time, VertexId};

/// Color classes of closed intervals `[a, b]`. Intervals of one class are
/// pairwise disjoint.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct UnitIntervalInstance {
    classes: Vec<Vec<(Time, Time)>>,
}

fn intersect((a, b): (Time, Time), (c, d): (Time, Time)) -> bool {
    a <= d && c <= b
}

impl UnitIntervalInstance {
    pub fn new(classes: Vec<Vec<(Time, Time)>>) -> Result<Self, ReductionError> {
        for (i, class) in classes.iter().enumerate() {
            if class.is_empty() {
                return Err(ReductionError::EmptyClass(i + 1));
            }
            for (x, &iv) in class.iter().enumerate() {
                if iv.0 >= iv.1 {
                    return Err(ReductionError::EmptyInterval(iv.0, iv.1));
                }
                if class[x + 1..].iter().any(|&other| intersect(iv, other)) {
                    return Err(ReductionError::ClassNotIndependent(i + 1));
                }
            }
        }
        Ok(UnitIntervalInstance { classes })
    }

    /// Intervals `[a, a + 1]` from their left endpoints.
    pub fn from_unit_starts(starts: Vec<Vec<Time>>) -> Result<Self, ReductionError> {
        Self::new(
            starts
                .into_iter()
                .map(|class| class.into_iter().map(|a| (a, a + 1)).collect())
                .collect(),
        )
    }

    pub fn classes(&self) -> &[Vec<(Time, Time)>] {
        &self.classes
    }

    pub fn interval_count(&self) -> usize {
        self.classes.iter().map(Vec::len).sum()
    }

    /// Checks that all endpoints are at least 1 and pairwise at least two
    /// apart.
    pub fn check_spacing(&self) -> Result<(), ReductionError> {
        let mut ends: Vec<Time> = self.classes.iter().flatten().flat_map(|&(a, b)| [a, b]).collect();
        ends.sort_unstable();
        if let Some(&first) = ends.first() {
            if first < 1 {
                return Err(ReductionError::Spacing(first, first));
            }
        }
        match ends.windows(2).find(|w| w[1] - w[0] < 2) {
            Some(w) => Err(ReductionError::Spacing(w[0], w[1])),
            None => Ok(()),
        }
    }

    /// An equivalent instance with spaced endpoints. Endpoints are ranked with
    /// left endpoints before right endpoints on ties, so touching intervals
    /// keep intersecting, and rank `r` becomes `2r + 2`. Spaced instances are
    /// returned unchanged.
    pub fn spaced(&self) -> Self {
        if self.check_spacing().is_ok() {
            return self.clone();
        }
        // (value, is_right, class, index)
        let mut events: Vec<(Time, bool, usize, usize)> = Vec::new();
        for (c, class) in self.classes.iter().enumerate() {
            for (x, &(a, b)) in class.iter().enumerate() {
                events.push((a, false, c, x));
                events.push((b, true, c, x));
            }
        }
        events.sort_unstable();
        let mut classes = self.classes.clone();
        for (rank, &(_, right, c, x)) in events.iter().enumerate() {
            let value = 2 * rank as Time + 2;
            if right {
                classes[c][x].1 = value;
            } else {
                classes[c][x].0 = value;
            }
        }
        UnitIntervalInstance { classes }
    }
}

/// Builds the exogenous path whose routes can be scheduled iff one interval
/// per class can be chosen with all chosen intervals pairwise disjoint.
///
/// Left to right the path reads `x1 .. x_tau, l1 .. lk, v_left, v_star,
/// v_right, r1 .. rk, y_tau .. y1`; every traversal time is zero.
pub fn reduce_mis_uig(src: &UnitIntervalInstance) -> Result<Instance, ReductionError> {
    let src = src.spaced();
    src.check_spacing()?;
    let k = src.classes.len();
    let tau = src.classes.iter().flatten().map(|&(_, b)| b).max().unwrap_or(1);
    let t_max = tau as usize;

    let mut b = Gadget::default();
    let mut order = Vec::new();
    for t in 1..=t_max {
        order.push(b.vertex(format!("x{t}"), 1));
    }
    for i in 1..=k {
        order.push(b.vertex(format!("l{i}"), 1));
    }
    for name in ["v_left", "v_star", "v_right"] {
        order.push(b.vertex(name.into(), 1));
    }
    for i in 1..=k {
        order.push(b.vertex(format!("r{i}"), 1));
    }
    for t in (1..=t_max).rev() {
        order.push(b.vertex(format!("y{t}"), 1));
    }
    let len = order.len();
    for (pos, pair) in order.windows(2).enumerate() {
        let deadline = if pos + 1 < t_max {
            pos as Time + 1
        } else if pos >= len - t_max {
            (len - 1 - pos) as Time
        } else {
            tau
        };
        b.edge(pair[0], pair[1], 0, deadline);
    }

    let position = |v: VertexId| order.iter().position(|&w| w == v).expect("vertex on the path");
    let route = |from: VertexId, to: VertexId| -> Vec<VertexId> {
        let (s, t) = (position(from), position(to));
        if s <= t {
            order[s..=t].to_vec()
        } else {
            order[t..=s].iter().rev().copied().collect()
        }
    };
    let x = |t: Time| b.id(&format!("x{t}"));
    let y = |t: Time| b.id(&format!("y{t}"));
    let left = |i: usize| b.id(&format!("l{i}"));
    let right = |i: usize| b.id(&format!("r{i}"));
    let (v_left, v_right) = (b.id("v_left"), b.id("v_right"));

    let mut routes = Vec::new();
    for (c, class) in src.classes.iter().enumerate() {
        let i = c + 1;
        for _ in 1..class.len() {
            routes.push(route(left(i), v_left));
        }
        for _ in 1..class.len() {
            routes.push(route(right(i), v_right));
        }
        routes.push(route(left(i), right(i)));
    }

    let starts: Vec<BTreeSet<Time>> = src.classes.iter().map(|c| c.iter().map(|iv| iv.0).collect()).collect();
    let ends: Vec<BTreeSet<Time>> = src.classes.iter().map(|c| c.iter().map(|iv| iv.1).collect()).collect();
    // Smallest color whose left label set contains t: L_i is the union of A_1..A_i.
    let first_left = |t: Time| starts.iter().position(|a| a.contains(&t)).map(|c| c + 1);
    // Largest color whose right label set contains t: R_i is the union of B_i..B_k.
    let last_right = |t: Time| ends.iter().rposition(|s| s.contains(&t)).map(|c| c + 1);
    for t in 1..=tau {
        let from = match first_left(t) {
            Some(1) => x(tau),
            None => v_left,
            Some(i) => left(i - 1),
        };
        routes.push(route(from, x(t)));
    }
    for t in 1..=tau {
        let from = match last_right(t) {
            Some(i) if i == k => {
                if t == tau {
                    continue;
                }
                y(tau)
            }
            None => v_right,
            Some(i) => right(i + 1),
        };
        routes.push(route(from, y(t)));
    }
    for r in routes {
        b.path(r);
    }
    b.finish(tau)
}

/// Whether one interval per class can be chosen pairwise disjoint.
pub fn oracle_mis_uig(src: &UnitIntervalInstance) -> Result<bool, ReductionError> {
    let size = src.interval_count();
    if size > ORACLE_LIMIT {
        return Err(ReductionError::TooLarge {
            size,
            limit: ORACLE_LIMIT,
        });
    }
    fn extend(classes: &[Vec<(Time, Time)>], chosen: &mut Vec<(Time, Time)>) -> bool {
        let Some((class, rest)) = classes.split_first() else {
            return true;
        };
        for &iv in class {
            if chosen.iter().all(|&other| !intersect(iv, other)) {
                chosen.push(iv);
                if extend(rest, chosen) {
                    return true;
                }
                chosen.pop();
            }
        }
        false
    }
    Ok(extend(&src.classes, &mut vec![]))
}
