//! Independent set on cubic graphs to capacitated decaying stars with
//! lifetime 27.

use alloc::format;
use alloc::vec;

use super::{Gadget, ReductionError, SimpleGraph, ORACLE_LIMIT};
use crate::model::{Instance, Time};

pub const CUBIC_TAU: Time = 27;

/// A graph in which every vertex has exactly three neighbours.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CubicGraph(SimpleGraph);

impl CubicGraph {
    pub fn new(graph: SimpleGraph) -> Result<Self, ReductionError> {
        if let Some((vertex, &degree)) = graph.degrees().iter().enumerate().find(|(_, &d)| d != 3) {
            return Err(ReductionError::NotCubic { vertex, degree });
        }
        Ok(CubicGraph(graph))
    }

    pub fn graph(&self) -> &SimpleGraph {
        &self.0
    }
}

/// Room left at the center at time step `i` next to the blockers that arrive
/// there at `i`.
pub fn table2_room(i: Time, n: usize, m: usize, k: usize) -> usize {
    let free = n - k;
    match i {
        1 => n,
        2..=4 => k,
        5 => 2 * k,
        6 => 3 * k,
        7 => 4 * k + m,
        8 => m,
        9..=16 => 0,
        17 => free,
        18 => 2 * free,
        19 => 3 * free,
        20 => 3 * free + m,
        _ => 3 * free,
    }
}

/// Builds the star whose routes can be scheduled iff the cubic graph has an
/// independent set of size `k`.
///
/// Blockers of group `i` are forced to reach the center exactly at step `i`,
/// which fills it up to the room of [`table2_room`]. The three edge routes
/// are `v_e -> v_e''`, `v_e -> v_e_dag` and `v_e_ddag -> v_e`.
pub fn reduce_cubic_is(src: &CubicGraph, k: usize) -> Result<Instance, ReductionError> {
    let g = src.graph();
    let (n, m) = (g.vertex_count(), g.edges().len());
    if k > n {
        return Err(ReductionError::ParameterTooLarge { k, n });
    }
    let cap = (2 * m + 3 * n + 4 * k) as u32;
    let mut b = Gadget::default();
    let star = b.vertex("v_star".into(), cap);
    let mut vs = vec![];
    for v in 1..=n {
        let main = b.vertex(format!("v{v}"), 2);
        let prime = b.vertex(format!("v{v}_p"), 2);
        b.edge(main, star, 4, 19);
        b.edge(prime, star, 0, 1);
        b.path(vec![prime, star, main]);
        vs.push(main);
    }
    for (e, &(x, y)) in g.edges().iter().enumerate() {
        let e = e + 1;
        let ve = b.vertex(format!("e{e}"), 2);
        let dd = b.vertex(format!("e{e}_pp"), 2);
        let dag = b.vertex(format!("e{e}_dag"), 2);
        let ddag = b.vertex(format!("e{e}_ddag"), 2);
        b.edge(ve, star, 6, 27);
        b.edge(dd, star, 0, 7);
        b.edge(dag, star, 0, 20);
        b.edge(ddag, star, 7, 8);
        b.path(vec![ve, star, dd]);
        b.path(vec![ve, star, dag]);
        b.path(vec![ddag, star, ve]);
        for v in [x, y] {
            b.path(vec![vs[v], star, ve]);
        }
    }
    for i in 1..=CUBIC_TAU {
        let count = cap as usize - table2_room(i, n, m, k);
        for x in 1..=count {
            let blocker = b.vertex(format!("b{i}_{x}"), 2);
            b.edge(blocker, star, i - 1, i);
            b.path(vec![blocker, star]);
        }
    }
    b.finish(CUBIC_TAU)
}

/// Whether the graph has an independent set of size at least `k`.
pub fn oracle_is(graph: &SimpleGraph, k: usize) -> Result<bool, ReductionError> {
    let n = graph.vertex_count();
    if n > ORACLE_LIMIT {
        return Err(ReductionError::TooLarge {
            size: n,
            limit: ORACLE_LIMIT,
        });
    }
    Ok((0u64..1 << n).any(|mask| mask.count_ones() as usize >= k && graph.is_independent(mask)))
}
