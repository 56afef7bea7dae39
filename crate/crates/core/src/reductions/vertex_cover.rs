//! Vertex cover to decaying stars with unit capacities.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use super::{Gadget, ReductionError, SimpleGraph, ORACLE_LIMIT};
use crate::model::{Instance, Time};

/// Does the graph have a vertex cover with at most `k` vertices?
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct VcInstance {
    graph: SimpleGraph,
    k: usize,
}

impl VcInstance {
    pub fn new(graph: SimpleGraph, k: usize) -> Result<Self, ReductionError> {
        let n = graph.vertex_count();
        if k > n {
            return Err(ReductionError::ParameterTooLarge { k, n });
        }
        Ok(VcInstance { graph, k })
    }

    pub fn graph(&self) -> &SimpleGraph {
        &self.graph
    }

    pub fn k(&self) -> usize {
        self.k
    }
}

/// Edge count below which the gadget breaks: the last first-phase verifier
/// reaches its endpoint at `2m + 2` while the earliest cover vertex route
/// leaves at `3m`, so the two share the endpoint unless `m >= 3`.
pub const MIN_EDGES: usize = 3;

/// Drops isolated vertices and caps `k` at the remaining vertex count. Graphs
/// with fewer than [`MIN_EDGES`] edges get disjoint extra edges, each raising
/// `k` by one. The answer does not change, and afterwards every gadget
/// quantity is in range.
pub fn normalize_vc(src: &VcInstance) -> VcInstance {
    let deg = src.graph.degrees();
    let mut relabel = vec![usize::MAX; deg.len()];
    let mut n = 0;
    for (v, &d) in deg.iter().enumerate() {
        if d > 0 {
            relabel[v] = n;
            n += 1;
        }
    }
    let mut edges: Vec<_> = src
        .graph
        .edges()
        .iter()
        .map(|&(a, b)| (relabel[a], relabel[b]))
        .collect();
    let mut k = src.k.min(n);
    while !edges.is_empty() && edges.len() < MIN_EDGES {
        edges.push((n, n + 1));
        n += 2;
        k += 1;
    }
    VcInstance {
        graph: SimpleGraph::new(n, edges).expect("relabelling keeps the graph simple"),
        k,
    }
}

/// Builds the star whose routes can be scheduled iff the graph has a vertex
/// cover of size `k`. The source is normalized first with [`normalize_vc`].
pub fn reduce_vertex_cover(src: &VcInstance) -> Result<Instance, ReductionError> {
    let src = normalize_vc(src);
    let (n, m, k) = (src.graph.vertex_count(), src.graph.edges().len(), src.k);
    let (n_t, m_t, k_t) = (n as Time, m as Time, k as Time);
    let tau = 7 * m_t + k_t + 3;
    let mut b = Gadget::default();
    let star = b.vertex("v_star".into(), 1);
    let mut vs: Vec<_> = Vec::with_capacity(n);
    for v in 1..=n {
        let main = b.vertex(format!("v{v}"), 1);
        let prime = b.vertex(format!("v{v}_p"), 1);
        b.edge(main, star, m_t + 1, tau);
        b.edge(prime, star, 0, 4 * m_t + k_t);
        b.path(vec![main, star, prime]);
        vs.push(main);
    }
    for (i, &(x, y)) in src.graph.edges().iter().enumerate() {
        let i_t = i as Time + 1;
        let ve = b.vertex(format!("e{}", i + 1), 1);
        let vp = b.vertex(format!("e{}_p", i + 1), 1);
        b.edge(ve, star, i_t, 5 * m_t + k_t + 2 + i_t);
        b.edge(vp, star, 5 * m_t + k_t - i_t, 5 * m_t + k_t - i_t + 1);
        b.path(vec![vp, star, ve]);
        for v in [x, y] {
            b.path(vec![ve, star, vs[v]]);
        }
    }
    let blockers = (3 * m + k).saturating_sub(n + 1);
    for j in 1..=blockers as Time {
        let theta = m_t + n_t - k_t + j;
        let blocker = b.vertex(format!("b{j}"), 1);
        b.edge(blocker, star, theta, theta + 1);
        b.path(vec![blocker, star]);
    }
    b.finish(tau)
}

/// Whether the graph has a vertex cover with at most `k` vertices.
pub fn oracle_vc(src: &VcInstance) -> Result<bool, ReductionError> {
    let n = src.graph.vertex_count();
    if n > ORACLE_LIMIT {
        return Err(ReductionError::TooLarge {
            size: n,
            limit: ORACLE_LIMIT,
        });
    }
    Ok((0u64..1 << n).any(|mask| mask.count_ones() as usize <= src.k && src.graph.is_cover(mask)))
}
