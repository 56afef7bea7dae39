use alloc::vec;
use alloc::vec::Vec;

use super::ReductionError;

/// Simple undirected graph on vertices `0..n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SimpleGraph {
    n: usize,
    edges: Vec<(usize, usize)>,
}

impl SimpleGraph {
    pub fn new(n: usize, edges: Vec<(usize, usize)>) -> Result<Self, ReductionError> {
        let mut seen = Vec::with_capacity(edges.len());
        for &(a, b) in &edges {
            for v in [a, b] {
                if v >= n {
                    return Err(ReductionError::VertexOutOfRange(v));
                }
            }
            if a == b {
                return Err(ReductionError::SelfLoop(a));
            }
            let key = (a.min(b), a.max(b));
            if seen.contains(&key) {
                return Err(ReductionError::DuplicateEdge(key.0, key.1));
            }
            seen.push(key);
        }
        Ok(SimpleGraph { n, edges })
    }

    pub fn complete(n: usize) -> Self {
        let edges = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
        SimpleGraph { n, edges }
    }

    /// The 3-dimensional hypercube.
    pub fn cube() -> Self {
        let edges = (0..8usize)
            .flat_map(|a| [1, 2, 4].into_iter().map(move |bit| (a, a ^ bit)))
            .filter(|&(a, b)| a < b)
            .collect();
        SimpleGraph { n: 8, edges }
    }

    /// Every simple graph on `n` labelled vertices.
    pub fn all_on(n: usize) -> Vec<Self> {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
        (0u32..1 << pairs.len())
            .map(|mask| SimpleGraph {
                n,
                edges: pairs
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask >> i & 1 == 1)
                    .map(|(_, &e)| e)
                    .collect(),
            })
            .collect()
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.n];
        for &(a, b) in &self.edges {
            deg[a] += 1;
            deg[b] += 1;
        }
        deg
    }

    /// Whether no edge has both endpoints in the vertex set `mask`.
    pub fn is_independent(&self, mask: u64) -> bool {
        self.edges.iter().all(|&(a, b)| mask >> a & 1 == 0 || mask >> b & 1 == 0)
    }

    /// Whether every edge has an endpoint in the vertex set `mask`.
    pub fn is_cover(&self, mask: u64) -> bool {
        self.edges.iter().all(|&(a, b)| mask >> a & 1 == 1 || mask >> b & 1 == 1)
    }
}
