//! Artificial decaying paths and stars.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{check_factor, finish, hop_in, random_link, GenError, MAX_RETRIES};
use crate::model::{Connection, Instance, VertexId};
use crate::rounding::round_half_up;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PathGenParams {
    pub n: usize,
    /// Routes per vertex.
    pub p_star: f64,
    /// Maximum route length per vertex.
    pub l_star: f64,
    /// Capacity scale.
    pub c_star: f64,
    /// Deadline scale.
    pub d_star: f64,
    pub seed: u64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StarGenParams {
    /// Number of vertices, center included.
    pub n: usize,
    pub p_star: f64,
    pub c_star: f64,
    pub d_star: f64,
    pub seed: u64,
}

/// Factor levels of the path design.
pub const PATH_N: [usize; 3] = [8, 12, 16];
pub const PATH_P: [f64; 4] = [0.5, 0.67, 0.83, 1.0];
pub const PATH_L: [f64; 4] = [0.33, 0.44, 0.55, 0.66];
pub const STAR_P: [f64; 4] = [0.5, 1.0, 1.5, 2.0];
pub const C_LEVELS: [f64; 4] = [0.1, 0.4, 0.7, 1.0];
pub const D_LEVELS: [f64; 4] = [0.2, 0.47, 0.73, 1.0];
/// Instances per constellation.
pub const REPLICATES: usize = 10;

fn names(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("v{i}")).collect()
}

fn route_count(p_star: f64, n: usize) -> usize {
    round_half_up(p_star * n as f64).max(0) as usize
}

/// A decaying path `v1 - v2 - ... - vn` with random routes.
pub fn gen_path_instance(params: &PathGenParams) -> Result<Instance, GenError> {
    let n = params.n;
    if n < 2 {
        return Err(GenError::TooFewVertices(n));
    }
    check_factor("p*", params.p_star, f64::MAX)?;
    check_factor("l*", params.l_star, f64::MAX)?;
    check_factor("c*", params.c_star, 1.0)?;
    check_factor("d*", params.d_star, 1.0)?;
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let mut connections = Vec::new();
    for i in 0..n - 1 {
        random_link(&mut rng, VertexId(i), VertexId(i + 1), &mut connections);
    }
    let max_len = round_half_up(params.l_star * n as f64).max(0) as usize;
    let count = route_count(params.p_star, n);
    let mut routes = Vec::with_capacity(count);
    for _ in 0..count {
        routes.push(sample_path_route(&mut rng, &connections, n, max_len)?);
    }
    finish(names(n), connections, routes, params.c_star, params.d_star)
}

/// Walks from `source` one step at a time in direction `step` while the next
/// hop is traversable and the length stays within `max_len`.
fn walk(connections: &[Connection], n: usize, source: usize, step: isize, max_len: usize) -> Vec<VertexId> {
    let mut route = vec![VertexId(source)];
    let mut cur = source as isize;
    while route.len() - 1 < max_len {
        let next = cur + step;
        if next < 0 || next >= n as isize {
            break;
        }
        if hop_in(connections, VertexId(cur as usize), VertexId(next as usize)).is_none() {
            break;
        }
        route.push(VertexId(next as usize));
        cur = next;
    }
    route
}

fn sample_path_route(
    rng: &mut ChaCha8Rng,
    connections: &[Connection],
    n: usize,
    max_len: usize,
) -> Result<Vec<VertexId>, GenError> {
    for _ in 0..MAX_RETRIES {
        let source = rng.gen_range(0..n);
        let left = walk(connections, n, source, -1, max_len);
        let right = walk(connections, n, source, 1, max_len);
        let route = match left.len().cmp(&right.len()) {
            core::cmp::Ordering::Greater => left,
            core::cmp::Ordering::Less => right,
            core::cmp::Ordering::Equal => {
                if rng.gen_bool(0.5) {
                    left
                } else {
                    right
                }
            }
        };
        if route.len() >= 2 {
            return Ok(route);
        }
    }
    Err(GenError::NoRoute(MAX_RETRIES))
}

/// A decaying star with center `v1` and leaves `v2..=vn`.
pub fn gen_star_instance(params: &StarGenParams) -> Result<Instance, GenError> {
    let n = params.n;
    if n < 2 {
        return Err(GenError::TooFewVertices(n));
    }
    check_factor("p*", params.p_star, f64::MAX)?;
    check_factor("c*", params.c_star, 1.0)?;
    check_factor("d*", params.d_star, 1.0)?;
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let center = VertexId(0);
    let mut connections = Vec::new();
    for leaf in 1..n {
        random_link(&mut rng, center, VertexId(leaf), &mut connections);
    }
    let count = route_count(params.p_star, n);
    let mut routes = Vec::with_capacity(count);
    for _ in 0..count {
        routes.push(sample_star_route(&mut rng, &connections, n)?);
    }
    finish(names(n), connections, routes, params.c_star, params.d_star)
}

fn sample_star_route(rng: &mut ChaCha8Rng, connections: &[Connection], n: usize) -> Result<Vec<VertexId>, GenError> {
    let center = VertexId(0);
    let from_center: Vec<VertexId> = (1..n)
        .map(VertexId)
        .filter(|&l| hop_in(connections, center, l).is_some())
        .collect();
    for _ in 0..MAX_RETRIES {
        let source = VertexId(rng.gen_range(0..n));
        if source == center {
            if from_center.is_empty() {
                continue;
            }
            let sink = from_center[rng.gen_range(0..from_center.len())];
            return Ok(vec![center, sink]);
        }
        let to_center = hop_in(connections, source, center).is_some();
        if rng.gen_bool(0.5) {
            if to_center {
                return Ok(vec![source, center]);
            }
        } else {
            let others: Vec<VertexId> = from_center.iter().copied().filter(|&l| l != source).collect();
            if to_center && !others.is_empty() {
                let sink = others[rng.gen_range(0..others.len())];
                return Ok(vec![source, center, sink]);
            }
        }
    }
    Err(GenError::NoRoute(MAX_RETRIES))
}

fn level(x: f64) -> String {
    let s = format!("{x}");
    if s.contains('.') {
        s
    } else {
        format!("{s}.0")
    }
}

/// Seed of the `index`-th grid instance.
fn grid_seed(base: u64, index: usize) -> u64 {
    base.wrapping_mul(0x9E37_79B9_7F4A_7C15).wrapping_add(index as u64)
}

/// Full factorial path design; names have the form
/// `I_n_p*_c*_d*_l*_x`.
pub fn path_grid(base_seed: u64) -> Vec<(String, PathGenParams)> {
    let mut out = Vec::new();
    for &n in &PATH_N {
        for &p in &PATH_P {
            for &c in &C_LEVELS {
                for &d in &D_LEVELS {
                    for &l in &PATH_L {
                        for x in 0..REPLICATES {
                            let name = format!("I_{n}_{}_{}_{}_{}_{x}", level(p), level(c), level(d), level(l));
                            let seed = grid_seed(base_seed, out.len());
                            out.push((
                                name,
                                PathGenParams {
                                    n,
                                    p_star: p,
                                    l_star: l,
                                    c_star: c,
                                    d_star: d,
                                    seed,
                                },
                            ));
                        }
                    }
                }
            }
        }
    }
    out
}

/// Full factorial star design; names have the form `I_n_p*_c*_d*_x`.
pub fn star_grid(base_seed: u64) -> Vec<(String, StarGenParams)> {
    let mut out = Vec::new();
    for &n in &PATH_N {
        for &p in &STAR_P {
            for &c in &C_LEVELS {
                for &d in &D_LEVELS {
                    for x in 0..REPLICATES {
                        let name = format!("I_{n}_{}_{}_{}_{x}", level(p), level(c), level(d));
                        let seed = grid_seed(base_seed, out.len());
                        out.push((
                            name,
                            StarGenParams {
                                n,
                                p_star: p,
                                c_star: c,
                                d_star: d,
                                seed,
                            },
                        ));
                    }
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::Shape;

    fn path_params(seed: u64) -> PathGenParams {
        PathGenParams {
            n: 8,
            p_star: 1.0,
            l_star: 0.44,
            c_star: 1.0,
            d_star: 0.73,
            seed,
        }
    }

    #[test]
    fn path_family() {
        let inst = gen_path_instance(&path_params(3)).unwrap();
        assert_eq!(inst.paths().len(), 8);
        assert_eq!(inst.graph().shape(), Shape::Path);
        assert!(inst.is_uncapacitated());
        for p in inst.paths() {
            assert!(p.hop_count() <= 4);
        }
        assert_eq!(inst, gen_path_instance(&path_params(3)).unwrap());
    }

    #[test]
    fn star_family() {
        let params = StarGenParams {
            n: 8,
            p_star: 2.0,
            c_star: 0.4,
            d_star: 1.0,
            seed: 11,
        };
        let inst = gen_star_instance(&params).unwrap();
        assert_eq!(inst.paths().len(), 16);
        assert_eq!(inst.graph().star_center(), Some(VertexId(0)));
        assert!(inst.paths().iter().all(|p| p.position(VertexId(0)).is_some()));
        assert_eq!(inst, gen_star_instance(&params).unwrap());
    }

    #[test]
    fn grid_sizes() {
        let paths = path_grid(0);
        assert_eq!(paths.len(), 7680);
        assert_eq!(star_grid(0).len(), 1920);
        assert_eq!(paths[0].0, "I_8_0.5_0.1_0.2_0.33_0");
    }

    #[test]
    fn too_small() {
        let mut p = path_params(0);
        p.n = 1;
        assert_eq!(gen_path_instance(&p), Err(GenError::TooFewVertices(1)));
    }
}
