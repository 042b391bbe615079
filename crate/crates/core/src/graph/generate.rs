use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::cycles::count_cycles_up_to;
use super::{GraphError, MixedGraph};

/// Chain of `d` directed cycles of even length `len = 2l`.
///
/// Vertex `v_{i,k}` (cycle `i` in `0..d`, position `k` in `0..len`) is
/// numbered `i * len + k + 1`. Each cycle `v_{i,0} -> ... -> v_{i,len-1} -> v_{i,0}`
/// is joined to the next by `v_{i,l} -> v_{i+1,0}`.
pub fn gen_cycle_chain(d: usize, len: usize) -> Result<MixedGraph, GraphError> {
    if d == 0 || len < 2 || !len.is_multiple_of(2) {
        return Err(GraphError::InvalidParameters(format!(
            "cycle chain needs d >= 1 and an even length >= 2 (got d={d}, length={len})"
        )));
    }
    let half = len / 2;
    let id = |i: usize, k: usize| i * len + k + 1;
    let mut edges = Vec::with_capacity(d * len + d - 1);
    for i in 0..d {
        for k in 0..len {
            edges.push((id(i, k), id(i, (k + 1) % len)));
        }
        if i + 1 < d {
            edges.push((id(i, half), id(i + 1, 0)));
        }
    }
    MixedGraph::new(d * len, edges, [])
}

/// Parameters of a random mixed graph with a prescribed number of directed
/// cycles.
#[derive(Clone, Debug, PartialEq)]
pub struct ErdosRenyiParams {
    pub n: usize,
    pub p_directed: f64,
    pub p_bidirected: f64,
    pub cycles: usize,
    pub seed: u64,
    pub max_attempts: u64,
}

/// Samples `D` per ordered pair and `B` per unordered pair, rejecting draws
/// until `D` has exactly `cycles` simple cycles. All attempts draw from one
/// seeded stream, so the result is a function of the parameters.
pub fn gen_erdos_renyi(params: &ErdosRenyiParams) -> Result<MixedGraph, GraphError> {
    let ErdosRenyiParams {
        n,
        p_directed,
        p_bidirected,
        cycles,
        seed,
        max_attempts,
    } = *params;
    if n == 0 {
        return Err(GraphError::EmptyVertexSet);
    }
    for (name, p) in [("p_directed", p_directed), ("p_bidirected", p_bidirected)] {
        if !(0.0..=1.0).contains(&p) {
            return Err(GraphError::InvalidParameters(format!(
                "{name} must lie in [0, 1], got {p}"
            )));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..max_attempts {
        let mut directed = Vec::new();
        for a in 1..=n {
            for b in 1..=n {
                if a != b && rng.random_bool(p_directed) {
                    directed.push((a, b));
                }
            }
        }
        let mut bidirected = Vec::new();
        for a in 1..=n {
            for b in (a + 1)..=n {
                if rng.random_bool(p_bidirected) {
                    bidirected.push((a, b));
                }
            }
        }
        let g = MixedGraph::new(n, directed, bidirected)?;
        if count_cycles_up_to(&g, cycles + 1) == cycles {
            return Ok(g);
        }
    }
    Err(GraphError::AttemptsExceeded {
        cycles,
        attempts: max_attempts,
    })
}
