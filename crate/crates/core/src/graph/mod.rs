//! Mixed graphs `G = (V, D, B)` and the combinatorics of their Coates
//! digraph: cycles, paths, disjoint cycle families and 1-connections.
//!
//! Vertices are numbered `1..=n` everywhere in the public API.

mod cycles;
mod generate;
mod mask;
mod paths;

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

pub use cycles::{
    count_cycles_up_to, disjoint_cycle_families, enumerate_cycles, Cycle, DisjointCycleFamily,
};
pub use generate::{gen_cycle_chain, gen_erdos_renyi, ErdosRenyiParams};
pub use mask::VertexMask;
pub use paths::{
    enumerate_paths, for_each_path_from, one_connections, try_for_each_path_from, CoatesDigraph, CoatesWeight, OneConnection,
    Path,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GraphError {
    #[error("syntax error: {0}")]
    Syntax(String),
    #[error("vertex count must be positive")]
    EmptyVertexSet,
    #[error("{list}[{index}]: self-loop at vertex {vertex}")]
    SelfLoop {
        list: &'static str,
        index: usize,
        vertex: usize,
    },
    #[error("{list}[{index}]: duplicate edge ({a}, {b})")]
    Duplicate {
        list: &'static str,
        index: usize,
        a: usize,
        b: usize,
    },
    #[error("{list}[{index}]: vertex {vertex} outside 1..={n}")]
    OutOfRange {
        list: &'static str,
        index: usize,
        vertex: usize,
        n: usize,
    },
    #[error("invalid generator parameters: {0}")]
    InvalidParameters(String),
    #[error("no graph with {cycles} directed cycles found in {attempts} attempts")]
    AttemptsExceeded { cycles: usize, attempts: u64 },
}

/// A mixed graph with directed edges `i -> j` (parameters `l_{i,j}`) and
/// bidirected edges `i <-> j` (parameters `w_{i,j}`).
///
/// Edge lists are sorted; bidirected pairs are stored with `i < j`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MixedGraph {
    n: usize,
    directed: Vec<(usize, usize)>,
    bidirected: Vec<(usize, usize)>,
    out_adj: Vec<Vec<usize>>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GraphFile {
    n: usize,
    #[serde(default)]
    directed: Vec<[usize; 2]>,
    #[serde(default)]
    bidirected: Vec<[usize; 2]>,
}

impl MixedGraph {
    pub fn new(
        n: usize,
        directed: impl IntoIterator<Item = (usize, usize)>,
        bidirected: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self, GraphError> {
        if n == 0 {
            return Err(GraphError::EmptyVertexSet);
        }
        let check = |list: &'static str, index: usize, (a, b): (usize, usize)| {
            for v in [a, b] {
                if v == 0 || v > n {
                    return Err(GraphError::OutOfRange {
                        list,
                        index,
                        vertex: v,
                        n,
                    });
                }
            }
            if a == b {
                return Err(GraphError::SelfLoop {
                    list,
                    index,
                    vertex: a,
                });
            }
            Ok(())
        };

        let mut d_seen = BTreeSet::new();
        for (index, e) in directed.into_iter().enumerate() {
            check("directed", index, e)?;
            if !d_seen.insert(e) {
                return Err(GraphError::Duplicate {
                    list: "directed",
                    index,
                    a: e.0,
                    b: e.1,
                });
            }
        }
        let mut b_seen = BTreeSet::new();
        for (index, e) in bidirected.into_iter().enumerate() {
            check("bidirected", index, e)?;
            let canon = (e.0.min(e.1), e.0.max(e.1));
            if !b_seen.insert(canon) {
                return Err(GraphError::Duplicate {
                    list: "bidirected",
                    index,
                    a: e.0,
                    b: e.1,
                });
            }
        }

        let directed: Vec<_> = d_seen.into_iter().collect();
        let mut out_adj = vec![Vec::new(); n + 1];
        for &(a, b) in &directed {
            out_adj[a].push(b);
        }
        Ok(MixedGraph {
            n,
            directed,
            bidirected: b_seen.into_iter().collect(),
            out_adj,
        })
    }

    /// Graph on `n` vertices without edges.
    pub fn empty(n: usize) -> Result<Self, GraphError> {
        MixedGraph::new(n, [], [])
    }

    /// Parses the JSON graph format `{"n": .., "directed": [[i, j], ..], "bidirected": [[i, j], ..]}`.
    pub fn parse(text: &str) -> Result<Self, GraphError> {
        let file: GraphFile =
            serde_json::from_str(text).map_err(|e| GraphError::Syntax(e.to_string()))?;
        MixedGraph::new(
            file.n,
            file.directed.into_iter().map(|[a, b]| (a, b)),
            file.bidirected.into_iter().map(|[a, b]| (a, b)),
        )
    }

    /// Serializes with sorted edge lists and `i < j` bidirected pairs.
    pub fn to_json(&self) -> String {
        let file = GraphFile {
            n: self.n,
            directed: self.directed.iter().map(|&(a, b)| [a, b]).collect(),
            bidirected: self.bidirected.iter().map(|&(a, b)| [a, b]).collect(),
        };
        serde_json::to_string(&file).expect("graph serialization cannot fail")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn vertices(&self) -> std::ops::RangeInclusive<usize> {
        1..=self.n
    }

    pub fn directed(&self) -> &[(usize, usize)] {
        &self.directed
    }

    pub fn bidirected(&self) -> &[(usize, usize)] {
        &self.bidirected
    }

    /// Out-neighbours of `v` in increasing order.
    pub fn successors(&self, v: usize) -> &[usize] {
        &self.out_adj[v]
    }

    pub fn has_directed(&self, a: usize, b: usize) -> bool {
        self.directed.binary_search(&(a, b)).is_ok()
    }

    pub fn has_bidirected(&self, a: usize, b: usize) -> bool {
        self.bidirected.binary_search(&(a.min(b), a.max(b))).is_ok()
    }

    /// At most one edge of any kind between each pair of distinct vertices.
    pub fn is_simple(&self) -> bool {
        let two_cycle = self.directed.iter().any(|&(a, b)| self.has_directed(b, a));
        let mixed = self.directed.iter().any(|&(a, b)| self.has_bidirected(a, b));
        !two_cycle && !mixed
    }

    pub fn is_acyclic(&self) -> bool {
        // Kahn's algorithm.
        let mut indeg = vec![0usize; self.n + 1];
        for &(_, b) in &self.directed {
            indeg[b] += 1;
        }
        let mut stack: Vec<usize> = self.vertices().filter(|&v| indeg[v] == 0).collect();
        let mut seen = 0;
        while let Some(v) = stack.pop() {
            seen += 1;
            for &w in self.successors(v) {
                indeg[w] -= 1;
                if indeg[w] == 0 {
                    stack.push(w);
                }
            }
        }
        seen == self.n
    }

    /// Number of model parameters `|V| + |D| + |B|`.
    pub fn parameter_count(&self) -> usize {
        self.n + self.directed.len() + self.bidirected.len()
    }
}

impl fmt::Debug for MixedGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("MixedGraph")
            .field("n", &self.n)
            .field("directed", &self.directed)
            .field("bidirected", &self.bidirected)
            .finish()
    }
}

impl fmt::Display for MixedGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_json())
    }
}
