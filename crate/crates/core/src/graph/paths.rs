use std::fmt;
use std::ops::ControlFlow;

use super::cycles::{disjoint_cycle_families, enumerate_cycles, DisjointCycleFamily};
use super::{MixedGraph, VertexMask};

/// A simple directed path given by its vertex sequence. The path from `i`
/// to itself is the single vertex `[i]` with no edges.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Path {
    vertices: Vec<usize>,
}

impl Path {
    pub fn new(vertices: Vec<usize>) -> Self {
        assert!(!vertices.is_empty());
        Path { vertices }
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn source(&self) -> usize {
        self.vertices[0]
    }

    pub fn sink(&self) -> usize {
        *self.vertices.last().expect("nonempty")
    }

    /// Number of edges.
    pub fn len(&self) -> usize {
        self.vertices.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.len() == 1
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.vertices.windows(2).map(|w| (w[0], w[1]))
    }
}

impl fmt::Display for Path {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.vertices.iter().map(ToString::to_string).collect();
        f.write_str(&parts.join("->"))
    }
}

impl fmt::Debug for Path {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Visits every simple directed path starting at `source`, including the
/// trivial one, in depth-first order with successors taken in increasing
/// order. The callback receives the vertex sequence and its vertex set.
pub fn for_each_path_from<F>(g: &MixedGraph, source: usize, mut visit: F)
where
    F: FnMut(&[usize], &VertexMask),
{
    let _ = try_for_each_path_from(g, source, |p, m| {
        visit(p, m);
        ControlFlow::<()>::Continue(())
    });
}

/// [`for_each_path_from`] with early exit.
pub fn try_for_each_path_from<F, B>(g: &MixedGraph, source: usize, mut visit: F) -> ControlFlow<B>
where
    F: FnMut(&[usize], &VertexMask) -> ControlFlow<B>,
{
    let mut stack = vec![source];
    let mut on_path = VertexMask::new(g.n());
    on_path.insert(source);
    // frame: index of the next successor to try for stack[k]
    let mut next = vec![0usize];
    visit(&stack, &on_path)?;
    while let Some(&v) = stack.last() {
        let k = next.last_mut().expect("parallel stacks");
        let succ = g.successors(v);
        if *k < succ.len() {
            let w = succ[*k];
            *k += 1;
            if !on_path.contains(w) {
                stack.push(w);
                next.push(0);
                on_path.insert(w);
                visit(&stack, &on_path)?;
            }
        } else {
            on_path.remove(v);
            stack.pop();
            next.pop();
        }
    }
    ControlFlow::Continue(())
}

/// All simple directed paths from `i` to `j` in lexicographic order. For
/// `i == j` this is just the empty path.
pub fn enumerate_paths(g: &MixedGraph, i: usize, j: usize) -> Vec<Path> {
    let mut out = Vec::new();
    for_each_path_from(g, i, |p, _| {
        if *p.last().expect("nonempty") == j {
            out.push(Path::new(p.to_vec()));
        }
    });
    out.sort();
    out
}

/// Weight of an edge of the Coates digraph of `(I - Lambda)^T`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CoatesWeight {
    /// `-l_{i,j}` on the edge `i -> j`.
    NegLambda(usize, usize),
    /// `1` on a self-loop.
    One,
}

/// The directed part of a mixed graph with negated edge weights and a
/// weight-one self-loop at every vertex.
#[derive(Clone, Debug)]
pub struct CoatesDigraph {
    n: usize,
    edges: Vec<(usize, usize, CoatesWeight)>,
}

impl CoatesDigraph {
    pub fn new(g: &MixedGraph) -> Self {
        let mut edges: Vec<_> = g
            .directed()
            .iter()
            .map(|&(a, b)| (a, b, CoatesWeight::NegLambda(a, b)))
            .collect();
        edges.extend(g.vertices().map(|v| (v, v, CoatesWeight::One)));
        edges.sort_by_key(|&(a, b, _)| (a, b));
        CoatesDigraph { n: g.n(), edges }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(usize, usize, CoatesWeight)] {
        &self.edges
    }

    pub fn self_loop_count(&self) -> usize {
        self.edges.iter().filter(|e| e.0 == e.1).count()
    }
}

/// A spanning subgraph of the Coates digraph made of a path from `source`
/// to `sink`, a disjoint cycle family avoiding the path, and self-loops on
/// every remaining vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OneConnection {
    n: usize,
    path: Path,
    family: DisjointCycleFamily,
}

impl OneConnection {
    pub fn new(n: usize, path: Path, family: DisjointCycleFamily) -> Self {
        debug_assert!(path.vertices().iter().all(|&v| !family.mask().contains(v)));
        OneConnection { n, path, family }
    }

    pub fn source(&self) -> usize {
        self.path.source()
    }

    pub fn sink(&self) -> usize {
        self.path.sink()
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    pub fn family(&self) -> &DisjointCycleFamily {
        &self.family
    }

    /// `v_p`, counting the lone vertex of an empty path.
    pub fn path_vertex_count(&self) -> usize {
        self.path.vertices().len()
    }

    /// Vertices carrying a self-loop.
    pub fn self_loop_vertices(&self) -> Vec<usize> {
        (1..=self.n)
            .filter(|&v| !self.family.mask().contains(v) && !self.path.vertices().contains(&v))
            .collect()
    }

    /// Cycles of the whole structure, self-loops included:
    /// `c_S + (n - v_S - v_p)`.
    pub fn cycle_count(&self) -> usize {
        self.family.cycle_count()
            + (self.n - self.family.vertex_count() - self.path_vertex_count())
    }

    /// Non-loop edges (path edges followed by cycle edges).
    pub fn edges(&self) -> Vec<(usize, usize)> {
        self.path.edges().chain(self.family.edges()).collect()
    }
}

/// All 1-connections from `i` to `j` of the Coates digraph, grouped by path
/// in lexicographic order.
pub fn one_connections(g: &MixedGraph, i: usize, j: usize) -> Vec<OneConnection> {
    let families = disjoint_cycle_families(&enumerate_cycles(g));
    let mut out = Vec::new();
    for path in enumerate_paths(g, i, j) {
        let pm = VertexMask::from_vertices(g.n(), path.vertices().iter().copied());
        for fam in families.iter().filter(|f| !f.mask().intersects(&pm)) {
            out.push(OneConnection::new(g.n(), path.clone(), fam.clone()));
        }
    }
    out
}
