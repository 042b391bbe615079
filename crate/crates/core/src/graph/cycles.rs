use std::fmt;
use std::ops::ControlFlow;

use super::{MixedGraph, VertexMask};

/// A simple directed cycle `v1 -> v2 -> ... -> vk -> v1`, rotated so that
/// the smallest vertex comes first.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cycle {
    vertices: Vec<usize>,
}

impl Cycle {
    /// Canonicalizes the rotation. Panics on an empty or repeating sequence.
    pub fn new(mut vertices: Vec<usize>) -> Self {
        assert!(!vertices.is_empty(), "cycle needs at least one vertex");
        let start = (0..vertices.len())
            .min_by_key(|&k| vertices[k])
            .expect("nonempty");
        vertices.rotate_left(start);
        let mut sorted = vertices.clone();
        sorted.sort_unstable();
        sorted.dedup();
        assert_eq!(sorted.len(), vertices.len(), "cycle repeats a vertex");
        Cycle { vertices }
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Directed edges in traversal order, closing edge last.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let k = self.vertices.len();
        (0..k).map(move |t| (self.vertices[t], self.vertices[(t + 1) % k]))
    }

    pub fn mask(&self) -> VertexMask {
        let n = self.vertices.iter().copied().max().unwrap_or(0);
        VertexMask::from_vertices(n, self.vertices.iter().copied())
    }
}

impl fmt::Display for Cycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for v in &self.vertices {
            write!(f, "{v}->")?;
        }
        write!(f, "{}", self.vertices[0])
    }
}

impl fmt::Debug for Cycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// All simple directed cycles of `D`, canonical and sorted.
pub fn enumerate_cycles(g: &MixedGraph) -> Vec<Cycle> {
    let mut out = Vec::new();
    let _ = johnson(g, |cyc| {
        out.push(Cycle::new(cyc.to_vec()));
        ControlFlow::Continue(())
    });
    out.sort();
    out
}

/// Number of simple cycles, stopping early once `cap` have been seen.
pub fn count_cycles_up_to(g: &MixedGraph, cap: usize) -> usize {
    let mut count = 0;
    if cap == 0 {
        return 0;
    }
    let _ = johnson(g, |_| {
        count += 1;
        if count >= cap {
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    });
    count
}

/// Johnson's elementary-circuit search. Each cycle is reported once, starting
/// at its least vertex.
fn johnson<F>(g: &MixedGraph, mut visit: F) -> ControlFlow<()>
where
    F: FnMut(&[usize]) -> ControlFlow<()>,
{
    let n = g.n();
    let mut preds = vec![Vec::new(); n + 1];
    for &(a, b) in g.directed() {
        preds[b].push(a);
    }
    let mut search = Search {
        g,
        start: 0,
        component: vec![false; n + 1],
        blocked: vec![false; n + 1],
        blocked_by: vec![Vec::new(); n + 1],
        stack: Vec::new(),
    };
    for s in 1..=n {
        if !strong_component_from(g, &preds, s, &mut search.component) {
            continue;
        }
        search.start = s;
        for v in s..=n {
            search.blocked[v] = false;
            search.blocked_by[v].clear();
        }
        search.circuit(s, &mut visit)?;
    }
    ControlFlow::Continue(())
}

/// Marks the strongly connected component of `s` in the subgraph induced
/// by vertices `>= s`. Returns false when that component is trivial.
fn strong_component_from(g: &MixedGraph, preds: &[Vec<usize>], s: usize, comp: &mut [bool]) -> bool {
    let n = g.n();
    let reach = |next: &dyn Fn(usize) -> Vec<usize>| {
        let mut seen = vec![false; n + 1];
        let mut stack = vec![s];
        seen[s] = true;
        while let Some(v) = stack.pop() {
            for w in next(v) {
                if w >= s && !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen
    };
    let fwd = reach(&|v| g.successors(v).to_vec());
    let bwd = reach(&|v| preds[v].clone());
    let mut size = 0;
    for v in 0..=n {
        comp[v] = fwd[v] && bwd[v];
        size += comp[v] as usize;
    }
    size > 1
}

struct Search<'g> {
    g: &'g MixedGraph,
    start: usize,
    component: Vec<bool>,
    blocked: Vec<bool>,
    blocked_by: Vec<Vec<usize>>,
    stack: Vec<usize>,
}

impl Search<'_> {
    fn circuit<F>(&mut self, v: usize, visit: &mut F) -> ControlFlow<(), bool>
    where
        F: FnMut(&[usize]) -> ControlFlow<()>,
    {
        let mut found = false;
        self.stack.push(v);
        self.blocked[v] = true;
        for &w in self.g.successors(v) {
            if !self.component[w] {
                continue;
            }
            if w == self.start {
                if visit(&self.stack).is_break() {
                    return ControlFlow::Break(());
                }
                found = true;
            } else if !self.blocked[w] && self.circuit(w, visit)? {
                found = true;
            }
        }
        if found {
            self.unblock(v);
        } else {
            for &w in self.g.successors(v) {
                if self.component[w] && !self.blocked_by[w].contains(&v) {
                    self.blocked_by[w].push(v);
                }
            }
        }
        self.stack.pop();
        ControlFlow::Continue(found)
    }

    fn unblock(&mut self, u: usize) {
        let mut work = vec![u];
        while let Some(x) = work.pop() {
            if !self.blocked[x] {
                continue;
            }
            self.blocked[x] = false;
            work.extend(std::mem::take(&mut self.blocked_by[x]));
        }
    }
}

/// A set of pairwise vertex-disjoint cycles (possibly empty).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DisjointCycleFamily {
    cycles: Vec<Cycle>,
    mask: VertexMask,
}

impl DisjointCycleFamily {
    pub fn empty() -> Self {
        DisjointCycleFamily {
            cycles: Vec::new(),
            mask: VertexMask::default(),
        }
    }

    pub fn cycles(&self) -> &[Cycle] {
        &self.cycles
    }

    /// Covered vertices.
    pub fn mask(&self) -> &VertexMask {
        &self.mask
    }

    /// `c_S`
    pub fn cycle_count(&self) -> usize {
        self.cycles.len()
    }

    /// `v_S`
    pub fn vertex_count(&self) -> usize {
        self.cycles.iter().map(Cycle::len).sum()
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.cycles.iter().flat_map(Cycle::edges)
    }
}

/// Every subset of `cycles` whose members are pairwise vertex-disjoint,
/// the empty family included. Families are listed in lexicographic order of
/// their (sorted) cycle index lists.
pub fn disjoint_cycle_families(cycles: &[Cycle]) -> Vec<DisjointCycleFamily> {
    let masks: Vec<VertexMask> = cycles.iter().map(Cycle::mask).collect();
    let mut out = Vec::new();
    let mut chosen = Vec::new();
    extend_families(cycles, &masks, 0, &mut chosen, &VertexMask::default(), &mut out);
    out
}

fn extend_families(
    cycles: &[Cycle],
    masks: &[VertexMask],
    from: usize,
    chosen: &mut Vec<usize>,
    covered: &VertexMask,
    out: &mut Vec<DisjointCycleFamily>,
) {
    out.push(DisjointCycleFamily {
        cycles: chosen.iter().map(|&k| cycles[k].clone()).collect(),
        mask: covered.clone(),
    });
    for k in from..cycles.len() {
        if masks[k].intersects(covered) {
            continue;
        }
        let mut next = covered.clone();
        next.union_with(&masks[k]);
        chosen.push(k);
        extend_families(cycles, masks, k + 1, chosen, &next, out);
        chosen.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triangle() -> MixedGraph {
        MixedGraph::new(4, [(1, 2), (1, 3), (2, 3), (3, 4), (4, 2)], [(3, 4)]).unwrap()
    }

    #[test]
    fn canonical_rotation() {
        let c = Cycle::new(vec![4, 2, 3]);
        assert_eq!(c.vertices(), &[2, 3, 4]);
        assert_eq!(c.to_string(), "2->3->4->2");
        assert_eq!(c.edges().collect::<Vec<_>>(), vec![(2, 3), (3, 4), (4, 2)]);
    }

    #[test]
    fn example_graph_has_single_cycle() {
        assert_eq!(enumerate_cycles(&triangle()), vec![Cycle::new(vec![2, 3, 4])]);
    }

    #[test]
    fn acyclic_and_two_cycle() {
        let verma = MixedGraph::new(4, [(1, 2), (2, 3), (3, 4), (1, 3)], [(2, 4)]).unwrap();
        assert!(enumerate_cycles(&verma).is_empty());
        let g = MixedGraph::new(2, [(1, 2), (2, 1)], []).unwrap();
        assert_eq!(enumerate_cycles(&g), vec![Cycle::new(vec![1, 2])]);
    }

    #[test]
    fn complete_digraph_cycle_count() {
        // K4 has sum_{k=2..4} C(4,k) (k-1)! = 6 + 8 + 6 = 20 simple cycles.
        let edges: Vec<_> = (1..=4)
            .flat_map(|a| (1..=4).filter(move |&b| b != a).map(move |b| (a, b)))
            .collect();
        let g = MixedGraph::new(4, edges, []).unwrap();
        let cycles = enumerate_cycles(&g);
        assert_eq!(cycles.len(), 20);
        assert_eq!(count_cycles_up_to(&g, 7), 7);
        assert_eq!(count_cycles_up_to(&g, 100), 20);
    }

    #[test]
    fn families_of_example_graph() {
        let fams = disjoint_cycle_families(&enumerate_cycles(&triangle()));
        assert_eq!(fams.len(), 2);
        assert_eq!(fams[0].cycle_count(), 0);
        assert_eq!(fams[0].vertex_count(), 0);
        assert_eq!(fams[1].vertex_count(), 3);
        assert_eq!(disjoint_cycle_families(&[]).len(), 1);
    }

    #[test]
    fn families_with_overlap() {
        // 1<->2, 3<->4 and 2->3->2 ... overlapping cycles
        let g = MixedGraph::new(4, [(1, 2), (2, 1), (3, 4), (4, 3), (2, 3), (3, 2)], []).unwrap();
        let cycles = enumerate_cycles(&g);
        assert_eq!(cycles.len(), 3);
        let fams = disjoint_cycle_families(&cycles);
        // {}, {12}, {12,34}, {23}, {34}
        assert_eq!(fams.len(), 5);
    }
}
