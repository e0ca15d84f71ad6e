//! Output-sensitive spanning tree enumeration by edge inclusion/exclusion.

use std::ops::ControlFlow;

use crate::vset::VertexSet;

/// Calls `visit` on every spanning tree of the graph `(vertices, edges)`
/// whose vertices in `no_leaf` all have degree at least 2. Trees are
/// produced in lexicographic order of their inclusion vectors (edges earlier
/// in `edges` included first). Returns the number of search nodes expanded,
/// or `Break` if `visit` stopped the search.
///
/// A single vertex has exactly one spanning tree, the empty one; it has a
/// vertex of degree 0, so a nonempty `no_leaf` inside a one-vertex set still
/// admits it.
pub fn for_each_spanning_tree<F>(
    vertices: VertexSet,
    edges: &[(usize, usize)],
    no_leaf: VertexSet,
    mut visit: F,
) -> ControlFlow<u64, u64>
where
    F: FnMut(&[(usize, usize)]) -> ControlFlow<()>,
{
    let mut s = State {
        vertices,
        edges,
        no_leaf: if vertices.len() == 1 { VertexSet::EMPTY } else { no_leaf },
        chosen: Vec::with_capacity(vertices.len().saturating_sub(1)),
        excluded: vec![false; edges.len()],
        nodes: 0,
    };
    if vertices.is_empty() {
        return ControlFlow::Continue(0);
    }
    if !s.connected_with_remaining(0) {
        return ControlFlow::Continue(1);
    }
    match s.recurse(0, &mut visit) {
        ControlFlow::Continue(()) => ControlFlow::Continue(s.nodes),
        ControlFlow::Break(()) => ControlFlow::Break(s.nodes),
    }
}

/// Collects all spanning trees (see [`for_each_spanning_tree`]).
pub fn spanning_trees(vertices: VertexSet, edges: &[(usize, usize)], no_leaf: VertexSet) -> Vec<Vec<(usize, usize)>> {
    let mut out = Vec::new();
    let _ = for_each_spanning_tree(vertices, edges, no_leaf, |t| {
        out.push(t.to_vec());
        ControlFlow::Continue(())
    });
    out
}

/// All edges of the complete bipartite graph between `x` and `y`.
pub fn bipartite_edges(x: VertexSet, y: VertexSet) -> Vec<(usize, usize)> {
    let mut out = Vec::with_capacity(x.len() * y.len());
    for a in x {
        for b in y {
            out.push((a.min(b), a.max(b)));
        }
    }
    out.sort_unstable();
    out
}

struct State<'a> {
    vertices: VertexSet,
    edges: &'a [(usize, usize)],
    no_leaf: VertexSet,
    chosen: Vec<(usize, usize)>,
    excluded: Vec<bool>,
    nodes: u64,
}

impl State<'_> {
    fn find(&self, parent: &mut [usize], v: usize) -> usize {
        let mut r = v;
        while parent[r] != r {
            r = parent[r];
        }
        let mut c = v;
        while parent[c] != r {
            let next = parent[c];
            parent[c] = r;
            c = next;
        }
        r
    }

    fn creates_cycle(&self, e: (usize, usize)) -> bool {
        let mut parent: Vec<usize> = (0..64).collect();
        for &(a, b) in &self.chosen {
            let (ra, rb) = (self.find(&mut parent, a), self.find(&mut parent, b));
            parent[ra] = rb;
        }
        self.find(&mut parent, e.0) == self.find(&mut parent, e.1)
    }

    /// Connectivity of chosen edges plus undecided edges from `from` on.
    fn connected_with_remaining(&self, from: usize) -> bool {
        let mut adj = [VertexSet::EMPTY; 64];
        for &(a, b) in self.chosen.iter().chain(
            self.edges[from..]
                .iter()
                .enumerate()
                .filter(|(k, _)| !self.excluded[from + k])
                .map(|(_, e)| e),
        ) {
            adj[a].insert(b);
            adj[b].insert(a);
        }
        let Some(start) = self.vertices.least() else {
            return true;
        };
        let mut seen = VertexSet::singleton(start);
        let mut stack = vec![start];
        while let Some(v) = stack.pop() {
            for w in adj[v].intersection(self.vertices).difference(seen) {
                seen.insert(w);
                stack.push(w);
            }
        }
        seen == self.vertices
    }

    /// Whether every `no_leaf` vertex can still reach degree 2.
    fn degrees_feasible(&self, from: usize) -> bool {
        self.no_leaf.iter().all(|v| {
            let fixed = self.chosen.iter().filter(|&&(a, b)| a == v || b == v).count();
            let open = self.edges[from..].iter().filter(|&&(a, b)| a == v || b == v).count();
            fixed + open >= 2
        })
    }

    fn recurse<F>(&mut self, k: usize, visit: &mut F) -> ControlFlow<()>
    where
        F: FnMut(&[(usize, usize)]) -> ControlFlow<()>,
    {
        self.nodes += 1;
        if self.chosen.len() + 1 == self.vertices.len() {
            if !self.degrees_feasible(self.edges.len()) {
                return ControlFlow::Continue(());
            }
            return visit(&self.chosen);
        }
        if k == self.edges.len() {
            return ControlFlow::Continue(());
        }
        let e = self.edges[k];
        if !self.creates_cycle(e) {
            self.chosen.push(e);
            if self.degrees_feasible(k + 1) {
                self.recurse(k + 1, visit)?;
            }
            self.chosen.pop();
        }
        self.excluded[k] = true;
        if self.connected_with_remaining(k + 1) && self.degrees_feasible(k + 1) {
            self.recurse(k + 1, visit)?;
        }
        self.excluded[k] = false;
        ControlFlow::Continue(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(vs: &[usize]) -> VertexSet {
        vs.iter().copied().collect()
    }

    #[test]
    fn complete_bipartite_tree_counts() {
        // a^(b-1) b^(a-1)
        for (a, b, want) in [(1, 1, 1), (1, 4, 1), (2, 2, 4), (2, 3, 12), (3, 3, 81), (3, 4, 432)] {
            let x = VertexSet::full(a);
            let y = VertexSet::from_bits(VertexSet::full(b).bits() << a);
            let trees = spanning_trees(x.union(y), &bipartite_edges(x, y), VertexSet::EMPTY);
            assert_eq!(trees.len(), want, "K_{{{},{}}}", a, b);
        }
    }

    #[test]
    fn complete_graph_tree_counts() {
        // Cayley: n^(n-2)
        for n in 1..=6 {
            let g = crate::zgraph::ZGraph::complete(n).unwrap();
            let trees = spanning_trees(g.vertices(), &g.edges(), VertexSet::EMPTY);
            assert_eq!(trees.len(), n.pow(n.saturating_sub(2) as u32));
        }
    }

    #[test]
    fn no_leaf_constraint_filters() {
        let g = crate::zgraph::ZGraph::complete(5).unwrap();
        let all = spanning_trees(g.vertices(), &g.edges(), VertexSet::EMPTY);
        let forbid = set(&[0, 3]);
        let filtered = spanning_trees(g.vertices(), &g.edges(), forbid);
        let expected = all
            .iter()
            .filter(|t| {
                forbid
                    .iter()
                    .all(|v| t.iter().filter(|&&(a, b)| a == v || b == v).count() >= 2)
            })
            .count();
        assert_eq!(filtered.len(), expected);
        assert!(expected > 0);
    }

    #[test]
    fn disconnected_input_has_no_trees() {
        assert!(spanning_trees(set(&[0, 1, 2]), &[(0, 1)], VertexSet::EMPTY).is_empty());
        assert_eq!(
            spanning_trees(set(&[4]), &[], set(&[4])),
            vec![Vec::<(usize, usize)>::new()]
        );
    }
}
