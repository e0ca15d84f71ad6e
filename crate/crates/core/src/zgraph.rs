//! Labeled simple graphs encoding the zone vectors `e_i - e_j` of a
//! graphical zonotope.

use crate::error::{Error, Result};
use crate::vset::VertexSet;

/// Largest supported vertex count.
pub const MAX_N: usize = 16;

/// A simple graph on vertices `0..n`. Edge `(i, j)` stands for the zone
/// vector `e_i - e_j`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ZGraph {
    n: usize,
    adj: Vec<VertexSet>,
}

impl ZGraph {
    /// The graph on `n` vertices with no edges.
    pub fn empty(n: usize) -> Result<Self> {
        if n > MAX_N {
            return Err(Error::TooManyVertices { n, max: MAX_N });
        }
        Ok(ZGraph {
            n,
            adj: vec![VertexSet::EMPTY; n],
        })
    }

    /// Builds a graph from an edge list, rejecting loops, duplicates, and
    /// out-of-range endpoints.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = ZGraph::empty(n)?;
        for (i, j) in edges {
            g.add_edge(i, j)?;
        }
        Ok(g)
    }

    pub fn complete(n: usize) -> Result<Self> {
        let mut g = ZGraph::empty(n)?;
        for i in 0..n {
            g.adj[i] = VertexSet::full(n).difference(VertexSet::singleton(i));
        }
        Ok(g)
    }

    pub fn path(n: usize) -> Result<Self> {
        ZGraph::from_edges(n, (1..n).map(|i| (i - 1, i)))
    }

    pub fn complete_bipartite(a: usize, b: usize) -> Result<Self> {
        ZGraph::from_edges(a + b, (0..a).flat_map(|i| (a..a + b).map(move |j| (i, j))))
    }

    pub(crate) fn from_adjacency(adj: Vec<VertexSet>) -> Self {
        ZGraph { n: adj.len(), adj }
    }

    fn check_vertex(&self, v: usize) -> Result<()> {
        if v >= self.n {
            Err(Error::VertexOutOfRange { vertex: v, n: self.n })
        } else {
            Ok(())
        }
    }

    pub fn add_edge(&mut self, i: usize, j: usize) -> Result<()> {
        self.check_vertex(i)?;
        self.check_vertex(j)?;
        if i == j {
            return Err(Error::Loop(i));
        }
        if self.has_edge(i, j) {
            return Err(Error::DuplicateEdge(i.min(j), i.max(j)));
        }
        self.adj[i].insert(j);
        self.adj[j].insert(i);
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        i < self.n && self.adj[i].contains(j)
    }

    pub fn neighbors(&self, v: usize) -> VertexSet {
        self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|a| a.len()).sum::<usize>() / 2
    }

    /// Edges `(i, j)` with `i < j`, sorted lexicographically.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for i in 0..self.n {
            for j in self.adj[i].iter().filter(|&j| j > i) {
                out.push((i, j));
            }
        }
        out
    }

    /// Vertices reachable from `start` inside `within`.
    pub fn reach(&self, start: usize, within: VertexSet) -> VertexSet {
        let mut seen = VertexSet::singleton(start);
        let mut frontier = seen;
        while !frontier.is_empty() {
            let mut next = VertexSet::EMPTY;
            for v in frontier {
                next = next.union(self.adj[v]);
            }
            frontier = next.intersection(within).difference(seen);
            seen = seen.union(frontier);
        }
        seen
    }

    /// Connectivity of the induced subgraph on `s`; the empty set counts
    /// as disconnected.
    pub fn connected_within(&self, s: VertexSet) -> bool {
        match s.least() {
            None => false,
            Some(v) => self.reach(v, s) == s,
        }
    }

    /// Whether the subgraph induced on `s` is connected.
    pub fn is_connected_induced(&self, s: VertexSet) -> Result<bool> {
        if s.is_empty() {
            return Err(Error::EmptyPart);
        }
        if !s.is_subset(self.vertices()) {
            let v = s.difference(self.vertices()).least().unwrap_or(0);
            return Err(Error::VertexOutOfRange { vertex: v, n: self.n });
        }
        Ok(self.connected_within(s))
    }

    /// Connected components sorted by least vertex.
    pub fn components(&self) -> Vec<VertexSet> {
        let mut rest = self.vertices();
        let mut out = Vec::new();
        while let Some(v) = rest.least() {
            let c = self.reach(v, rest);
            rest = rest.difference(c);
            out.push(c);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.n > 0 && self.connected_within(self.vertices())
    }

    /// Dimension of the zonotope: `n` minus the number of components.
    pub fn dimension(&self) -> usize {
        self.n - self.components().len()
    }

    /// Glues `i` and `j`. Parallel edges collapse, any `i`-`j` edge vanishes,
    /// and labels are compacted with the merged vertex at `min(i, j)`.
    pub fn contract(&self, i: usize, j: usize) -> Result<ZGraph> {
        self.check_vertex(i)?;
        self.check_vertex(j)?;
        if i == j {
            return Err(Error::SelfContraction(i));
        }
        let relabel = |v: usize| contraction_image(i, j, v);
        let mut adj = vec![VertexSet::EMPTY; self.n - 1];
        for (a, b) in self.edges() {
            let (x, y) = (relabel(a), relabel(b));
            if x != y {
                adj[x].insert(y);
                adj[y].insert(x);
            }
        }
        Ok(ZGraph::from_adjacency(adj))
    }

    /// The graph without edge `(i, j)`.
    pub fn delete_edge(&self, i: usize, j: usize) -> Result<ZGraph> {
        self.check_vertex(i)?;
        self.check_vertex(j)?;
        if !self.has_edge(i, j) {
            return Err(Error::MissingEdge(i.min(j), i.max(j)));
        }
        let mut g = self.clone();
        g.adj[i].remove(j);
        g.adj[j].remove(i);
        Ok(g)
    }

    /// Repeatedly glues the least vertices of the first two components until
    /// the graph is connected. Dimension is preserved.
    pub fn reduce_connected(&self) -> ZGraph {
        let mut g = self.clone();
        loop {
            let comps = g.components();
            if comps.len() < 2 {
                return g;
            }
            let a = comps[0].least().expect("nonempty component");
            let b = comps[1].least().expect("nonempty component");
            g = g.contract(a, b).expect("distinct in-range vertices");
        }
    }

    /// Relabels vertex `v` as `perm[v]`.
    pub fn permute(&self, perm: &[usize]) -> ZGraph {
        let mut adj = vec![VertexSet::EMPTY; self.n];
        for (a, b) in self.edges() {
            adj[perm[a]].insert(perm[b]);
            adj[perm[b]].insert(perm[a]);
        }
        ZGraph::from_adjacency(adj)
    }

    /// Whether the graph admits a proper 2-coloring.
    pub fn is_bipartite(&self) -> bool {
        let mut side = vec![None; self.n];
        for s in 0..self.n {
            if side[s].is_some() {
                continue;
            }
            side[s] = Some(false);
            let mut stack = vec![s];
            while let Some(v) = stack.pop() {
                let sv = side[v].expect("colored on push");
                for w in self.adj[v] {
                    match side[w] {
                        None => {
                            side[w] = Some(!sv);
                            stack.push(w);
                        }
                        Some(sw) if sw == sv => return false,
                        Some(_) => {}
                    }
                }
            }
        }
        true
    }
}

/// Label of vertex `v` after gluing `i` and `j` (see [`ZGraph::contract`]).
pub fn contraction_image(i: usize, j: usize, v: usize) -> usize {
    let (keep, gone) = (i.min(j), i.max(j));
    let v = if v == gone { keep } else { v };
    if v > gone {
        v - 1
    } else {
        v
    }
}

/// Image of a vertex set after gluing `i` and `j`.
pub fn contraction_image_set(i: usize, j: usize, s: VertexSet) -> VertexSet {
    s.iter().map(|v| contraction_image(i, j, v)).collect()
}

impl std::fmt::Debug for ZGraph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "ZGraph(n={}, edges={:?})", self.n, self.edges())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(vs: &[usize]) -> VertexSet {
        vs.iter().copied().collect()
    }

    #[test]
    fn components_examples() {
        let empty = ZGraph::empty(4).unwrap();
        assert_eq!(empty.components(), vec![set(&[0]), set(&[1]), set(&[2]), set(&[3])]);
        assert_eq!(ZGraph::path(4).unwrap().components(), vec![set(&[0, 1, 2, 3])]);
        let two = ZGraph::from_edges(4, [(0, 1), (2, 3)]).unwrap();
        assert_eq!(two.components(), vec![set(&[0, 1]), set(&[2, 3])]);
    }

    #[test]
    fn induced_connectivity() {
        let p = ZGraph::path(4).unwrap();
        assert!(!p.is_connected_induced(set(&[0, 2, 3])).unwrap());
        assert!(p.is_connected_induced(set(&[1, 2])).unwrap());
        assert_eq!(p.is_connected_induced(VertexSet::EMPTY), Err(Error::EmptyPart));
        let k4 = ZGraph::complete(4).unwrap();
        for s in k4.vertices().subsets().skip(1) {
            assert!(k4.is_connected_induced(s).unwrap());
        }
    }

    #[test]
    fn dimension_examples() {
        assert_eq!(ZGraph::empty(4).unwrap().dimension(), 0);
        assert_eq!(ZGraph::complete(4).unwrap().dimension(), 3);
        assert_eq!(ZGraph::from_edges(4, [(0, 1), (2, 3)]).unwrap().dimension(), 2);
    }

    #[test]
    fn contract_examples() {
        let p = ZGraph::path(4).unwrap();
        assert_eq!(p.contract(1, 2).unwrap(), ZGraph::path(3).unwrap());
        assert_eq!(
            ZGraph::complete(4).unwrap().contract(0, 1).unwrap(),
            ZGraph::complete(3).unwrap()
        );
        let star = ZGraph::from_edges(4, [(0, 1), (1, 2), (1, 3)]).unwrap();
        assert_eq!(p.dimension(), 3);
        assert_eq!(star.dimension(), 3);
        for g in [&p, &star] {
            for (i, j) in g.edges() {
                assert_eq!(g.contract(i, j).unwrap().dimension(), 2);
            }
        }
        assert_eq!(p.contract(2, 2), Err(Error::SelfContraction(2)));
        assert!(p.contract(0, 4).is_err());
    }

    #[test]
    fn contract_relabels_with_merged_vertex_at_min_slot() {
        // 0-3 glued: old 3's neighbor 2 attaches to 0; 4 becomes 3.
        let g = ZGraph::from_edges(5, [(2, 3), (3, 4), (0, 1)]).unwrap();
        let c = g.contract(3, 0).unwrap();
        assert_eq!(c.edges(), vec![(0, 1), (0, 2), (0, 3)]);
    }

    #[test]
    fn delete_edge_examples() {
        let k4 = ZGraph::complete(4).unwrap().delete_edge(0, 1).unwrap();
        assert_eq!(k4.edge_count(), 5);
        assert_eq!(k4.dimension(), 3);
        assert_eq!(ZGraph::path(4).unwrap().delete_edge(1, 2).unwrap().dimension(), 2);
        let k23 = ZGraph::complete_bipartite(2, 3).unwrap();
        assert_eq!(k23.dimension(), 4);
        for (i, j) in k23.edges() {
            assert_eq!(k23.delete_edge(i, j).unwrap().dimension(), 4);
        }
        assert_eq!(
            ZGraph::path(4).unwrap().delete_edge(0, 2),
            Err(Error::MissingEdge(0, 2))
        );
    }

    #[test]
    fn reduce_connected_examples() {
        let two = ZGraph::from_edges(4, [(0, 1), (2, 3)]).unwrap();
        let r = two.reduce_connected();
        assert_eq!(r.n(), 3);
        assert!(r.is_connected());
        assert_eq!(r.dimension(), 2);
        let p = ZGraph::path(5).unwrap();
        assert_eq!(p.reduce_connected(), p);
        let e = ZGraph::empty(3).unwrap().reduce_connected();
        assert_eq!(e.n(), 1);
        assert_eq!(e.dimension(), 0);
    }

    #[test]
    fn construction_rejects_bad_edges() {
        assert_eq!(ZGraph::from_edges(3, [(1, 1)]), Err(Error::Loop(1)));
        assert_eq!(ZGraph::from_edges(3, [(0, 1), (1, 0)]), Err(Error::DuplicateEdge(0, 1)));
        assert!(ZGraph::from_edges(3, [(0, 3)]).is_err());
        assert!(ZGraph::empty(17).is_err());
    }

    #[test]
    fn bipartite_check() {
        assert!(ZGraph::complete_bipartite(2, 4).unwrap().is_bipartite());
        assert!(!ZGraph::complete(3).unwrap().is_bipartite());
        assert!(ZGraph::path(6).unwrap().is_bipartite());
    }
}
