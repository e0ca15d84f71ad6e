//! The Venkov graph on pairs of opposite facets and belt distances.

use std::collections::{HashMap, VecDeque};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::faces::{belt_neighbors, enumerate_facet_pairs, require_connected, FacetPair};
use crate::zgraph::ZGraph;

/// Pairs of opposite facets joined when they share a belt.
#[derive(Clone, Debug)]
pub struct VenkovGraph {
    pub nodes: Vec<FacetPair>,
    pub adjacency: Vec<Vec<usize>>,
}

/// A sequence of facet pairs, consecutive ones sharing a belt.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BeltPath {
    pub steps: Vec<FacetPair>,
}

impl BeltPath {
    pub fn len(&self) -> usize {
        self.steps.len().saturating_sub(1)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Checks that consecutive steps share a belt in `g`.
    pub fn is_valid(&self, g: &ZGraph) -> bool {
        self.steps
            .windows(2)
            .all(|w| w[0] != w[1] && crate::faces::same_belt_unchecked(g, w[0], w[1]))
    }
}

/// Builds the Venkov graph. Node order follows facet enumeration order and
/// each adjacency list is sorted.
pub fn build_venkov(g: &ZGraph) -> Result<VenkovGraph> {
    require_connected(g, 3)?;
    let nodes = enumerate_facet_pairs(g)?;
    let index: HashMap<FacetPair, usize> = nodes.iter().enumerate().map(|(i, &p)| (p, i)).collect();
    let adjacency = nodes
        .par_iter()
        .map(|&p| {
            let mut nb: Vec<usize> = belt_neighbors(g, p).iter().map(|q| index[q]).collect();
            nb.sort_unstable();
            nb
        })
        .collect();
    Ok(VenkovGraph { nodes, adjacency })
}

impl VenkovGraph {
    pub fn index_of(&self, p: FacetPair) -> Option<usize> {
        self.nodes.iter().position(|&q| q == p)
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// BFS distances from `src`; `usize::MAX` marks unreachable nodes.
    pub fn distances_from(&self, src: usize) -> Vec<usize> {
        bfs_distances(&self.adjacency, src)
    }

    /// Diameter together with the first node pair (in index order) realizing
    /// it. Errors if the graph is disconnected.
    pub fn diameter(&self) -> Result<(usize, (usize, usize))> {
        graph_diameter(&self.adjacency).ok_or_else(|| Error::Internal("Venkov graph is disconnected".into()))
    }
}

pub(crate) fn bfs_distances(adjacency: &[Vec<usize>], src: usize) -> Vec<usize> {
    let mut dist = vec![usize::MAX; adjacency.len()];
    dist[src] = 0;
    let mut queue = VecDeque::from([src]);
    while let Some(v) = queue.pop_front() {
        for &w in &adjacency[v] {
            if dist[w] == usize::MAX {
                dist[w] = dist[v] + 1;
                queue.push_back(w);
            }
        }
    }
    dist
}

/// All-pairs BFS diameter with the first realizing pair in index order, or
/// `None` for a disconnected graph. Sources run in parallel; the reduction
/// is sequential so the witness does not depend on scheduling.
pub(crate) fn graph_diameter(adjacency: &[Vec<usize>]) -> Option<(usize, (usize, usize))> {
    let per_source: Vec<(usize, usize)> = (0..adjacency.len())
        .into_par_iter()
        .map(|s| {
            let d = bfs_distances(adjacency, s);
            let mut best = (0, s);
            for (t, &x) in d.iter().enumerate() {
                if x > best.0 {
                    best = (x, t);
                }
            }
            best
        })
        .collect();
    let mut best = (0, (0, 0));
    for (s, &(d, t)) in per_source.iter().enumerate() {
        if d == usize::MAX {
            return None;
        }
        if d > best.0 {
            best = (d, (s, t));
        }
    }
    Some(best)
}

/// Belt distance between two facet pairs with a shortest witness path.
/// The search expands neighbors lazily, so it does not build the whole
/// Venkov graph.
pub fn belt_distance(g: &ZGraph, from: FacetPair, to: FacetPair) -> Result<(usize, BeltPath)> {
    require_connected(g, 3)?;
    from.check(g)?;
    to.check(g)?;
    let mut parent: HashMap<FacetPair, FacetPair> = HashMap::new();
    parent.insert(from, from);
    let mut queue = VecDeque::from([from]);
    while let Some(v) = queue.pop_front() {
        if v == to {
            let mut steps = vec![to];
            let mut cur = to;
            while cur != from {
                cur = parent[&cur];
                steps.push(cur);
            }
            steps.reverse();
            return Ok((steps.len() - 1, BeltPath { steps }));
        }
        for w in belt_neighbors(g, v) {
            if let std::collections::hash_map::Entry::Vacant(e) = parent.entry(w) {
                e.insert(v);
                queue.push_back(w);
            }
        }
    }
    Err(Error::Internal(format!("{:?} unreachable from {:?}", to, from)))
}

/// Diameter of the Venkov graph.
pub fn belt_diameter(g: &ZGraph) -> Result<usize> {
    Ok(build_venkov(g)?.diameter()?.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::faces::in_same_belt;
    use crate::vset::VertexSet;

    fn set(vs: &[usize]) -> VertexSet {
        vs.iter().copied().collect()
    }

    fn pair(a: &[usize], b: &[usize]) -> FacetPair {
        FacetPair::new(set(a), set(b))
    }

    #[test]
    fn cube_venkov_is_a_triangle() {
        let v = build_venkov(&ZGraph::path(4).unwrap()).unwrap();
        assert_eq!(v.nodes.len(), 3);
        assert_eq!(v.edge_count(), 3);
        assert_eq!(belt_diameter(&ZGraph::path(4).unwrap()).unwrap(), 1);
    }

    #[test]
    fn permutahedron_venkov() {
        let k4 = ZGraph::complete(4).unwrap();
        let v = build_venkov(&k4).unwrap();
        assert_eq!(v.nodes.len(), 7);
        let halves = [pair(&[0, 1], &[2, 3]), pair(&[0, 2], &[1, 3]), pair(&[0, 3], &[1, 2])];
        for (i, &a) in v.nodes.iter().enumerate() {
            let deg = v.adjacency[i].len();
            if halves.contains(&a) {
                assert_eq!(deg, 4);
                for &b in &halves {
                    if a != b {
                        assert!(!in_same_belt(&k4, a, b).unwrap());
                    }
                }
            } else {
                assert_eq!(deg, 6);
            }
        }
        assert_eq!(belt_diameter(&k4).unwrap(), 2);
    }

    #[test]
    fn hexagon_venkov() {
        let k3 = ZGraph::complete(3).unwrap();
        let v = build_venkov(&k3).unwrap();
        assert_eq!(v.nodes.len(), 3);
        assert_eq!(v.edge_count(), 3);
    }

    #[test]
    fn distances_with_witness() {
        let k4 = ZGraph::complete(4).unwrap();
        let (d, path) = belt_distance(&k4, pair(&[0, 1], &[2, 3]), pair(&[0, 2], &[1, 3])).unwrap();
        assert_eq!(d, 2);
        assert_eq!(path.len(), 2);
        assert!(path.is_valid(&k4));
        let f = pair(&[0], &[1, 2, 3]);
        let (d, path) = belt_distance(&k4, f, f).unwrap();
        assert_eq!(d, 0);
        assert_eq!(path.steps, vec![f]);
    }

    #[test]
    fn k2_dm1_red_to_blue_is_two() {
        // r = 0, b = 1, middle vertices 2..=d.
        for d in 3..=8 {
            let edges = (2..=d).flat_map(|v| [(0, v), (1, v)]);
            let g = ZGraph::from_edges(d + 1, edges).unwrap();
            let all = g.vertices();
            let red = FacetPair::new(set(&[0]), all.difference(set(&[0])));
            let blue = FacetPair::new(set(&[1]), all.difference(set(&[1])));
            assert_eq!(belt_distance(&g, red, blue).unwrap().0, 2);
        }
    }

    #[test]
    fn invalid_facets_rejected() {
        let p = ZGraph::path(4).unwrap();
        assert!(belt_distance(&p, pair(&[0, 2], &[1, 3]), pair(&[0], &[1, 2, 3])).is_err());
    }
}
