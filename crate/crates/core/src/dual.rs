//! Facet adjacency through codimension-2 faces, the edge graph of the dual
//! polytope, and the bound `combinatorial diameter <= belt diameter + 1`.

use std::collections::HashMap;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::faces::{
    enumerate_codim2_faces, enumerate_facets, is_face_of, require_connected, same_belt_unchecked, touches, Facet,
    FacetPair, OrderedPartition,
};
use crate::venkov::{build_venkov, graph_diameter};
use crate::vset::VertexSet;
use crate::zgraph::ZGraph;

/// Oriented facets joined when they share a codimension-2 face.
#[derive(Clone, Debug)]
pub struct DualGraph {
    pub nodes: Vec<Facet>,
    pub adjacency: Vec<Vec<usize>>,
}

/// Whether the oriented facets `f1` and `f2` share a codimension-2 face.
///
/// The shared face must be the common refinement of the two 2-partitions,
/// so exactly one side intersection is empty and the other three are
/// connected. Every quotient edge of that refinement is then oriented by
/// whichever facet separates its endpoints (first side towards second); the
/// face exists iff these orientations agree and are acyclic.
pub fn facet_adjacent(g: &ZGraph, f1: Facet, f2: Facet) -> bool {
    if f1.pair() == f2.pair() || !same_belt_unchecked(g, f1.pair(), f2.pair()) {
        return false;
    }
    // Cells of the refinement, tagged with (in f1.first, in f2.first).
    let mut cells: Vec<(VertexSet, bool, bool)> = Vec::with_capacity(3);
    for (x, in_a) in [(f1.first, true), (f1.second, false)] {
        for (y, in_c) in [(f2.first, true), (f2.second, false)] {
            let s = x.intersection(y);
            if !s.is_empty() {
                cells.push((s, in_a, in_c));
            }
        }
    }
    debug_assert_eq!(cells.len(), 3);
    // arrow[i][j]: cell i must precede cell j.
    let mut arrow = [[false; 3]; 3];
    for i in 0..3 {
        for j in i + 1..3 {
            let (x, xa, xc) = cells[i];
            let (y, ya, yc) = cells[j];
            if !touches(g, x, y) {
                continue;
            }
            let mut dir: Option<bool> = None; // Some(true): i -> j
            for (xi, yi) in [(xa, ya), (xc, yc)] {
                if xi != yi {
                    let d = xi;
                    if dir.is_some_and(|e| e != d) {
                        return false;
                    }
                    dir = Some(d);
                }
            }
            match dir {
                Some(true) => arrow[i][j] = true,
                Some(false) => arrow[j][i] = true,
                None => unreachable!("distinct cells differ in some side"),
            }
        }
    }
    let cyclic = (arrow[0][1] && arrow[1][2] && arrow[2][0]) || (arrow[0][2] && arrow[2][1] && arrow[1][0]);
    !cyclic
}

/// The two facets containing a codimension-2 face, found among the
/// coarsenings of its ordered representative.
pub fn facets_containing(g: &ZGraph, face: &OrderedPartition) -> Vec<Facet> {
    let parts = face.parts();
    let all = g.vertices();
    let mut out = Vec::new();
    for mask in 1u32..(1 << parts.len()) - 1 {
        let first: VertexSet = parts
            .iter()
            .enumerate()
            .filter(|(k, _)| mask >> k & 1 == 1)
            .fold(VertexSet::EMPTY, |acc, (_, &p)| acc.union(p));
        let f = Facet::new(first, all.difference(first));
        if f.check(g).is_ok() && is_face_of(g, face, &f.to_partition()) {
            out.push(f);
        }
    }
    out
}

/// Builds the dual edge graph: one edge per codimension-2 face, joining the
/// two facets that contain it.
pub fn build_dual(g: &ZGraph) -> Result<DualGraph> {
    require_connected(g, 3)?;
    let nodes = enumerate_facets(g)?;
    let index: HashMap<Facet, usize> = nodes.iter().enumerate().map(|(i, &f)| (f, i)).collect();
    let faces = enumerate_codim2_faces(g)?;
    let pairs: Vec<(usize, usize)> = faces
        .par_iter()
        .map(|face| {
            let fs = facets_containing(g, face);
            if fs.len() != 2 {
                return Err(Error::Internal(format!(
                    "codimension-2 face {:?} lies in {} facets",
                    face,
                    fs.len()
                )));
            }
            Ok((index[&fs[0]], index[&fs[1]]))
        })
        .collect::<Result<_>>()?;
    let mut adjacency = vec![Vec::new(); nodes.len()];
    for (a, b) in pairs {
        adjacency[a].push(b);
        adjacency[b].push(a);
    }
    for nb in &mut adjacency {
        nb.sort_unstable();
    }
    Ok(DualGraph { nodes, adjacency })
}

/// Diameter of the dual edge graph (the combinatorial diameter).
pub fn dual_diameter(g: &ZGraph) -> Result<usize> {
    Ok(dual_diameter_with_witness(g)?.0)
}

fn dual_diameter_with_witness(g: &ZGraph) -> Result<(usize, (Facet, Facet))> {
    if g.is_connected() && g.dimension() < 2 {
        return Err(Error::DimensionTooSmall {
            d: g.dimension(),
            min: 2,
        });
    }
    let dual = build_dual(g)?;
    let (d, (s, t)) =
        graph_diameter(&dual.adjacency).ok_or_else(|| Error::Internal("dual graph is disconnected".into()))?;
    Ok((d, (dual.nodes[s], dual.nodes[t])))
}

/// Both diameters of one zonotope and whether the bound holds.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiameterReport {
    pub belt_diameter: usize,
    pub dual_diameter: usize,
    pub belt_witness: (FacetPair, FacetPair),
    pub dual_witness: (Facet, Facet),
    pub bound_holds: bool,
}

/// Computes belt and combinatorial diameters and checks
/// `dual_diameter <= belt_diameter + 1`.
pub fn check_diameter_bound(g: &ZGraph) -> Result<DiameterReport> {
    let venkov = build_venkov(g)?;
    let (belt_diameter, (s, t)) = venkov.diameter()?;
    let (dual_diameter, dual_witness) = dual_diameter_with_witness(g)?;
    Ok(DiameterReport {
        belt_diameter,
        dual_diameter,
        belt_witness: (venkov.nodes[s], venkov.nodes[t]),
        dual_witness,
        bound_holds: dual_diameter <= belt_diameter + 1,
    })
}
