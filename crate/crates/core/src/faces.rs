//! Faces of a graphical zonotope as partitions of the vertex set into
//! connected parts.
//!
//! A face of codimension `k` is a partition into `k + 1` parts, each inducing
//! a connected subgraph, together with an acyclic orientation of the quotient
//! graph. An [`OrderedPartition`] names a face by listing its parts in an
//! order compatible with that orientation: an edge between parts `i < j` is
//! oriented `i -> j`. On the complete graph every order gives a distinct face;
//! on sparser graphs several orders can name the same face.

use std::fmt;

use crate::error::{Error, Result};
use crate::vset::VertexSet;
use crate::zgraph::ZGraph;

/// A sequence of disjoint nonempty vertex sets covering all vertices.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OrderedPartition {
    parts: Vec<VertexSet>,
}

impl OrderedPartition {
    /// Validates that `parts` is a partition of `{0, .., n-1}`.
    pub fn new(n: usize, parts: Vec<VertexSet>) -> Result<Self> {
        let mut seen = VertexSet::EMPTY;
        for p in &parts {
            if p.is_empty() {
                return Err(Error::EmptyPart);
            }
            if !p.is_disjoint(seen) {
                return Err(Error::InvalidPartition(format!(
                    "parts overlap in {:?}",
                    p.intersection(seen)
                )));
            }
            seen = seen.union(*p);
        }
        if seen != VertexSet::full(n) {
            return Err(Error::InvalidPartition(format!(
                "parts cover {:?}, expected all of 0..{}",
                seen, n
            )));
        }
        Ok(OrderedPartition { parts })
    }

    pub fn parts(&self) -> &[VertexSet] {
        &self.parts
    }

    /// Number of parts minus one.
    pub fn codimension(&self) -> usize {
        self.parts.len() - 1
    }

    /// Whether every part induces a connected subgraph of `g`.
    pub fn has_connected_parts(&self, g: &ZGraph) -> bool {
        self.parts.iter().all(|&p| g.connected_within(p))
    }

    fn part_of(&self, v: usize) -> usize {
        self.parts
            .iter()
            .position(|p| p.contains(v))
            .expect("partition covers every vertex")
    }
}

impl fmt::Debug for OrderedPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (k, p) in self.parts.iter().enumerate() {
            if k > 0 {
                f.write_str("|")?;
            }
            let s: Vec<String> = p.iter().map(|v| v.to_string()).collect();
            f.write_str(&s.join(","))?;
        }
        f.write_str(")")
    }
}

/// An oriented facet `(first, second)`; its opposite is `(second, first)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Facet {
    pub first: VertexSet,
    pub second: VertexSet,
}

impl Facet {
    pub fn new(first: VertexSet, second: VertexSet) -> Self {
        Facet { first, second }
    }

    /// Checks that the two parts split the vertices of `g` into connected
    /// pieces.
    pub fn validated(g: &ZGraph, first: VertexSet, second: VertexSet) -> Result<Self> {
        let f = Facet { first, second };
        f.check(g)?;
        Ok(f)
    }

    pub fn check(&self, g: &ZGraph) -> Result<()> {
        if self.first.is_empty() || self.second.is_empty() {
            return Err(Error::InvalidFacet("empty side".into()));
        }
        if !self.first.is_disjoint(self.second) || self.first.union(self.second) != g.vertices() {
            return Err(Error::InvalidFacet("sides must partition the vertex set".into()));
        }
        if !g.connected_within(self.first) || !g.connected_within(self.second) {
            return Err(Error::InvalidFacet("side induces a disconnected subgraph".into()));
        }
        Ok(())
    }

    pub fn opposite(self) -> Facet {
        Facet {
            first: self.second,
            second: self.first,
        }
    }

    pub fn pair(self) -> FacetPair {
        FacetPair::new(self.first, self.second)
    }

    pub fn to_partition(self) -> OrderedPartition {
        OrderedPartition {
            parts: vec![self.first, self.second],
        }
    }
}

/// A pair of opposite facets: an unordered 2-partition. Stored with the
/// side holding the least vertex first.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct FacetPair {
    low: VertexSet,
    high: VertexSet,
}

impl FacetPair {
    pub fn new(a: VertexSet, b: VertexSet) -> Self {
        if !a.is_empty() && a.least() < b.least() {
            FacetPair { low: a, high: b }
        } else {
            FacetPair { low: b, high: a }
        }
    }

    /// The side containing the least vertex.
    pub fn low(self) -> VertexSet {
        self.low
    }

    pub fn high(self) -> VertexSet {
        self.high
    }

    pub fn sides(self) -> [VertexSet; 2] {
        [self.low, self.high]
    }

    pub fn facet(self) -> Facet {
        Facet::new(self.low, self.high)
    }

    pub fn check(self, g: &ZGraph) -> Result<()> {
        self.facet().check(g)
    }

    /// Sort key of the canonical enumeration order.
    pub fn order_key(self) -> (usize, VertexSet) {
        (self.low.len(), self.low)
    }
}

/// An unordered 3-partition with connected parts, the common refinement of
/// the facets in one belt.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct BeltCore {
    parts: [VertexSet; 3],
}

impl BeltCore {
    /// Normalizes the part order (by least vertex) and validates the core
    /// against `g`.
    pub fn new(g: &ZGraph, parts: [VertexSet; 3]) -> Result<Self> {
        let core = BeltCore::normalized(parts);
        let op = OrderedPartition::new(g.n(), core.parts.to_vec())?;
        if !op.has_connected_parts(g) {
            return Err(Error::InvalidPartition(
                "core part induces a disconnected subgraph".into(),
            ));
        }
        Ok(core)
    }

    fn normalized(mut parts: [VertexSet; 3]) -> Self {
        parts.sort_by_key(|p| p.least());
        BeltCore { parts }
    }

    pub fn parts(&self) -> [VertexSet; 3] {
        self.parts
    }

    /// Number of nonempty crossing-edge classes among the three part pairs.
    pub fn directions(&self, g: &ZGraph) -> usize {
        let [p, q, r] = self.parts;
        [(p, q), (q, r), (p, r)]
            .into_iter()
            .filter(|&(x, y)| touches(g, x, y))
            .count()
    }
}

/// Whether some edge of `g` joins `x` and `y`.
pub fn touches(g: &ZGraph, x: VertexSet, y: VertexSet) -> bool {
    x.iter().any(|v| !g.neighbors(v).is_disjoint(y))
}

/// The set of facets parallel to one codimension-2 face.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Belt {
    pub core: BeltCore,
    pub members: Vec<Facet>,
    pub directions: usize,
}

pub(crate) fn require_connected(g: &ZGraph, min_n: usize) -> Result<()> {
    if g.n() < min_n {
        return Err(Error::TooFewVertices { n: g.n(), need: min_n });
    }
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    Ok(())
}

/// Unordered facet pairs in canonical order: by size of the side containing
/// vertex 0, then by its bitmask.
pub fn enumerate_facet_pairs(g: &ZGraph) -> Result<Vec<FacetPair>> {
    require_connected(g, 2)?;
    let all = g.vertices();
    let rest = all.difference(VertexSet::singleton(0));
    let mut out: Vec<FacetPair> = rest
        .subsets()
        .map(|t| t.with(0))
        .filter(|&a| a != all && g.connected_within(a) && g.connected_within(all.difference(a)))
        .map(|a| FacetPair::new(a, all.difference(a)))
        .collect();
    out.sort_by_key(|p| p.order_key());
    Ok(out)
}

/// All oriented facets: each pair in canonical order, followed immediately
/// by its opposite.
pub fn enumerate_facets(g: &ZGraph) -> Result<Vec<Facet>> {
    Ok(enumerate_facet_pairs(g)?
        .into_iter()
        .flat_map(|p| [p.facet(), p.facet().opposite()])
        .collect())
}

/// All unordered 3-partitions with connected parts, ordered by the size of
/// the part containing vertex 0 and then by the part bitmasks.
pub fn enumerate_codim2(g: &ZGraph) -> Result<Vec<BeltCore>> {
    require_connected(g, 3)?;
    let all = g.vertices();
    let mut out = Vec::new();
    for t in all.difference(VertexSet::singleton(0)).subsets() {
        let p = t.with(0);
        if !g.connected_within(p) {
            continue;
        }
        let rest = all.difference(p);
        let Some(m) = rest.least() else { continue };
        for u in rest.difference(VertexSet::singleton(m)).subsets() {
            let q = u.with(m);
            let r = rest.difference(q);
            if r.is_empty() || !g.connected_within(q) || !g.connected_within(r) {
                continue;
            }
            out.push(BeltCore::normalized([p, q, r]));
        }
    }
    out.sort_by_key(|c| (c.parts[0].len(), c.parts));
    Ok(out)
}

/// The belt of facets whose 2-partition is coarsened from `core`.
pub fn belt_of(g: &ZGraph, core: &BeltCore) -> Result<Belt> {
    let core = BeltCore::new(g, core.parts)?;
    let [p, q, r] = core.parts;
    let mut members = Vec::with_capacity(6);
    for (merged, other) in [(p.union(q), r), (q.union(r), p), (p.union(r), q)] {
        if g.connected_within(merged) {
            members.push(Facet::new(merged, other));
            members.push(Facet::new(other, merged));
        }
    }
    Ok(Belt {
        directions: core.directions(g),
        core,
        members,
    })
}

/// Whether two pairs of opposite facets lie in a common belt: exactly one of
/// the four side intersections is empty and the other three induce
/// connected subgraphs.
pub fn in_same_belt(g: &ZGraph, f1: FacetPair, f2: FacetPair) -> Result<bool> {
    if f1 == f2 {
        return Err(Error::SameFacetPair);
    }
    Ok(same_belt_unchecked(g, f1, f2))
}

pub(crate) fn same_belt_unchecked(g: &ZGraph, f1: FacetPair, f2: FacetPair) -> bool {
    let mut empty = 0;
    for x in f1.sides() {
        for y in f2.sides() {
            let s = x.intersection(y);
            if s.is_empty() {
                empty += 1;
            } else if !g.connected_within(s) {
                return false;
            }
        }
    }
    empty == 1
}

/// Facet pairs sharing a belt with `f`, generated directly: split one side
/// into two connected pieces and attach one piece to the other side.
pub fn belt_neighbors(g: &ZGraph, f: FacetPair) -> Vec<FacetPair> {
    let mut out = Vec::new();
    let all = g.vertices();
    for (side, other) in [(f.low(), f.high()), (f.high(), f.low())] {
        let Some(m) = side.least() else { continue };
        // Each unordered split {piece, rest} of `side` is visited once by
        // fixing `m` in `piece`.
        for t in side.difference(VertexSet::singleton(m)).subsets() {
            let piece = t.with(m);
            let rest = side.difference(piece);
            if rest.is_empty() || !g.connected_within(piece) || !g.connected_within(rest) {
                continue;
            }
            for (stay, moved) in [(piece, rest), (rest, piece)] {
                let grown = other.union(moved);
                if g.connected_within(grown) {
                    out.push(FacetPair::new(stay, all.difference(stay)));
                }
            }
        }
    }
    out.sort_by_key(|p| p.order_key());
    out.dedup();
    out
}

/// Whether the face named by `fine` lies in the face named by `coarse`:
/// every part of `fine` sits inside a part of `coarse`, and every edge of `g`
/// running between different parts of `coarse` is oriented the same way by
/// both orders.
pub fn is_face_of(g: &ZGraph, fine: &OrderedPartition, coarse: &OrderedPartition) -> bool {
    if !fine.parts.iter().all(|p| coarse.parts.iter().any(|c| p.is_subset(*c))) {
        return false;
    }
    for (i, j) in g.edges() {
        let (ci, cj) = (coarse.part_of(i), coarse.part_of(j));
        if ci == cj {
            continue;
        }
        let (fi, fj) = (fine.part_of(i), fine.part_of(j));
        if (fi < fj) != (ci < cj) {
            return false;
        }
    }
    true
}

/// Family-level incidence: `fine` refines `coarse` as unordered partitions
/// and all parts of both are connected.
pub fn is_face_family_of(g: &ZGraph, fine: &OrderedPartition, coarse: &OrderedPartition) -> bool {
    fine.has_connected_parts(g)
        && coarse.has_connected_parts(g)
        && fine.parts.iter().all(|p| coarse.parts.iter().any(|c| p.is_subset(*c)))
}

/// Whether two ordered partitions name the same face: same parts, and every
/// edge between distinct parts oriented the same way.
pub fn same_face(g: &ZGraph, a: &OrderedPartition, b: &OrderedPartition) -> bool {
    let mut pa = a.parts.clone();
    let mut pb = b.parts.clone();
    pa.sort();
    pb.sort();
    pa == pb && is_face_of(g, a, b)
}

/// Every codimension-2 face, one ordered representative each (the
/// lexicographically first order of the core's parts naming it).
pub fn enumerate_codim2_faces(g: &ZGraph) -> Result<Vec<OrderedPartition>> {
    const ORDERS: [[usize; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
    let mut out = Vec::new();
    for core in enumerate_codim2(g)? {
        let mut reps: Vec<OrderedPartition> = Vec::new();
        for ord in ORDERS {
            let cand = OrderedPartition {
                parts: ord.iter().map(|&k| core.parts[k]).collect(),
            };
            if !reps.iter().any(|r| same_face(g, r, &cand)) {
                reps.push(cand);
            }
        }
        out.extend(reps);
    }
    Ok(out)
}
