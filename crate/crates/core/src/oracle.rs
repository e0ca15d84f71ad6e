//! Exact-arithmetic geometric referee for the partition calculus.
//!
//! Works directly with the zone vectors `e_i - e_j` as integer rows: ranks by
//! fraction-free elimination over arbitrary-precision integers, facets as
//! closed corank-1 row sets, belts by the rank of support intersections, and
//! facet adjacency from the sign vectors of linear functionals. Nothing here
//! consults vertex partitions or connectivity.

use std::collections::{BTreeMap, BTreeSet, HashSet};

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::faces::Facet;
use crate::vset::VertexSet;
use crate::zgraph::ZGraph;

/// Maximum number of subset rank evaluations `oracle_facets` will attempt.
pub const SUBSET_CAP: u128 = 100_000_000;

/// One row `e_i - e_j` (`i < j`) per edge, in edge enumeration order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZoneMatrix {
    pub n: usize,
    pub edges: Vec<(usize, usize)>,
    pub rows: Vec<Vec<i64>>,
}

/// A set of zone vectors, as a bitmask over the rows of a [`ZoneMatrix`].
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Support(pub u128);

impl Support {
    pub fn contains(self, row: usize) -> bool {
        self.0 >> row & 1 == 1
    }

    pub fn rows(self) -> impl Iterator<Item = usize> {
        (0..128).filter(move |&r| self.contains(r))
    }

    pub fn intersection(self, other: Support) -> Support {
        Support(self.0 & other.0)
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }
}

pub fn zone_matrix(g: &ZGraph) -> ZoneMatrix {
    let edges = g.edges();
    let rows = edges
        .iter()
        .map(|&(i, j)| {
            let mut r = vec![0i64; g.n()];
            r[i] = 1;
            r[j] = -1;
            r
        })
        .collect();
    ZoneMatrix { n: g.n(), edges, rows }
}

impl ZoneMatrix {
    /// Edge list of a support.
    pub fn support_edges(&self, s: Support) -> Vec<(usize, usize)> {
        s.rows().map(|r| self.edges[r]).collect()
    }

    /// Support made of the given edges; `None` if one is not a row.
    pub fn support_of(&self, edges: &[(usize, usize)]) -> Option<Support> {
        let mut bits = 0u128;
        for &(a, b) in edges {
            let e = (a.min(b), a.max(b));
            bits |= 1 << self.edges.iter().position(|&x| x == e)?;
        }
        Some(Support(bits))
    }

    pub fn rank_of(&self, s: Support) -> usize {
        let rows: Vec<&[i64]> = s.rows().map(|r| self.rows[r].as_slice()).collect();
        rank_rows(&rows)
    }
}

/// Rank over the rationals by Bareiss elimination on big integers.
pub fn exact_rank(m: &ZoneMatrix) -> usize {
    let rows: Vec<&[i64]> = m.rows.iter().map(Vec::as_slice).collect();
    rank_rows(&rows)
}

fn rank_rows(rows: &[&[i64]]) -> usize {
    if rows.is_empty() {
        return 0;
    }
    let cols = rows[0].len();
    let mut a: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    let mut prev = BigInt::from(1);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..a.len()).find(|&r| !a[r][c].is_zero()) else {
            continue;
        };
        a.swap(rank, p);
        for r in rank + 1..a.len() {
            for k in c + 1..cols {
                let v = &a[rank][c] * &a[r][k] - &a[r][c] * &a[rank][k];
                // Exact by Sylvester's identity.
                debug_assert!((&v % &prev).is_zero());
                a[r][k] = v / &prev;
            }
            a[r][c] = BigInt::zero();
        }
        prev = a[rank][c].abs();
        rank += 1;
        if rank == a.len() {
            break;
        }
    }
    rank
}

fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

/// Calls `f` on every `k`-subset of `lo..m` (as a bitmask) that contains
/// `first`, with all other elements above `first`.
fn for_each_subset_with_first(m: usize, k: usize, first: usize, mut f: impl FnMut(u128)) {
    if k == 0 {
        return;
    }
    let mut idx: Vec<usize> = (first + 1..first + k).collect();
    if idx.last().is_some_and(|&x| x >= m) {
        return;
    }
    loop {
        let mut bits = 1u128 << first;
        for &i in &idx {
            bits |= 1 << i;
        }
        f(bits);
        // Next combination of idx within (first, m).
        let mut pos = idx.len();
        loop {
            if pos == 0 {
                return;
            }
            pos -= 1;
            if idx[pos] < m - (idx.len() - pos) {
                idx[pos] += 1;
                for q in pos + 1..idx.len() {
                    idx[q] = idx[q - 1] + 1;
                }
                break;
            }
        }
    }
}

/// Closed zone sets of rank `d - 1`: the supports of the facet families.
///
/// Every `(d-1)`-subset of rows with full rank spans exactly one such flat;
/// subsets already inside a found flat are skipped. Refuses when the number
/// of subsets exceeds [`SUBSET_CAP`].
pub fn oracle_facets(g: &ZGraph) -> Result<Vec<Support>> {
    let m = zone_matrix(g);
    let d = exact_rank(&m);
    if d < 2 {
        return Err(Error::DimensionTooSmall { d, min: 2 });
    }
    if m.rows.len() > 128 {
        return Err(Error::Internal("more than 128 zone vectors".into()));
    }
    let k = d - 1;
    let total = binomial(m.rows.len(), k);
    if total > SUBSET_CAP {
        return Err(Error::Internal(format!(
            "oracle refuses: {} subsets exceed the cap of {}",
            total, SUBSET_CAP
        )));
    }
    let rows = m.rows.len();
    let per_first: Vec<Vec<Support>> = (0..rows)
        .into_par_iter()
        .map(|first| {
            let mut found: Vec<Support> = Vec::new();
            for_each_subset_with_first(rows, k, first, |bits| {
                if found.iter().any(|f| bits & !f.0 == 0) {
                    return;
                }
                let s = Support(bits);
                if m.rank_of(s) != k {
                    return;
                }
                let closure = (0..rows)
                    .filter(|&r| !s.contains(r))
                    .filter(|&r| m.rank_of(Support(bits | 1 << r)) == k)
                    .fold(bits, |acc, r| acc | 1 << r);
                found.push(Support(closure));
            });
            found
        })
        .collect();
    let all: BTreeSet<Support> = per_first.into_iter().flatten().collect();
    Ok(all.into_iter().collect())
}

/// Whether two facet supports lie in a common belt: their intersection has
/// rank `d - 2`.
pub fn oracle_same_belt(g: &ZGraph, s1: Support, s2: Support) -> Result<bool> {
    if s1 == s2 {
        return Err(Error::SameFacetPair);
    }
    let m = zone_matrix(g);
    let d = exact_rank(&m);
    Ok(d >= 2 && m.rank_of(s1.intersection(s2)) == d - 2)
}

/// Edges with both ends on the same side of a facet: the support predicted
/// by the partition calculus.
pub fn partition_support(m: &ZoneMatrix, sides: [VertexSet; 2]) -> Support {
    let mut bits = 0u128;
    for (r, &(i, j)) in m.edges.iter().enumerate() {
        if sides.iter().any(|s| s.contains(i) && s.contains(j)) {
            bits |= 1 << r;
        }
    }
    Support(bits)
}

type SignVector = Vec<i8>;

/// Every sign vector `sign(c_i - c_j)` over the edges, for all weak orders
/// `c` of the vertices.
fn covectors(g: &ZGraph) -> HashSet<SignVector> {
    let n = g.n();
    let edges = g.edges();
    let total = (n as u64).pow(n as u32);
    (0..total)
        .into_par_iter()
        .map(|mut code| {
            let mut c = vec![0u64; n];
            for x in c.iter_mut() {
                *x = code % n as u64;
                code /= n as u64;
            }
            edges
                .iter()
                .map(|&(i, j)| (c[i] as i64 - c[j] as i64).signum() as i8)
                .collect::<SignVector>()
        })
        .collect::<Vec<_>>()
        .into_iter()
        .collect()
}

/// Facet adjacency of the dual polytope computed from covectors: facets are
/// covectors whose zero set has rank `d - 1`, codimension-2 faces those of
/// rank `d - 2`, and a face lies in a facet when the facet's covector is
/// conformal to it. Intended for `n <= 7`.
pub fn oracle_dual_edges(g: &ZGraph) -> Result<BTreeSet<(Facet, Facet)>> {
    let m = zone_matrix(g);
    let d = exact_rank(&m);
    if d < 2 || !g.is_connected() {
        return Err(Error::DimensionTooSmall { d, min: 2 });
    }
    let zero_support = |sv: &SignVector| {
        Support(
            sv.iter()
                .enumerate()
                .filter(|(_, &s)| s == 0)
                .fold(0u128, |acc, (r, _)| acc | 1 << r),
        )
    };
    let mut by_rank: BTreeMap<usize, Vec<SignVector>> = BTreeMap::new();
    for sv in covectors(g) {
        let r = m.rank_of(zero_support(&sv));
        if r + 2 >= d && r < d {
            by_rank.entry(r).or_default().push(sv);
        }
    }
    let facets = by_rank.remove(&(d - 1)).unwrap_or_default();
    let ridges = by_rank.remove(&(d - 2)).unwrap_or_default();
    let to_facet = |sv: &SignVector| -> Facet {
        // The side at the + end of a crossing edge comes first.
        let mut first = VertexSet::EMPTY;
        let mut adj = vec![VertexSet::EMPTY; g.n()];
        for (r, &(i, j)) in m.edges.iter().enumerate() {
            match sv[r] {
                0 => {
                    adj[i].insert(j);
                    adj[j].insert(i);
                }
                1 => first.insert(i),
                _ => first.insert(j),
            }
        }
        let zero_graph = ZGraph::from_adjacency(adj);
        let side = zero_graph.reach(first.least().expect("facet has a crossing edge"), g.vertices());
        Facet::new(side, g.vertices().difference(side))
    };
    let conformal = |f: &SignVector, h: &SignVector| f.iter().zip(h).all(|(&a, &b)| a == 0 || a == b);
    let mut edges = BTreeSet::new();
    for h in &ridges {
        let above: Vec<Facet> = facets.iter().filter(|f| conformal(f, h)).map(to_facet).collect();
        if above.len() != 2 {
            return Err(Error::Internal(format!("ridge covector in {} facets", above.len())));
        }
        let (a, b) = (above[0].min(above[1]), above[0].max(above[1]));
        edges.insert((a, b));
    }
    Ok(edges)
}
