//! Symmetric zonotopes as red/blue colored graphs.
//!
//! A symmetric zonotope is spanned by two conjugate zone sets of `d - 1`
//! vectors each. In graph terms the red and the blue edges each form a
//! spanning forest with two trees, every red edge joins the two blue trees
//! and every blue edge joins the two red trees. The red and blue facets are
//! the 2-partitions given by the red and blue trees.
//!
//! Write `R1, R2` and `B1, B2` for the red and blue trees. Every red edge
//! stays inside one `Ri` and crosses from `B1` to `B2`, so the red tree on
//! `Ri` is a spanning tree of the complete bipartite graph between
//! `Ri ∩ B1` and `Ri ∩ B2`, and symmetrically for blue. The searches below
//! enumerate conjugate graphs through these four cells.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::ControlFlow;
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::canon::{canonical, PairMatrix};
use crate::error::{Error, Result};
use crate::faces::{same_belt_unchecked, FacetPair};
use crate::forest::{bipartite_edges, for_each_spanning_tree};
use crate::venkov::{belt_diameter, belt_distance, BeltPath};
use crate::vset::VertexSet;
use crate::zgraph::{contraction_image, contraction_image_set, ZGraph};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum EdgeColor {
    Red,
    Blue,
}

/// A graph whose edges are each colored red or blue.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ColoredZGraph {
    base: ZGraph,
    red: ZGraph,
    blue: ZGraph,
}

impl ColoredZGraph {
    pub fn new(n: usize, red_edges: &[(usize, usize)], blue_edges: &[(usize, usize)]) -> Result<Self> {
        let red = ZGraph::from_edges(n, red_edges.iter().copied())?;
        let blue = ZGraph::from_edges(n, blue_edges.iter().copied())?;
        let base = ZGraph::from_edges(n, red_edges.iter().chain(blue_edges).copied())?;
        Ok(ColoredZGraph { base, red, blue })
    }

    pub fn n(&self) -> usize {
        self.base.n()
    }

    pub fn base(&self) -> &ZGraph {
        &self.base
    }

    pub fn red(&self) -> &ZGraph {
        &self.red
    }

    pub fn blue(&self) -> &ZGraph {
        &self.blue
    }

    pub fn color_of(&self, i: usize, j: usize) -> Option<EdgeColor> {
        if self.red.has_edge(i, j) {
            Some(EdgeColor::Red)
        } else if self.blue.has_edge(i, j) {
            Some(EdgeColor::Blue)
        } else {
            None
        }
    }

    /// Edges `(i, j, color)` with `i < j` in lexicographic order.
    pub fn colored_edges(&self) -> Vec<(usize, usize, EdgeColor)> {
        self.base
            .edges()
            .into_iter()
            .map(|(i, j)| (i, j, self.color_of(i, j).expect("base edge is colored")))
            .collect()
    }

    pub fn swap_colors(&self) -> ColoredZGraph {
        ColoredZGraph {
            base: self.base.clone(),
            red: self.blue.clone(),
            blue: self.red.clone(),
        }
    }

    pub fn permute(&self, perm: &[usize]) -> ColoredZGraph {
        ColoredZGraph {
            base: self.base.permute(perm),
            red: self.red.permute(perm),
            blue: self.blue.permute(perm),
        }
    }

    /// The 2-partition given by the red components, if there are exactly two.
    pub fn red_facet(&self) -> Option<FacetPair> {
        two_parts(&self.red)
    }

    pub fn blue_facet(&self) -> Option<FacetPair> {
        two_parts(&self.blue)
    }
}

fn two_parts(g: &ZGraph) -> Option<FacetPair> {
    match g.components().as_slice() {
        &[a, b] => Some(FacetPair::new(a, b)),
        _ => None,
    }
}

impl fmt::Debug for ColoredZGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "ColoredZGraph(n={}, red={:?}, blue={:?})",
            self.n(),
            self.red.edges(),
            self.blue.edges()
        )
    }
}

impl PairMatrix for ColoredZGraph {
    fn order(&self) -> usize {
        self.n()
    }
    fn value(&self, i: usize, j: usize) -> u8 {
        match self.color_of(i, j) {
            None => 0,
            Some(EdgeColor::Red) => 1,
            Some(EdgeColor::Blue) => 2,
        }
    }
    fn radix(&self) -> u128 {
        3
    }
}

/// Canonical code up to vertex relabeling and exchanging the two colors,
/// with the representative achieving it.
pub fn canonical_colored(cg: &ColoredZGraph) -> (u128, ColoredZGraph) {
    let a = canonical(cg);
    let swapped = cg.swap_colors();
    let b = canonical(&swapped);
    if a.code <= b.code {
        (a.code, cg.permute(&a.perm))
    } else {
        (b.code, swapped.permute(&b.perm))
    }
}

/// Why a colored graph fails to encode a conjugate pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ConjugacyFailure {
    BaseDisconnected,
    RedNotTwoTrees { components: usize, edges: usize },
    BlueNotTwoTrees { components: usize, edges: usize },
    RedEdgeInsideBlueTree(usize, usize),
    BlueEdgeInsideRedTree(usize, usize),
}

impl fmt::Display for ConjugacyFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConjugacyFailure::BaseDisconnected => write!(f, "underlying graph is disconnected"),
            ConjugacyFailure::RedNotTwoTrees { components, edges } => {
                write!(f, "red subgraph has {} components and {} edges", components, edges)
            }
            ConjugacyFailure::BlueNotTwoTrees { components, edges } => {
                write!(f, "blue subgraph has {} components and {} edges", components, edges)
            }
            ConjugacyFailure::RedEdgeInsideBlueTree(i, j) => write!(f, "red edge ({}, {}) inside a blue tree", i, j),
            ConjugacyFailure::BlueEdgeInsideRedTree(i, j) => write!(f, "blue edge ({}, {}) inside a red tree", i, j),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjugacyCheck {
    pub conjugate: bool,
    pub failures: Vec<ConjugacyFailure>,
}

/// Checks that red and blue are two-tree spanning forests and that every
/// edge of one color joins the two trees of the other.
pub fn check_conjugate(cg: &ColoredZGraph) -> ConjugacyCheck {
    let n = cg.n();
    let mut failures = Vec::new();
    if !cg.base.is_connected() {
        failures.push(ConjugacyFailure::BaseDisconnected);
    }
    let red_comps = cg.red.components();
    let blue_comps = cg.blue.components();
    let forest_ok = |comps: &[VertexSet], edges: usize| comps.len() == 2 && edges + 2 == n;
    if !forest_ok(&red_comps, cg.red.edge_count()) {
        failures.push(ConjugacyFailure::RedNotTwoTrees {
            components: red_comps.len(),
            edges: cg.red.edge_count(),
        });
    }
    if !forest_ok(&blue_comps, cg.blue.edge_count()) {
        failures.push(ConjugacyFailure::BlueNotTwoTrees {
            components: blue_comps.len(),
            edges: cg.blue.edge_count(),
        });
    }
    let same_comp = |comps: &[VertexSet], i: usize, j: usize| comps.iter().any(|c| c.contains(i) && c.contains(j));
    for (i, j) in cg.red.edges() {
        if same_comp(&blue_comps, i, j) {
            failures.push(ConjugacyFailure::RedEdgeInsideBlueTree(i, j));
        }
    }
    for (i, j) in cg.blue.edges() {
        if same_comp(&red_comps, i, j) {
            failures.push(ConjugacyFailure::BlueEdgeInsideRedTree(i, j));
        }
    }
    ConjugacyCheck {
        conjugate: failures.is_empty(),
        failures,
    }
}

fn require_conjugate(cg: &ColoredZGraph) -> Result<()> {
    let c = check_conjugate(cg);
    if c.conjugate {
        Ok(())
    } else {
        let msg: Vec<String> = c.failures.iter().map(|f| f.to_string()).collect();
        Err(Error::NotConjugate(msg.join("; ")))
    }
}

/// Least vertex that is a leaf of both the red and the blue forest.
pub fn find_common_leaf(cg: &ColoredZGraph) -> Result<Option<usize>> {
    require_conjugate(cg)?;
    Ok((0..cg.n()).find(|&v| cg.red.degree(v) == 1 && cg.blue.degree(v) == 1))
}

/// Belt distance between the red and the blue facet, with a shortest path.
pub fn red_blue_path(cg: &ColoredZGraph) -> Result<(usize, BeltPath)> {
    require_conjugate(cg)?;
    let red = cg.red_facet().expect("conjugate");
    let blue = cg.blue_facet().expect("conjugate");
    belt_distance(&cg.base, red, blue)
}

/// Belt distance between the red and the blue facet.
pub fn red_blue_distance(cg: &ColoredZGraph) -> Result<usize> {
    Ok(red_blue_path(cg)?.0)
}

/// An edge lying on a cycle whose other edges all have the opposite color,
/// if one exists: for a red edge, its ends joined by a blue path.
pub fn single_color_cycle(cg: &ColoredZGraph) -> Option<(usize, usize, EdgeColor)> {
    for (i, j, c) in cg.colored_edges() {
        let other = match c {
            EdgeColor::Red => &cg.blue,
            EdgeColor::Blue => &cg.red,
        };
        if other.reach(i, other.vertices()).contains(j) {
            return Some((i, j, c));
        }
    }
    None
}

/// Summary of the symmetric structure of a colored graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymmetryReport {
    pub conjugate: bool,
    pub failures: Vec<ConjugacyFailure>,
    pub common_leaf: Option<usize>,
    pub red_blue_distance: Option<usize>,
    pub path: Option<BeltPath>,
    pub bipartite: bool,
    pub red_facet: Option<FacetPair>,
    pub blue_facet: Option<FacetPair>,
}

pub fn symmetry_report(cg: &ColoredZGraph) -> Result<SymmetryReport> {
    let check = check_conjugate(cg);
    let (common_leaf, distance, path) = if check.conjugate {
        let (d, p) = red_blue_path(cg)?;
        (find_common_leaf(cg)?, Some(d), Some(p))
    } else {
        (None, None, None)
    };
    Ok(SymmetryReport {
        conjugate: check.conjugate,
        failures: check.failures,
        common_leaf,
        red_blue_distance: distance,
        path,
        bipartite: cg.base.is_bipartite(),
        red_facet: cg.red_facet(),
        blue_facet: cg.blue_facet(),
    })
}

/// `K_{2,d-1}` with the star coloring: vertex 0 is `r` (isolated in red),
/// vertex 1 is `b` (isolated in blue); blue edges `r-v` and red edges `b-v`
/// for `v = 2..=d`.
pub fn gen_k2dm1(d: usize) -> Result<ColoredZGraph> {
    if d < 3 {
        return Err(Error::DimensionTooSmall { d, min: 3 });
    }
    let red: Vec<_> = (2..=d).map(|v| (1, v)).collect();
    let blue: Vec<_> = (2..=d).map(|v| (0, v)).collect();
    ColoredZGraph::new(d + 1, &red, &blue)
}

/// Whether the red singleton structure forces `K_{2,n-2}` with the star
/// coloring: returns `None` when no red tree is a single vertex.
pub fn singleton_structure_holds(cg: &ColoredZGraph) -> Option<bool> {
    let red = cg.red.components();
    let r = red.iter().find(|c| c.len() == 1)?.least()?;
    let blue = cg.blue.components();
    let Some(b) = blue.iter().find(|c| c.len() == 1).and_then(|c| c.least()) else {
        return Some(false);
    };
    let middle = cg
        .base
        .vertices()
        .difference(VertexSet::singleton(r))
        .difference(VertexSet::singleton(b));
    Some(
        cg.red.neighbors(b) == middle
            && cg.blue.neighbors(r) == middle
            && cg.red.edge_count() == middle.len()
            && cg.blue.edge_count() == middle.len(),
    )
}

// ---------------------------------------------------------------------------
// Cell enumeration of conjugate colored graphs.

/// Sizes of the cells `R1∩B1, R1∩B2, R2∩B1, R2∩B2`.
pub type CellSizes = [usize; 4];

fn tree_possible(x: usize, y: usize) -> bool {
    (x >= 1 && y >= 1) || x + y == 1
}

fn layout_valid(s: CellSizes) -> bool {
    tree_possible(s[0], s[1]) && tree_possible(s[2], s[3]) && tree_possible(s[0], s[2]) && tree_possible(s[1], s[3])
}

/// Images of a layout under swapping the red trees, swapping the blue trees,
/// and exchanging colors.
fn layout_orbit(s: CellSizes) -> BTreeSet<CellSizes> {
    let gens: [fn(CellSizes) -> CellSizes; 3] = [
        |[a, b, c, e]| [c, e, a, b],
        |[a, b, c, e]| [b, a, e, c],
        |[a, b, c, e]| [a, c, b, e],
    ];
    let mut orbit = BTreeSet::from([s]);
    let mut stack = vec![s];
    while let Some(x) = stack.pop() {
        for g in gens {
            let y = g(x);
            if orbit.insert(y) {
                stack.push(y);
            }
        }
    }
    orbit
}

/// One layout per symmetry class, in lexicographic order.
pub fn cell_layouts(n: usize) -> Vec<CellSizes> {
    let mut out = Vec::new();
    for a in 0..=n {
        for b in 0..=n - a {
            for c in 0..=n - a - b {
                let s = [a, b, c, n - a - b - c];
                if layout_valid(s) && layout_orbit(s).first() == Some(&s) {
                    out.push(s);
                }
            }
        }
    }
    out
}

/// Vertex sets of the four cells, labeled consecutively.
pub fn cell_sets(s: CellSizes) -> [VertexSet; 4] {
    let mut out = [VertexSet::EMPTY; 4];
    let mut start = 0;
    for k in 0..4 {
        out[k] = (start..start + s[k]).collect();
        start += s[k];
    }
    out
}

fn trees_of(x: VertexSet, y: VertexSet, no_leaf: VertexSet) -> Vec<Vec<(usize, usize)>> {
    crate::forest::spanning_trees(x.union(y), &bipartite_edges(x, y), no_leaf)
}

fn degree_one(edges: &[(usize, usize)], within: VertexSet) -> VertexSet {
    within
        .iter()
        .filter(|&v| edges.iter().filter(|&&(a, b)| a == v || b == v).count() == 1)
        .collect()
}

/// All conjugate colored graphs on `n` vertices up to relabeling and color
/// exchange, as canonical representatives sorted by canonical code.
pub fn enumerate_conjugate(n: usize) -> Result<Vec<ColoredZGraph>> {
    if n < 3 {
        return Err(Error::TooFewVertices { n, need: 3 });
    }
    if n > 12 {
        return Err(Error::UseSampledMode { max: 12 });
    }
    let found: BTreeMap<u128, ColoredZGraph> = cell_layouts(n)
        .into_par_iter()
        .flat_map_iter(|s| {
            let [c11, c12, c21, c22] = cell_sets(s);
            let t1 = trees_of(c11, c12, VertexSet::EMPTY);
            let t2 = trees_of(c21, c22, VertexSet::EMPTY);
            let s1 = trees_of(c11, c21, VertexSet::EMPTY);
            let s2 = trees_of(c12, c22, VertexSet::EMPTY);
            let mut out = Vec::new();
            for a in &t1 {
                for b in &t2 {
                    let red: Vec<_> = a.iter().chain(b).copied().collect();
                    for c in &s1 {
                        for e in &s2 {
                            let blue: Vec<_> = c.iter().chain(e).copied().collect();
                            let cg = ColoredZGraph::new(n, &red, &blue).expect("cells give disjoint edges");
                            out.push(canonical_colored(&cg));
                        }
                    }
                }
            }
            out
        })
        .collect::<Vec<_>>()
        .into_iter()
        .collect();
    Ok(found.into_values().collect())
}

// ---------------------------------------------------------------------------
// Budgeted searches.

/// Search limits: expanded search nodes and wall-clock time.
#[derive(Clone, Copy, Debug)]
pub struct Budget {
    pub max_nodes: u64,
    pub max_time: Option<Duration>,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_nodes: 50_000_000,
            max_time: Some(Duration::from_secs(3600)),
        }
    }
}

struct Meter {
    budget: Budget,
    start: Instant,
    nodes: AtomicU64,
    out_of_budget: AtomicBool,
}

impl Meter {
    fn new(budget: Budget) -> Self {
        Meter {
            budget,
            start: Instant::now(),
            nodes: AtomicU64::new(0),
            out_of_budget: AtomicBool::new(false),
        }
    }

    /// Records `k` nodes; false once the budget is spent.
    fn spend(&self, k: u64) -> bool {
        let total = self.nodes.fetch_add(k, Ordering::Relaxed) + k;
        let over = total > self.budget.max_nodes || self.budget.max_time.is_some_and(|t| self.start.elapsed() > t);
        if over {
            self.out_of_budget.store(true, Ordering::Relaxed);
        }
        !over
    }

    fn nodes(&self) -> u64 {
        self.nodes.load(Ordering::Relaxed)
    }
}

/// Result of a budgeted search. `Exhausted` means the search space was
/// covered completely and holds no solution; `Inconclusive` means the budget
/// ran out first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SearchOutcome<T> {
    Found { witness: T, nodes: u64 },
    Exhausted { nodes: u64 },
    Inconclusive { nodes: u64 },
}

impl<T> SearchOutcome<T> {
    pub fn witness(&self) -> Option<&T> {
        match self {
            SearchOutcome::Found { witness, .. } => Some(witness),
            _ => None,
        }
    }

    pub fn nodes(&self) -> u64 {
        match self {
            SearchOutcome::Found { nodes, .. }
            | SearchOutcome::Exhausted { nodes }
            | SearchOutcome::Inconclusive { nodes } => *nodes,
        }
    }
}

/// A conjugate colored graph without a common leaf.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtremalWitness {
    pub graph: ColoredZGraph,
    pub red_blue_distance: usize,
}

enum LayoutResult {
    Found(ColoredZGraph),
    Exhausted,
    Stopped,
}

fn search_layout(n: usize, s: CellSizes, meter: &Meter) -> LayoutResult {
    let [c11, c12, c21, c22] = cell_sets(s);
    let r1 = c11.union(c12);
    let r2 = c21.union(c22);
    let mut found = None;
    let mut stopped = false;
    let _ = for_each_spanning_tree(r1, &bipartite_edges(c11, c12), VertexSet::EMPTY, |t1| {
        let flow = for_each_spanning_tree(r2, &bipartite_edges(c21, c22), VertexSet::EMPTY, |t2| {
            let red: Vec<_> = t1.iter().chain(t2).copied().collect();
            let red_leaves = degree_one(&red, VertexSet::full(n));
            let mut blue = Vec::new();
            let mut cost = 0;
            for (x, y) in [(c11, c21), (c12, c22)] {
                let mut first = None;
                let flow = for_each_spanning_tree(
                    x.union(y),
                    &bipartite_edges(x, y),
                    red_leaves.intersection(x.union(y)),
                    |t| {
                        first = Some(t.to_vec());
                        ControlFlow::Break(())
                    },
                );
                cost += match flow {
                    ControlFlow::Continue(k) | ControlFlow::Break(k) => k,
                };
                match first {
                    Some(t) => blue.extend(t),
                    None => break,
                }
            }
            if !meter.spend(cost + 1) {
                stopped = true;
                return ControlFlow::Break(());
            }
            if blue.len() + 2 == n {
                found = Some(ColoredZGraph::new(n, &red, &blue).expect("cells give disjoint edges"));
                return ControlFlow::Break(());
            }
            ControlFlow::Continue(())
        });
        if matches!(flow, ControlFlow::Break(_)) {
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    });
    match (found, stopped) {
        (Some(g), _) => LayoutResult::Found(g),
        (None, true) => LayoutResult::Stopped,
        (None, false) => LayoutResult::Exhausted,
    }
}

/// Searches the conjugate colored graphs on `d + 1` vertices for one with no
/// common leaf. Layouts are searched in parallel; the witness from the first
/// layout in canonical order wins.
pub fn search_extremal(d: usize, budget: Budget) -> Result<SearchOutcome<ExtremalWitness>> {
    if d < 3 {
        return Err(Error::DimensionTooSmall { d, min: 3 });
    }
    let n = d + 1;
    if n > crate::zgraph::MAX_N {
        return Err(Error::TooManyVertices {
            n,
            max: crate::zgraph::MAX_N,
        });
    }
    let meter = Meter::new(budget);
    let results: Vec<LayoutResult> = cell_layouts(n)
        .into_par_iter()
        .map(|s| search_layout(n, s, &meter))
        .collect();
    let nodes = meter.nodes();
    let mut stopped = false;
    for r in results {
        match r {
            LayoutResult::Found(g) => {
                let distance = red_blue_distance(&g)?;
                return Ok(SearchOutcome::Found {
                    witness: ExtremalWitness {
                        graph: g,
                        red_blue_distance: distance,
                    },
                    nodes,
                });
            }
            LayoutResult::Stopped => stopped = true,
            LayoutResult::Exhausted => {}
        }
    }
    Ok(if stopped || meter.out_of_budget.load(Ordering::Relaxed) {
        SearchOutcome::Inconclusive { nodes }
    } else {
        SearchOutcome::Exhausted { nodes }
    })
}

// ---------------------------------------------------------------------------
// Explicit extremal families.

/// A generated example with human-readable vertex names.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NamedColoredGraph {
    pub graph: ColoredZGraph,
    pub labels: Vec<String>,
}

/// Vertex count, blue edges and vertex names.
pub type BlueForest = (usize, Vec<(usize, usize)>, Vec<String>);

fn labels(a_count: usize, b_count: usize) -> Vec<String> {
    (1..=a_count)
        .map(|i| format!("A{}", i))
        .chain((1..=b_count).map(|k| format!("B{}", k)))
        .collect()
}

/// Blue edges of the odd family, `d = 2m + 3`: vertices `A1..A4`,
/// `B1..B2m`; edges `A1 B2j` (j = 1..m), `A3 B2m`, `A2 B1`, `A4 B(2j-1)`
/// (j = 1..m).
pub fn odd_family_blue(m: usize) -> Result<BlueForest> {
    if m < 2 {
        return Err(Error::ParameterTooSmall {
            name: "n",
            value: m,
            min: 2,
        });
    }
    let a = |i: usize| i - 1;
    let b = |k: usize| 4 + k - 1;
    let mut blue = Vec::new();
    for j in 1..=m {
        blue.push((a(1), b(2 * j)));
    }
    blue.push((a(3), b(2 * m)));
    blue.push((a(2), b(1)));
    for j in 1..=m {
        blue.push((a(4), b(2 * j - 1)));
    }
    Ok((4 + 2 * m, blue, labels(4, 2 * m)))
}

/// Blue edges of the even family, `d = 2m + 4`: vertices `A1..A5`,
/// `B1..B2m`; edges `A1 B1`, `A1 B3`, `A3 B1`, `A5 B(2j-1)` (j = 2..m),
/// `A2 B2j` (j = 1..m), `A4 B2m`.
pub fn even_family_blue(m: usize) -> Result<BlueForest> {
    if m < 3 {
        return Err(Error::ParameterTooSmall {
            name: "n",
            value: m,
            min: 3,
        });
    }
    let a = |i: usize| i - 1;
    let b = |k: usize| 5 + k - 1;
    let mut blue = vec![(a(1), b(1)), (a(1), b(3)), (a(3), b(1))];
    for j in 2..=m {
        blue.push((a(5), b(2 * j - 1)));
    }
    for j in 1..=m {
        blue.push((a(2), b(2 * j)));
    }
    blue.push((a(4), b(2 * m)));
    Ok((5 + 2 * m, blue, labels(5, 2 * m)))
}

/// Ways to split each blue tree by parity: the red trees are unions of one
/// parity class from each blue tree.
fn red_splits(n: usize, blue: &ZGraph) -> Result<Vec<(VertexSet, VertexSet)>> {
    let comps = blue.components();
    if comps.len() != 2 || blue.edge_count() + 2 != n {
        return Err(Error::NotConjugate(
            "blue edges must form a spanning forest of two trees".into(),
        ));
    }
    let parity = |root: usize| -> VertexSet {
        // Vertices at even distance from root inside its blue tree.
        let mut even = VertexSet::singleton(root);
        let mut frontier = even;
        let mut seen = even;
        let mut depth = 0;
        while !frontier.is_empty() {
            let mut next = VertexSet::EMPTY;
            for v in frontier {
                next = next.union(blue.neighbors(v));
            }
            frontier = next.difference(seen);
            seen = seen.union(frontier);
            depth += 1;
            if depth % 2 == 0 {
                even = even.union(frontier);
            }
        }
        even
    };
    let (s1, s2) = (comps[0], comps[1]);
    let e1 = parity(s1.least().expect("nonempty"));
    let e2 = parity(s2.least().expect("nonempty"));
    let o1 = s1.difference(e1);
    let o2 = s2.difference(e2);
    Ok(vec![(e1.union(e2), o1.union(o2)), (e1.union(o2), o1.union(e2))])
}

/// Red completions of a blue forest: red trees on each side of a parity
/// split, using only edges between the blue trees, with no vertex a leaf of
/// both colors. Calls `visit` for each completion in search order.
fn for_each_red_completion<F>(n: usize, blue_edges: &[(usize, usize)], meter: &Meter, mut visit: F) -> Result<bool>
where
    F: FnMut(ColoredZGraph) -> ControlFlow<()>,
{
    let blue = ZGraph::from_edges(n, blue_edges.iter().copied())?;
    let comps = blue.components();
    let blue_leaves = degree_one(blue_edges, blue.vertices());
    let mut complete = true;
    for (r1, r2) in red_splits(n, &blue)? {
        let (b1, b2) = (comps[0], comps[1]);
        let mut t2_list: Vec<Vec<(usize, usize)>> = Vec::new();
        let flow = for_each_spanning_tree(
            r2,
            &bipartite_edges(r2.intersection(b1), r2.intersection(b2)),
            blue_leaves.intersection(r2),
            |t| {
                t2_list.push(t.to_vec());
                if meter.spend(1) {
                    ControlFlow::Continue(())
                } else {
                    ControlFlow::Break(())
                }
            },
        );
        if matches!(flow, ControlFlow::Break(_)) {
            complete = false;
        }
        let mut stop = false;
        let _ = for_each_spanning_tree(
            r1,
            &bipartite_edges(r1.intersection(b1), r1.intersection(b2)),
            blue_leaves.intersection(r1),
            |t1| {
                for t2 in &t2_list {
                    if !meter.spend(1) {
                        complete = false;
                        stop = true;
                        return ControlFlow::Break(());
                    }
                    let red: Vec<_> = t1.iter().chain(t2).copied().collect();
                    let cg = ColoredZGraph::new(n, &red, blue_edges).expect("red edges lie inside red trees");
                    if visit(cg).is_break() {
                        stop = true;
                        return ControlFlow::Break(());
                    }
                }
                ControlFlow::Continue(())
            },
        );
        if stop {
            return Ok(complete);
        }
    }
    Ok(complete)
}

/// Completes a blue forest with the first red forest (in search order) that
/// makes the pair conjugate with no common leaf, and checks that the
/// red-blue distance is 3.
pub fn complete_red(n: usize, blue_edges: &[(usize, usize)], budget: Budget) -> Result<(ColoredZGraph, usize)> {
    let meter = Meter::new(budget);
    let mut first = None;
    for_each_red_completion(n, blue_edges, &meter, |cg| {
        first = Some(cg);
        ControlFlow::Break(())
    })?;
    let cg = first.ok_or(Error::NoRedCompletion)?;
    require_conjugate(&cg)?;
    if find_common_leaf(&cg)?.is_some() {
        return Err(Error::Internal("completion has a common leaf".into()));
    }
    let dist = red_blue_distance(&cg)?;
    if dist != 3 {
        return Err(Error::Internal(format!("completion has red-blue distance {}", dist)));
    }
    Ok((cg, dist))
}

/// All red completions up to isomorphism (relabeling and color exchange),
/// and whether the enumeration finished within the budget.
pub fn red_completion_classes(
    n: usize,
    blue_edges: &[(usize, usize)],
    budget: Budget,
) -> Result<(Vec<ColoredZGraph>, bool)> {
    let meter = Meter::new(budget);
    let mut classes: BTreeMap<u128, ColoredZGraph> = BTreeMap::new();
    let complete = for_each_red_completion(n, blue_edges, &meter, |cg| {
        let (code, rep) = canonical_colored(&cg);
        classes.entry(code).or_insert(rep);
        ControlFlow::Continue(())
    })?;
    Ok((classes.into_values().collect(), complete))
}

/// The odd family for `d = 2m + 3` with a searched red forest; the red-blue
/// distance is verified to be 3.
pub fn gen_paper_odd(m: usize) -> Result<NamedColoredGraph> {
    let (n, blue, labels) = odd_family_blue(m)?;
    let (graph, _) = complete_red(n, &blue, Budget::default())?;
    Ok(NamedColoredGraph { graph, labels })
}

/// The even family for `d = 2m + 4` with a searched red forest; the
/// red-blue distance is verified to be 3.
pub fn gen_paper_even(m: usize) -> Result<NamedColoredGraph> {
    let (n, blue, labels) = even_family_blue(m)?;
    let (graph, _) = complete_red(n, &blue, Budget::default())?;
    Ok(NamedColoredGraph { graph, labels })
}

// ---------------------------------------------------------------------------
// Reduction of an arbitrary facet pair to a symmetric one.

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ReductionStep {
    /// Glued the ends of an edge internal to both facets.
    Contract(usize, usize),
    /// Removed an edge internal to the first facet.
    DeleteFromFirst(usize, usize),
    /// Removed an edge internal to the second facet.
    DeleteFromSecond(usize, usize),
    /// Removed an edge internal to neither facet.
    DeleteOther(usize, usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Reduction {
    /// Red edges: the surviving zone vectors of the first facet; blue: of
    /// the second.
    pub colored: ColoredZGraph,
    pub first: FacetPair,
    pub second: FacetPair,
    pub steps: Vec<ReductionStep>,
}

fn internal_to(f: FacetPair, i: usize, j: usize) -> bool {
    f.sides().iter().any(|s| s.contains(i) && s.contains(j))
}

/// Reduces a pair of facets of `g` to the red and blue facets of a
/// symmetric zonotope of no larger dimension by projecting along shared
/// zone vectors and removing redundant ones. Neither operation lowers the
/// belt distance between the two facets.
pub fn reduce_to_symmetric(g: &ZGraph, f1: FacetPair, f2: FacetPair) -> Result<Reduction> {
    crate::faces::require_connected(g, 3)?;
    f1.check(g)?;
    f2.check(g)?;
    if f1 == f2 {
        return Err(Error::SameFacetPair);
    }
    let (mut g, mut f1, mut f2) = (g.clone(), f1, f2);
    let mut steps = Vec::new();
    'outer: loop {
        let edges = g.edges();
        if let Some(&(i, j)) = edges
            .iter()
            .find(|&&(i, j)| internal_to(f1, i, j) && internal_to(f2, i, j))
        {
            let map = |f: FacetPair| {
                let [a, b] = f.sides();
                FacetPair::new(contraction_image_set(i, j, a), contraction_image_set(i, j, b))
            };
            g = g.contract(i, j)?;
            f1 = map(f1);
            f2 = map(f2);
            steps.push(ReductionStep::Contract(i, j));
            debug_assert_eq!(contraction_image(i, j, i), contraction_image(i, j, j));
            continue;
        }
        let candidates = edges.iter().map(|&(i, j)| {
            let kind = match (internal_to(f1, i, j), internal_to(f2, i, j)) {
                (true, false) => 0,
                (false, true) => 1,
                _ => 2,
            };
            (kind, i, j)
        });
        let mut ordered: Vec<_> = candidates.collect();
        ordered.sort();
        for (kind, i, j) in ordered {
            let h = g.delete_edge(i, j)?;
            if h.is_connected() && f1.check(&h).is_ok() && f2.check(&h).is_ok() {
                let (a, b) = (i, j);
                steps.push(match kind {
                    0 => ReductionStep::DeleteFromFirst(a, b),
                    1 => ReductionStep::DeleteFromSecond(a, b),
                    _ => ReductionStep::DeleteOther(a, b),
                });
                g = h;
                continue 'outer;
            }
        }
        break;
    }
    let red: Vec<_> = g.edges().into_iter().filter(|&(i, j)| internal_to(f1, i, j)).collect();
    let blue: Vec<_> = g.edges().into_iter().filter(|&(i, j)| internal_to(f2, i, j)).collect();
    if red.len() + blue.len() != g.edge_count() {
        return Err(Error::Internal("reduction left an edge crossing both facets".into()));
    }
    let colored = ColoredZGraph::new(g.n(), &red, &blue)?;
    require_conjugate(&colored)?;
    Ok(Reduction {
        colored,
        first: f1,
        second: f2,
        steps,
    })
}

// ---------------------------------------------------------------------------
// Non-symmetric eight-dimensional example.

/// Vertex names of the nine-vertex example.
pub const D8_LABELS: [&str; 9] = ["A1", "A2", "A3", "A4", "A5", "B1", "B2", "B3", "B4"];

/// The two facets of the eight-dimensional example:
/// `{A1..A5 | B1..B4}` and `{A1 A2 A4 B2 B4 | A3 A5 B1 B3}`.
pub fn d8_facets() -> (FacetPair, FacetPair) {
    let s = |v: &[usize]| v.iter().copied().collect::<VertexSet>();
    (
        FacetPair::new(s(&[0, 1, 2, 3, 4]), s(&[5, 6, 7, 8])),
        FacetPair::new(s(&[0, 1, 3, 6, 8]), s(&[2, 4, 5, 7])),
    )
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct D8Witness {
    pub graph: ZGraph,
    pub first: FacetPair,
    pub second: FacetPair,
    pub distance: usize,
    pub belt_diameter: usize,
}

/// Checks a candidate graph: both facets valid and at belt distance 3.
pub fn d8_distance(g: &ZGraph) -> Option<usize> {
    let (f1, f2) = d8_facets();
    if g.n() != 9 || !g.is_connected() || f1.check(g).is_err() || f2.check(g).is_err() {
        return None;
    }
    belt_distance(g, f1, f2).ok().map(|(d, _)| d)
}

/// Searches nine-vertex graphs for one in which the two facets of
/// [`d8_facets`] are at belt distance 3.
///
/// With cells `P = {A1 A2 A4}`, `Q = {A3 A5}`, `R = {B2 B4}`, `S = {B1 B3}`,
/// a facet sharing a belt with both given facets must contain two of the
/// four sides on one side of its split. Blocking each such facet needs
/// `Q`, `R`, `S` to be independent and the edges below present; the
/// remaining pairs are sampled with a seeded generator. A hit is then
/// pruned to an inclusion-minimal edge set.
pub fn search_d8_nonsymmetric(budget: Budget, seed: u64) -> Result<SearchOutcome<D8Witness>> {
    let (a1, a2, a3, a4, a5, b1, b2, b3, b4) = (0, 1, 2, 3, 4, 5, 6, 7, 8);
    let _ = (a1, a2, a4);
    let forbidden = [(a3, a5), (b2, b4), (b1, b3)];
    let required = [(a3, b1), (a5, b1), (a5, b3), (b1, b4), (b3, b4), (b2, b3)];
    let optional: Vec<(usize, usize)> = (0..9)
        .flat_map(|i| (i + 1..9).map(move |j| (i, j)))
        .filter(|e| !forbidden.contains(e) && !required.contains(e))
        .collect();
    let densities = [0.1, 0.15, 0.2, 0.25, 0.3];
    let meter = Meter::new(budget);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        if !meter.spend(1) {
            return Ok(SearchOutcome::Inconclusive { nodes: meter.nodes() });
        }
        let p = densities[rng.gen_range(0..densities.len())];
        let mut edges: Vec<(usize, usize)> = required.to_vec();
        edges.extend(optional.iter().copied().filter(|_| rng.gen_bool(p)));
        let g = ZGraph::from_edges(9, edges)?;
        if d8_distance(&g) != Some(3) {
            continue;
        }
        let g = prune_d8(g);
        let (first, second) = d8_facets();
        let belt_diameter = belt_diameter(&g)?;
        return Ok(SearchOutcome::Found {
            witness: D8Witness {
                graph: g,
                first,
                second,
                distance: 3,
                belt_diameter,
            },
            nodes: meter.nodes(),
        });
    }
}

fn prune_d8(mut g: ZGraph) -> ZGraph {
    loop {
        let next = g.edges().into_iter().find_map(|(i, j)| {
            let h = g.delete_edge(i, j).ok()?;
            (d8_distance(&h) == Some(3)).then_some(h)
        });
        match next {
            Some(h) => g = h,
            None => return g,
        }
    }
}

/// Whether `a` and `b` are distinct facet pairs sharing a belt.
pub fn share_belt(g: &ZGraph, a: FacetPair, b: FacetPair) -> bool {
    a != b && same_belt_unchecked(g, a, b)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quick() -> Budget {
        Budget {
            max_nodes: 10_000_000,
            max_time: Some(Duration::from_secs(600)),
        }
    }

    #[test]
    fn k2dm1_is_conjugate_with_distance_two() {
        for d in 3..=8 {
            let cg = gen_k2dm1(d).unwrap();
            assert_eq!(cg.n(), d + 1);
            assert_eq!(cg.red().edge_count(), d - 1);
            assert!(check_conjugate(&cg).conjugate);
            assert_eq!(red_blue_distance(&cg).unwrap(), 2);
            assert!(cg.base().is_bipartite());
            assert_eq!(singleton_structure_holds(&cg), Some(true));
            let leaf = find_common_leaf(&cg).unwrap().unwrap();
            assert!(leaf >= 2);
        }
        assert!(gen_k2dm1(2).is_err());
    }

    #[test]
    fn count_mismatch_is_not_conjugate() {
        let cg = ColoredZGraph::new(4, &[(0, 1), (2, 3)], &[(1, 2)]).unwrap();
        let c = check_conjugate(&cg);
        assert!(!c.conjugate);
        assert!(c
            .failures
            .iter()
            .any(|f| matches!(f, ConjugacyFailure::BlueNotTwoTrees { edges: 1, .. })));
        assert!(find_common_leaf(&cg).is_err());
        assert!(red_blue_distance(&cg).is_err());
    }

    #[test]
    fn moving_a_red_edge_breaks_conjugacy() {
        let cg = gen_k2dm1(5).unwrap();
        // Replace red edge b-2 with 2-3, both in the big blue tree.
        let red: Vec<_> = cg
            .red()
            .edges()
            .into_iter()
            .filter(|&e| e != (1, 2))
            .chain([(2, 3)])
            .collect();
        let moved = ColoredZGraph::new(6, &red, &cg.blue().edges()).unwrap();
        assert!(!check_conjugate(&moved).conjugate);
    }

    #[test]
    fn layouts_cover_symmetry_classes() {
        for n in 3..=9 {
            let reps = cell_layouts(n);
            let mut covered = BTreeSet::new();
            for s in &reps {
                covered.extend(layout_orbit(*s));
            }
            for a in 0..=n {
                for b in 0..=n - a {
                    for c in 0..=n - a - b {
                        let s = [a, b, c, n - a - b - c];
                        assert_eq!(layout_valid(s), covered.contains(&s));
                    }
                }
            }
        }
    }

    #[test]
    fn conjugate_class_counts() {
        // Brute force over pairs of two-tree forests.
        let counts: Vec<usize> = (3..=6).map(|n| enumerate_conjugate(n).unwrap().len()).collect();
        assert_eq!(counts, vec![1, 2, 2, 4]);
    }

    #[test]
    fn enumerated_graphs_are_conjugate_and_distinct() {
        for n in 4..=6 {
            let all = enumerate_conjugate(n).unwrap();
            assert!(!all.is_empty());
            let mut codes = BTreeSet::new();
            for cg in &all {
                assert!(check_conjugate(cg).conjugate);
                assert!(codes.insert(canonical_colored(cg).0));
            }
        }
    }

    #[test]
    fn small_dimensions_have_no_extremal_graph() {
        for d in 3..=6 {
            assert!(
                matches!(search_extremal(d, quick()).unwrap(), SearchOutcome::Exhausted { .. }),
                "d = {}",
                d
            );
        }
    }

    #[test]
    fn dimension_seven_has_an_extremal_graph() {
        let out = search_extremal(7, quick()).unwrap();
        let w = out.witness().expect("witness for d = 7");
        assert_eq!(w.red_blue_distance, 3);
        assert_eq!(find_common_leaf(&w.graph).unwrap(), None);
    }

    #[test]
    fn tiny_budget_is_inconclusive() {
        let b = Budget {
            max_nodes: 3,
            max_time: None,
        };
        assert!(matches!(
            search_extremal(8, b).unwrap(),
            SearchOutcome::Inconclusive { .. }
        ));
    }

    #[test]
    fn family_blue_forests() {
        let (n, blue, labels) = odd_family_blue(2).unwrap();
        assert_eq!(n, 8);
        assert_eq!(blue.len(), 6);
        assert_eq!(labels[4], "B1");
        let (n, blue, _) = even_family_blue(3).unwrap();
        assert_eq!(n, 11);
        assert_eq!(blue.len(), 9);
        assert!(odd_family_blue(1).is_err());
        assert!(even_family_blue(2).is_err());
    }

    #[test]
    fn odd_family_smallest_member() {
        let ex = gen_paper_odd(2).unwrap();
        assert!(check_conjugate(&ex.graph).conjugate);
        assert_eq!(find_common_leaf(&ex.graph).unwrap(), None);
        assert_eq!(red_blue_distance(&ex.graph).unwrap(), 3);
    }

    #[test]
    fn reduction_of_symmetric_input_is_identity() {
        let cg = gen_k2dm1(4).unwrap();
        let r = reduce_to_symmetric(cg.base(), cg.red_facet().unwrap(), cg.blue_facet().unwrap()).unwrap();
        assert!(r.steps.is_empty());
        assert_eq!(r.colored, cg);
    }

    #[test]
    fn reduction_of_permutahedron_facets() {
        let k4 = ZGraph::complete(4).unwrap();
        let s = |v: &[usize]| v.iter().copied().collect::<VertexSet>();
        let f1 = FacetPair::new(s(&[0]), s(&[1, 2, 3]));
        let f2 = FacetPair::new(s(&[0, 1]), s(&[2, 3]));
        let r = reduce_to_symmetric(&k4, f1, f2).unwrap();
        assert!(check_conjugate(&r.colored).conjugate);
        assert!(r.colored.base().dimension() <= 3);
        let before = belt_distance(&k4, f1, f2).unwrap().0;
        let after = belt_distance(r.colored.base(), r.first, r.second).unwrap().0;
        assert!(after >= before);
    }

    #[test]
    fn single_color_cycles_absent_in_conjugate_graphs() {
        for cg in enumerate_conjugate(6).unwrap() {
            assert_eq!(single_color_cycle(&cg), None);
            assert!(cg.base().is_bipartite());
        }
        // A triangle with one red edge has one.
        let cg = ColoredZGraph::new(3, &[(0, 1)], &[(1, 2), (0, 2)]).unwrap();
        assert_eq!(single_color_cycle(&cg), Some((0, 1, EdgeColor::Red)));
    }
}
