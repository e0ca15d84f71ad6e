//! Exhaustive campaigns over small connected graphs.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::canon::canonical;
use crate::dual::check_diameter_bound;
use crate::error::{Error, Result};
use crate::faces::{belt_of, enumerate_codim2, enumerate_facet_pairs, in_same_belt};
use crate::oracle::{oracle_facets, oracle_same_belt, partition_support, zone_matrix};
use crate::symmetric::{enumerate_conjugate, find_common_leaf, red_blue_distance};
use crate::vset::VertexSet;
use crate::zgraph::ZGraph;

/// Largest vertex count enumerated exhaustively.
pub const EXHAUSTIVE_MAX_N: usize = 8;

/// All connected graphs on `n` vertices up to isomorphism, each relabeled to
/// its canonical form, sorted by canonical code.
///
/// Every connected graph has a vertex whose removal leaves it connected, so
/// the graphs on `n` vertices are grown from those on `n - 1` by attaching a
/// new vertex to a nonempty neighbor set.
pub fn enumerate_connected_graphs(n: usize) -> Result<Vec<ZGraph>> {
    if n > EXHAUSTIVE_MAX_N {
        return Err(Error::UseSampledMode { max: EXHAUSTIVE_MAX_N });
    }
    if n == 0 {
        return Ok(Vec::new());
    }
    let mut level = vec![ZGraph::empty(1)?];
    for k in 2..=n {
        let found: BTreeMap<u128, ZGraph> = level
            .par_iter()
            .flat_map_iter(|g| {
                let g = g.clone();
                (1u64..1 << (k - 1)).map(move |nb| {
                    let mut edges = g.edges();
                    edges.extend(VertexSet::from_bits(nb).iter().map(|v| (v, k - 1)));
                    let h = ZGraph::from_edges(k, edges).expect("valid extension");
                    let c = canonical(&h);
                    (c.code, h.permute(&c.perm))
                })
            })
            .collect::<Vec<_>>()
            .into_iter()
            .collect();
        level = found.into_values().collect();
    }
    Ok(level)
}

/// Checks a sweep can run.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Check {
    /// Belt diameter at most 2 for `3 <= d <= 6`, at most 3 beyond, and at
    /// most `d - 1` always.
    BeltBound,
    /// Combinatorial diameter at most belt diameter + 1; at most 3 for
    /// `d <= 6` and 4 beyond.
    DualBound,
    /// Facets and same-belt relation agree with the exact-rank oracle.
    OracleEquiv,
    /// Over conjugate colored graphs: distance 2 iff a common leaf exists.
    LeavesIff,
    /// Belts have 4 or 6 members and 2 or 3 crossing directions.
    BeltSize,
}

impl Check {
    pub const ALL: [Check; 5] = [
        Check::BeltBound,
        Check::DualBound,
        Check::OracleEquiv,
        Check::LeavesIff,
        Check::BeltSize,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Check::BeltBound => "belt_bound",
            Check::DualBound => "dual_bound",
            Check::OracleEquiv => "oracle_equiv",
            Check::LeavesIff => "leaves_iff",
            Check::BeltSize => "belt_size",
        }
    }

    pub fn parse(s: &str) -> Option<Check> {
        Check::ALL.into_iter().find(|c| c.name() == s.trim())
    }
}

/// Per-dimension results of a sweep.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SweepRow {
    pub d: usize,
    pub instances: usize,
    pub max_belt_diameter: Option<usize>,
    pub max_dual_diameter: Option<usize>,
    /// Canonical edge list of the first graph attaining the maximum belt
    /// diameter.
    pub belt_witness: Option<Vec<(usize, usize)>>,
    pub dual_witness: Option<Vec<(usize, usize)>>,
    pub oracle_checked: usize,
    pub conjugate_graphs: usize,
    pub violations: Vec<String>,
    /// Dimensions below 3 are computed but not checked against the bounds.
    pub outside_scope: bool,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct SweepReport {
    pub checks: Vec<Check>,
    pub rows: Vec<SweepRow>,
    /// Wall-clock time; excluded from the deterministic exports.
    #[serde(skip)]
    pub runtime: Duration,
}

impl SweepReport {
    pub fn violation_count(&self) -> usize {
        self.rows.iter().map(|r| r.violations.len()).sum()
    }

    /// CSV with header `d,instances,max_belt_diameter,max_dual_diameter,violations`.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("d,instances,max_belt_diameter,max_dual_diameter,violations\n");
        let opt = |x: Option<usize>| x.map(|v| v.to_string()).unwrap_or_default();
        for r in &self.rows {
            let _ = writeln!(
                s,
                "{},{},{},{},{}",
                r.d,
                r.instances,
                opt(r.max_belt_diameter),
                opt(r.max_dual_diameter),
                r.violations.len()
            );
        }
        s
    }
}

/// Options of a sweep beyond the check list.
#[derive(Clone, Debug)]
pub struct SweepOptions {
    /// Random connected graphs per vertex count for `n` in
    /// `oracle_sample_sizes` (oracle check only).
    pub oracle_sample: usize,
    pub oracle_sample_sizes: Vec<usize>,
    /// Graphs up to this many vertices get the full oracle comparison.
    pub oracle_exhaustive_max_n: usize,
    /// Conjugate colored graphs are enumerated up to this many vertices.
    pub leaves_max_n: usize,
    pub seed: u64,
}

impl Default for SweepOptions {
    fn default() -> Self {
        SweepOptions {
            oracle_sample: 200,
            oracle_sample_sizes: vec![7, 8],
            oracle_exhaustive_max_n: 6,
            leaves_max_n: 7,
            seed: 0x5eed,
        }
    }
}

#[derive(Default)]
struct GraphOutcome {
    belt: Option<usize>,
    dual: Option<usize>,
    oracle: bool,
    violations: Vec<String>,
}

fn describe(g: &ZGraph) -> String {
    format!("{:?}", g.edges())
}

/// Upper bound on the belt diameter for dimension `d`.
pub fn belt_diameter_bound(d: usize) -> usize {
    if d <= 6 {
        2
    } else {
        3
    }
}

fn check_graph(g: &ZGraph, checks: &BTreeSet<Check>, oracle: bool) -> GraphOutcome {
    let mut out = GraphOutcome::default();
    let d = g.dimension();
    if checks.contains(&Check::BeltBound) || checks.contains(&Check::DualBound) {
        match check_diameter_bound(g) {
            Ok(r) => {
                out.belt = Some(r.belt_diameter);
                out.dual = Some(r.dual_diameter);
                if checks.contains(&Check::BeltBound) {
                    if r.belt_diameter > belt_diameter_bound(d) && d >= 3 {
                        out.violations
                            .push(format!("belt diameter {} > bound on {}", r.belt_diameter, describe(g)));
                    }
                    if r.belt_diameter + 1 > d.max(1) {
                        out.violations
                            .push(format!("belt diameter {} > d - 1 on {}", r.belt_diameter, describe(g)));
                    }
                }
                if checks.contains(&Check::DualBound) {
                    if !r.bound_holds && d >= 3 {
                        out.violations.push(format!(
                            "dual diameter {} > belt diameter {} + 1 on {}",
                            r.dual_diameter,
                            r.belt_diameter,
                            describe(g)
                        ));
                    }
                    if d >= 3 && r.dual_diameter > belt_diameter_bound(d) + 1 {
                        out.violations.push(format!(
                            "dual diameter {} above the dimension bound on {}",
                            r.dual_diameter,
                            describe(g)
                        ));
                    }
                }
            }
            Err(e) => out.violations.push(format!("{} on {}", e, describe(g))),
        }
    }
    if checks.contains(&Check::BeltSize) {
        match enumerate_codim2(g) {
            Ok(cores) => {
                for c in cores {
                    let b = belt_of(g, &c).expect("enumerated core is valid");
                    let ok = matches!((b.members.len(), b.directions), (4, 2) | (6, 3));
                    if !ok {
                        out.violations.push(format!(
                            "belt of {:?} has {} members and {} directions on {}",
                            c,
                            b.members.len(),
                            b.directions,
                            describe(g)
                        ));
                    }
                }
            }
            Err(e) => out.violations.push(format!("{} on {}", e, describe(g))),
        }
    }
    if oracle {
        out.oracle = true;
        if let Err(msg) = compare_with_oracle(g) {
            out.violations
                .push(format!("oracle mismatch: {} on {}", msg, describe(g)));
        }
    }
    out
}

/// Compares facet supports and the same-belt relation between the
/// partition calculus and the exact-rank oracle.
pub fn compare_with_oracle(g: &ZGraph) -> std::result::Result<(), String> {
    let m = zone_matrix(g);
    let pairs = enumerate_facet_pairs(g).map_err(|e| e.to_string())?;
    let predicted: Vec<_> = pairs.iter().map(|p| partition_support(&m, p.sides())).collect();
    let oracle: BTreeSet<_> = oracle_facets(g).map_err(|e| e.to_string())?.into_iter().collect();
    let predicted_set: BTreeSet<_> = predicted.iter().copied().collect();
    if predicted_set.len() != predicted.len() {
        return Err("two facet pairs share a support".into());
    }
    if predicted_set != oracle {
        return Err(format!(
            "{} partition facets vs {} oracle facets",
            predicted_set.len(),
            oracle.len()
        ));
    }
    for i in 0..pairs.len() {
        for j in i + 1..pairs.len() {
            let a = in_same_belt(g, pairs[i], pairs[j]).map_err(|e| e.to_string())?;
            let b = oracle_same_belt(g, predicted[i], predicted[j]).map_err(|e| e.to_string())?;
            if a != b {
                return Err(format!("same-belt disagreement for {:?} / {:?}", pairs[i], pairs[j]));
            }
        }
    }
    Ok(())
}

/// A uniformly random labeled graph on `n` vertices conditioned on being
/// connected, by rejection.
pub fn random_connected_graph<R: Rng>(n: usize, rng: &mut R) -> ZGraph {
    loop {
        let mut edges = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                if rng.gen_bool(0.5) {
                    edges.push((i, j));
                }
            }
        }
        let g = ZGraph::from_edges(n, edges).expect("valid edges");
        if g.is_connected() {
            return g;
        }
    }
}

/// Runs the selected checks over every connected graph on `3..=max_n`
/// vertices (dimension `d = n - 1`).
pub fn run_sweep(max_n: usize, checks: &[Check], opts: &SweepOptions) -> Result<SweepReport> {
    let start = Instant::now();
    let checks: BTreeSet<Check> = checks.iter().copied().collect();
    let mut rows = Vec::new();
    for n in 3..=max_n {
        let graphs = enumerate_connected_graphs(n)?;
        let oracle_all = checks.contains(&Check::OracleEquiv) && n <= opts.oracle_exhaustive_max_n;
        let outcomes: Vec<GraphOutcome> = graphs.par_iter().map(|g| check_graph(g, &checks, oracle_all)).collect();
        let mut row = SweepRow {
            d: n - 1,
            instances: graphs.len(),
            outside_scope: n < 4,
            ..SweepRow::default()
        };
        for (g, o) in graphs.iter().zip(&outcomes) {
            if o.belt.is_some() && o.belt > row.max_belt_diameter {
                row.max_belt_diameter = o.belt;
                row.belt_witness = Some(g.edges());
            }
            if o.dual.is_some() && o.dual > row.max_dual_diameter {
                row.max_dual_diameter = o.dual;
                row.dual_witness = Some(g.edges());
            }
            row.oracle_checked += o.oracle as usize;
            row.violations.extend(o.violations.iter().cloned());
        }
        if checks.contains(&Check::OracleEquiv) && opts.oracle_sample_sizes.contains(&n) {
            let mut rng = ChaCha8Rng::seed_from_u64(opts.seed ^ n as u64);
            let sample: Vec<ZGraph> = (0..opts.oracle_sample)
                .map(|_| random_connected_graph(n, &mut rng))
                .collect();
            let mism: Vec<String> = sample
                .par_iter()
                .filter_map(|g| {
                    compare_with_oracle(g)
                        .err()
                        .map(|m| format!("oracle mismatch: {} on {}", m, describe(g)))
                })
                .collect();
            row.oracle_checked += sample.len();
            row.violations.extend(mism);
        }
        if checks.contains(&Check::LeavesIff) && (4..=opts.leaves_max_n).contains(&n) {
            let conj = enumerate_conjugate(n)?;
            row.conjugate_graphs = conj.len();
            let bad: Vec<String> = conj
                .par_iter()
                .filter_map(|cg| {
                    let dist = match red_blue_distance(cg) {
                        Ok(x) => x,
                        Err(e) => return Some(e.to_string()),
                    };
                    let leaf = find_common_leaf(cg).ok().flatten();
                    ((dist == 2) != leaf.is_some())
                        .then(|| format!("distance {} with common leaf {:?} on {:?}", dist, leaf, cg))
                })
                .collect();
            row.violations.extend(bad);
        }
        rows.push(row);
    }
    Ok(SweepReport {
        checks: checks.into_iter().collect(),
        rows,
        runtime: start.elapsed(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_connected_graph_counts() {
        let counts: Vec<usize> = (1..=6).map(|n| enumerate_connected_graphs(n).unwrap().len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 6, 21, 112]);
        assert!(enumerate_connected_graphs(9).is_err());
    }

    #[test]
    fn enumeration_is_canonical_and_connected() {
        for g in enumerate_connected_graphs(5).unwrap() {
            assert!(g.is_connected());
            let c = canonical(&g);
            assert_eq!(g.permute(&c.perm), g);
        }
    }

    #[test]
    fn csv_header_and_rows() {
        let r = run_sweep(4, &[Check::BeltBound], &SweepOptions::default()).unwrap();
        let csv = r.to_csv();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "d,instances,max_belt_diameter,max_dual_diameter,violations");
        assert_eq!(lines[1], "2,2,1,3,0");
        assert_eq!(lines[2], "3,6,2,3,0");
    }

    #[test]
    fn check_names_round_trip() {
        for c in Check::ALL {
            assert_eq!(Check::parse(c.name()), Some(c));
        }
        assert_eq!(Check::parse("nope"), None);
    }
}
