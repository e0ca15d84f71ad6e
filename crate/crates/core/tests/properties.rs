use std::collections::BTreeSet;

use proptest::prelude::*;

use pizono::dual::build_dual;
use pizono::faces::{enumerate_facet_pairs, enumerate_facets, in_same_belt};
use pizono::oracle::{exact_rank, oracle_dual_edges, zone_matrix};
use pizono::sweep::enumerate_connected_graphs;
use pizono::symmetric::{check_conjugate, d8_facets, reduce_to_symmetric, search_d8_nonsymmetric, Budget};
use pizono::venkov::{belt_diameter, belt_distance, build_venkov};
use pizono::zgraph::contraction_image_set;
use pizono::{FacetPair, VertexSet, ZGraph};

fn graphs_up_to(n: usize) -> Vec<ZGraph> {
    (3..=n).flat_map(|k| enumerate_connected_graphs(k).unwrap()).collect()
}

fn all_distances(g: &ZGraph) -> (Vec<FacetPair>, Vec<Vec<usize>>) {
    let v = build_venkov(g).unwrap();
    let dist = (0..v.nodes.len()).map(|i| v.distances_from(i)).collect();
    (v.nodes, dist)
}

fn internal(f: FacetPair, (i, j): (usize, usize)) -> bool {
    f.sides().iter().any(|s| s.contains(i) && s.contains(j))
}

#[test]
fn complete_graph_facet_counts() {
    for n in 2..=10 {
        let g = ZGraph::complete(n).unwrap();
        assert_eq!(enumerate_facets(&g).unwrap().len(), (1 << n) - 2);
    }
}

#[test]
fn belt_distance_is_a_metric() {
    for g in graphs_up_to(5) {
        let (nodes, dist) = all_distances(&g);
        for a in 0..nodes.len() {
            assert_eq!(dist[a][a], 0);
            for b in 0..nodes.len() {
                assert_eq!(dist[a][b], dist[b][a]);
                assert_eq!(dist[a][b] == 0, a == b);
                for c in 0..nodes.len() {
                    assert!(dist[a][c] <= dist[a][b] + dist[b][c]);
                }
            }
        }
    }
}

#[test]
fn lazy_distance_matches_venkov_graph() {
    for g in graphs_up_to(5) {
        let (nodes, dist) = all_distances(&g);
        for a in 0..nodes.len() {
            for b in 0..nodes.len() {
                let (d, path) = belt_distance(&g, nodes[a], nodes[b]).unwrap();
                assert_eq!(d, dist[a][b]);
                assert!(path.is_valid(&g));
            }
        }
    }
}

#[test]
fn projection_does_not_decrease_distance() {
    for g in graphs_up_to(6) {
        let (nodes, dist) = all_distances(&g);
        let mut cache = std::collections::HashMap::new();
        for a in 0..nodes.len() {
            for b in a + 1..nodes.len() {
                for e in g.edges() {
                    if !(internal(nodes[a], e) && internal(nodes[b], e)) {
                        continue;
                    }
                    let (h_nodes, h_dist) = cache
                        .entry(e)
                        .or_insert_with(|| all_distances(&g.contract(e.0, e.1).unwrap()));
                    let image = |f: FacetPair| {
                        let [x, y] = f.sides();
                        FacetPair::new(contraction_image_set(e.0, e.1, x), contraction_image_set(e.0, e.1, y))
                    };
                    let ia = h_nodes.iter().position(|&p| p == image(nodes[a])).unwrap();
                    let ib = h_nodes.iter().position(|&p| p == image(nodes[b])).unwrap();
                    assert!(h_dist[ia][ib] >= dist[a][b], "{:?} contract {:?}", g, e);
                }
            }
        }
    }
}

#[test]
fn deletion_does_not_decrease_distance() {
    for g in graphs_up_to(6) {
        let (nodes, dist) = all_distances(&g);
        for e in g.edges() {
            let h = g.delete_edge(e.0, e.1).unwrap();
            if !h.is_connected() {
                continue;
            }
            let (h_nodes, h_dist) = all_distances(&h);
            for a in 0..nodes.len() {
                if !internal(nodes[a], e) || nodes[a].check(&h).is_err() {
                    continue;
                }
                let ia = h_nodes.iter().position(|&p| p == nodes[a]).unwrap();
                for b in 0..nodes.len() {
                    if let Some(ib) = h_nodes.iter().position(|&p| p == nodes[b]) {
                        assert!(h_dist[ia][ib] >= dist[a][b], "{:?} delete {:?}", g, e);
                    }
                }
            }
        }
    }
}

#[test]
fn dual_graph_matches_covector_oracle() {
    for g in graphs_up_to(6) {
        let dual = build_dual(&g).unwrap();
        let mut ours = BTreeSet::new();
        for (i, nbrs) in dual.adjacency.iter().enumerate() {
            for &j in nbrs {
                let (a, b) = (dual.nodes[i], dual.nodes[j]);
                ours.insert((a.min(b), a.max(b)));
            }
        }
        assert_eq!(ours, oracle_dual_edges(&g).unwrap(), "{:?}", g);
    }
}

#[test]
fn reduction_of_permutahedron_pair() {
    let k4 = ZGraph::complete(4).unwrap();
    let s = |v: &[usize]| v.iter().copied().collect::<VertexSet>();
    let (f1, f2) = (
        FacetPair::new(s(&[0]), s(&[1, 2, 3])),
        FacetPair::new(s(&[0, 1]), s(&[2, 3])),
    );
    let r = reduce_to_symmetric(&k4, f1, f2).unwrap();
    assert!(r.colored.base().dimension() <= 3);
    let after = belt_distance(r.colored.base(), r.first, r.second).unwrap().0;
    assert!(after >= belt_distance(&k4, f1, f2).unwrap().0);
}

#[test]
fn reduction_of_d8_witness_keeps_distance() {
    let w = search_d8_nonsymmetric(Budget::default(), 1).unwrap();
    let w = w.witness().expect("witness");
    let (f1, f2) = d8_facets();
    let r = reduce_to_symmetric(&w.graph, f1, f2).unwrap();
    assert!(check_conjugate(&r.colored).conjugate);
    assert!(r.colored.base().dimension() <= 8);
    assert!(belt_distance(r.colored.base(), r.first, r.second).unwrap().0 >= 3);
}

fn arb_graph(max_n: usize) -> impl Strategy<Value = ZGraph> {
    (2..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
            let pairs = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j)));
            let edges: Vec<_> = pairs.zip(bits).filter(|(_, b)| *b).map(|(e, _)| e).collect();
            ZGraph::from_edges(n, edges).unwrap()
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn dimension_is_rank(g in arb_graph(12)) {
        prop_assert_eq!(g.dimension(), exact_rank(&zone_matrix(&g)));
    }

    #[test]
    fn same_belt_is_symmetric(g in arb_graph(7)) {
        prop_assume!(g.is_connected() && g.n() >= 3);
        let pairs = enumerate_facet_pairs(&g).unwrap();
        for a in &pairs {
            for b in &pairs {
                if a != b {
                    prop_assert_eq!(in_same_belt(&g, *a, *b).unwrap(), in_same_belt(&g, *b, *a).unwrap());
                }
            }
        }
    }

    #[test]
    fn generic_path_bound(g in arb_graph(8)) {
        prop_assume!(g.is_connected() && g.n() >= 3);
        prop_assert!(belt_diameter(&g).unwrap() < g.dimension().max(2));
    }

    #[test]
    fn reduction_is_conjugate_and_monotone(g in arb_graph(7), i in any::<prop::sample::Index>(), j in any::<prop::sample::Index>()) {
        prop_assume!(g.is_connected() && g.n() >= 3);
        let pairs = enumerate_facet_pairs(&g).unwrap();
        let (a, b) = (pairs[i.index(pairs.len())], pairs[j.index(pairs.len())]);
        prop_assume!(a != b);
        let r = reduce_to_symmetric(&g, a, b).unwrap();
        prop_assert!(check_conjugate(&r.colored).conjugate);
        prop_assert!(r.colored.base().dimension() <= g.dimension());
        let before = belt_distance(&g, a, b).unwrap().0;
        let after = belt_distance(r.colored.base(), r.first, r.second).unwrap().0;
        prop_assert!(after >= before);
    }
}
