#![allow(clippy::needless_range_loop)]

mod common;

use pasp_core::accumulate::{for_each_tree_pair, PairAccumulator};
use pasp_core::bounds::{self, DiamMode};
use pasp_core::engine::accumulate_roots;
use pasp_core::rademacher::eta_bound;
use pasp_core::{
    dijkstra_canonical, exact_centrality, fixtures, max_hop_levels, parse_edge_list, Graph,
};
use proptest::prelude::*;

fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (2..=max_n, any::<u64>(), 0usize..3, 1u32..=10).prop_map(|(n, seed, density, max_w)| {
        let m = (n - 1) + density * n / 2;
        fixtures::random_sparse(n, m, max_w, seed)
    })
}

#[test]
fn dijkstra_matches_bellman_ford() {
    for seed in 0..100u64 {
        let n = 2 + (seed as usize * 13) % 39;
        let g = fixtures::random_sparse(n, n + (seed as usize % 3) * n, 10, seed);
        let reference = common::bellman_ford_all(&g);
        for root in 0..n {
            let t = dijkstra_canonical(&g, root).unwrap();
            assert_eq!(t.dist, reference[root], "seed {seed}, root {root}");
        }
    }
}

#[test]
fn exact_centrality_matches_path_enumeration() {
    for g in common::small_corpus().into_iter().filter(|g| g.n() <= 10) {
        let trees: Vec<_> = (0..g.n())
            .map(|r| dijkstra_canonical(&g, r).unwrap())
            .collect();
        let brute = common::path_enumeration_counts(&g, &trees);
        let exact = exact_centrality(&g).unwrap();
        for (u, v) in exact.pairs() {
            assert_eq!(
                exact.count(u, v),
                brute[u][v],
                "pair ({u}, {v}) of {:?}",
                g.to_edge_list()
            );
        }
    }
}

#[test]
fn exact_diameter_matches_brute_force() {
    for g in common::small_corpus().into_iter().filter(|g| g.n() <= 12) {
        assert_eq!(
            bounds::vertex_diameter_bound(&g, DiamMode::Exact).unwrap(),
            common::brute_vertex_diameter(&g),
            "{}",
            g.to_edge_list()
        );
    }
}

#[test]
fn full_sample_reproduces_exact_counts() {
    for g in common::small_corpus() {
        let roots: Vec<usize> = (0..g.n()).collect();
        let mut acc = PairAccumulator::new();
        accumulate_roots(&g, &roots, &mut acc).unwrap();
        let exact = exact_centrality(&g).unwrap();
        for (u, v) in exact.pairs() {
            let t = acc.table.get(u, v).map_or(0, |e| e.count);
            assert_eq!(t, exact.count(u, v));
        }
        // Σ t over pairs equals Σ over trees of ancestor/descendant pairs
        let per_tree: u64 = (0..g.n())
            .map(|r| {
                let mut k = 0u64;
                for_each_tree_pair(&dijkstra_canonical(&g, r).unwrap(), |_, _| k += 1);
                k
            })
            .sum();
        let total: u64 = exact.pairs().map(|(u, v)| exact.count(u, v) as u64).sum();
        assert_eq!(per_tree, total);
    }
}

#[test]
fn vc_bound_is_monotone() {
    for n in 1..200 {
        for d in 1..=n.min(40) {
            let k = bounds::vc_dimension_bound(n, d);
            assert!(bounds::vc_dimension_bound(n + 1, d) >= k);
            if d < n {
                assert!(bounds::vc_dimension_bound(n, d + 1) >= k);
            }
        }
    }
}

#[test]
fn eta_decreases_with_sample_size() {
    for &w in &[0.0, 0.01, 0.3] {
        for &d in &[0.9, 0.05, 1e-4] {
            let mut prev = f64::INFINITY;
            for r in 1..2000 {
                let e = eta_bound(w, r, d);
                assert!(e < prev);
                prev = e;
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn edge_list_round_trip(g in arb_graph(30)) {
        let text = g.to_edge_list();
        let back = parse_edge_list(&text).unwrap();
        prop_assert_eq!(&back, &g);
        prop_assert_eq!(parse_edge_list(&back.to_edge_list()).unwrap(), back);
    }

    #[test]
    fn adjacency_matches_lines(g in arb_graph(20)) {
        let text = g.to_edge_list();
        let parsed = parse_edge_list(&text).unwrap();
        for u in 0..parsed.n() {
            let mut from_lines: Vec<(usize, f64)> = text
                .lines()
                .skip(1)
                .filter_map(|l| {
                    let f: Vec<&str> = l.split(' ').collect();
                    let (a, b): (usize, usize) = (f[0].parse().unwrap(), f[1].parse().unwrap());
                    let w: f64 = f[2].parse().unwrap();
                    (a == u).then_some((b, w)).or((b == u).then_some((a, w)))
                })
                .collect();
            from_lines.sort_by_key(|x| x.0);
            prop_assert_eq!(parsed.neighbors(u).collect::<Vec<_>>(), from_lines);
        }
    }

    #[test]
    fn canonical_trees_are_deterministic_and_consistent(g in arb_graph(40), root_pick in any::<usize>()) {
        let root = root_pick % g.n();
        let a = dijkstra_canonical(&g, root).unwrap();
        let b = dijkstra_canonical(&g, root).unwrap();
        prop_assert_eq!(&a.parent, &b.parent);
        let h = max_hop_levels(&g, root).unwrap();
        for v in 0..g.n() {
            prop_assert!(h[v] >= a.hop[v]);
            if let Some(p) = a.parent_of(v) {
                prop_assert_eq!(a.dist[v], a.dist[p] + g.weight(p, v).unwrap());
                prop_assert_eq!(a.hop[v], a.hop[p] + 1);
            } else {
                prop_assert_eq!(v, root);
            }
        }
    }

    #[test]
    fn accumulation_invariants(g in arb_graph(25), roots in proptest::collection::vec(any::<usize>(), 1..12)) {
        let roots: Vec<usize> = roots.into_iter().map(|r| r % g.n()).collect();
        let dist = common::bellman_ford_all(&g);
        let mut acc = PairAccumulator::new();
        accumulate_roots(&g, &roots, &mut acc).unwrap();

        let mut mass = 0u64;
        for ((u, v), e) in acc.table.iter() {
            prop_assert_eq!(e.dist, dist[u][v]);
            prop_assert!(e.count as usize <= roots.len());
            mass += e.count as u64;
            let path = acc.path(u, v).unwrap();
            prop_assert_eq!((path[0], *path.last().unwrap()), (u, v));
            prop_assert_eq!(common::total_weight(&g, &path), Some(e.dist));
            let back = acc.path(v, u).unwrap();
            prop_assert_eq!(back.first(), Some(&v));
        }
        let weighted: u64 = acc.hist.distinct().iter()
            .map(|&t| t as u64 * acc.hist.count(t))
            .sum();
        prop_assert_eq!(weighted, mass);
        prop_assert_eq!(acc.hist.total_pairs(), acc.table.len() as u64);
        prop_assert!(acc.hist.distinct().iter().all(|&t| acc.hist.count(t) > 0));
        prop_assert!(acc.hist.distinct().iter().all(|&t| t as usize <= roots.len()));

        // the same trees twice double every count
        let mut twice = acc.clone();
        accumulate_roots(&g, &roots, &mut twice).unwrap();
        for ((u, v), e) in acc.table.iter() {
            let d = twice.table.get(u, v).unwrap();
            prop_assert_eq!(d.count, 2 * e.count);
            prop_assert_eq!(d.dist, e.dist);
        }
        prop_assert_eq!(twice.table.len(), acc.table.len());
    }

    #[test]
    fn initial_size_certifies_its_quadratic(e in 0.01f64..0.99, d in 0.001f64..0.99) {
        let s = bounds::initial_sample_size(e, d) as f64;
        let l = (6.0 / d).ln();
        let quad = |s: f64| 2.0 * s * s * e * e - s * l - 8.0 * l * l;
        prop_assert!(quad(s) >= 0.0);
        prop_assert!(quad(s - 1.0) < 0.0);
    }
}
