//! Small graph generators for tests and experiments.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rustc_hash::FxHashSet;

use crate::graph::{pair_key, Graph};

pub fn path(n: usize) -> Graph {
    let edges: Vec<_> = (1..n).map(|v| (v - 1, v, 1.0)).collect();
    Graph::from_edges(n, &edges).expect("path is well formed")
}

/// Cycle on `n >= 3` vertices.
pub fn cycle(n: usize) -> Graph {
    assert!(n >= 3, "a cycle needs three vertices");
    let edges: Vec<_> = (0..n).map(|v| (v, (v + 1) % n, 1.0)).collect();
    Graph::from_edges(n, &edges).expect("cycle is well formed")
}

/// `rows × cols` grid with unit weights, row-major ids.
pub fn grid(rows: usize, cols: usize) -> Graph {
    let id = |r: usize, c: usize| r * cols + c;
    let mut edges = Vec::new();
    for r in 0..rows {
        for c in 0..cols {
            if c + 1 < cols {
                edges.push((id(r, c), id(r, c + 1), 1.0));
            }
            if r + 1 < rows {
                edges.push((id(r, c), id(r + 1, c), 1.0));
            }
        }
    }
    Graph::from_edges(rows * cols, &edges).expect("grid is well formed")
}

/// Connected random graph: a random spanning tree plus uniformly chosen
/// extra edges, up to `m` edges in total. Weights are integers in
/// `1..=max_weight`.
pub fn random_sparse(n: usize, m: usize, max_weight: u32, seed: u64) -> Graph {
    assert!(n >= 1 && max_weight >= 1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let m = m.clamp(n - 1, n * (n - 1) / 2);
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(&mut rng);

    let mut seen = FxHashSet::default();
    let mut edges = Vec::with_capacity(m);
    let weight = |rng: &mut ChaCha8Rng| rng.random_range(1..=max_weight) as f64;
    for i in 1..n {
        let u = order[i];
        let v = order[rng.random_range(0..i)];
        seen.insert(pair_key(u, v));
        edges.push((u, v, weight(&mut rng)));
    }
    while edges.len() < m {
        let u = rng.random_range(0..n);
        let v = rng.random_range(0..n);
        if u != v && seen.insert(pair_key(u, v)) {
            edges.push((u, v, weight(&mut rng)));
        }
    }
    Graph::from_edges(n, &edges).expect("generator emits valid edges")
}
