//! Brute-force references that share no code path with the library's
//! Dijkstra or tree traversal.

#![allow(dead_code, clippy::needless_range_loop)]

use pasp_core::fixtures;
use pasp_core::{Graph, ShortestPathTree};

/// Bellman–Ford from every root.
pub fn bellman_ford_all(g: &Graph) -> Vec<Vec<f64>> {
    let n = g.n();
    let edges: Vec<_> = g.edges().collect();
    (0..n)
        .map(|s| {
            let mut d = vec![f64::INFINITY; n];
            d[s] = 0.0;
            for _ in 0..n {
                let mut changed = false;
                for &(u, v, w) in &edges {
                    if d[u] + w < d[v] {
                        d[v] = d[u] + w;
                        changed = true;
                    }
                    if d[v] + w < d[u] {
                        d[u] = d[v] + w;
                        changed = true;
                    }
                }
                if !changed {
                    break;
                }
            }
            d
        })
        .collect()
}

fn close(a: f64, b: f64) -> bool {
    (a - b).abs() <= 1e-9 * b.abs().max(1.0)
}

/// Every simple `u`–`v` path whose weight equals the shortest distance.
pub fn shortest_paths_between(g: &Graph, dist: &[Vec<f64>], u: usize, v: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut path = vec![u];
    let mut on_path = vec![false; g.n()];
    on_path[u] = true;
    extend(g, dist, v, 0.0, &mut path, &mut on_path, &mut out);
    out
}

fn extend(
    g: &Graph,
    dist: &[Vec<f64>],
    target: usize,
    len: f64,
    path: &mut Vec<usize>,
    on_path: &mut [bool],
    out: &mut Vec<Vec<usize>>,
) {
    let x = *path.last().unwrap();
    let start = path[0];
    if x == target {
        if close(len, dist[start][target]) {
            out.push(path.clone());
        }
        return;
    }
    for (y, w) in g.neighbors(x) {
        let bound = dist[start][target] + 1e-9 * dist[start][target].max(1.0);
        if on_path[y] || len + w + dist[y][target] > bound {
            continue;
        }
        on_path[y] = true;
        path.push(y);
        extend(g, dist, target, len + w, path, on_path, out);
        path.pop();
        on_path[y] = false;
    }
}

/// True iff `p` runs straight up or straight down the parent links of `t`.
pub fn is_vertical(t: &ShortestPathTree, p: &[usize]) -> bool {
    let down = p.windows(2).all(|w| t.parent[w[1]] as usize == w[0]);
    let up = p.windows(2).all(|w| t.parent[w[0]] as usize == w[1]);
    down || up
}

/// Tree counts by enumerating every shortest path of every pair and
/// checking whether one of them lies on a root path of each tree.
pub fn path_enumeration_counts(g: &Graph, trees: &[ShortestPathTree]) -> Vec<Vec<u32>> {
    let n = g.n();
    let dist = bellman_ford_all(g);
    let mut counts = vec![vec![0u32; n]; n];
    for u in 0..n {
        for v in u + 1..n {
            let paths = shortest_paths_between(g, &dist, u, v);
            let c = trees
                .iter()
                .filter(|t| paths.iter().any(|p| is_vertical(t, p)))
                .count() as u32;
            counts[u][v] = c;
            counts[v][u] = c;
        }
    }
    counts
}

/// Largest vertex count over all shortest paths of all pairs.
pub fn brute_vertex_diameter(g: &Graph) -> usize {
    let n = g.n();
    let dist = bellman_ford_all(g);
    let mut best = 1;
    for u in 0..n {
        for v in u + 1..n {
            for p in shortest_paths_between(g, &dist, u, v) {
                best = best.max(p.len());
            }
        }
    }
    best
}

/// Small fixture graphs: paths, cycles, grids and random sparse graphs.
pub fn small_corpus() -> Vec<Graph> {
    let mut out = vec![
        Graph::from_edges(1, &[]).unwrap(),
        fixtures::path(2),
        fixtures::path(3),
        fixtures::path(7),
        fixtures::cycle(3),
        fixtures::cycle(4),
        fixtures::cycle(7),
        fixtures::cycle(10),
        fixtures::grid(2, 3),
        fixtures::grid(3, 3),
        fixtures::grid(2, 5),
    ];
    for seed in 0..45u64 {
        let n = 3 + (seed as usize % 8);
        let m = n - 1 + (seed as usize * 7) % (n + 3);
        let max_w = [1, 2, 10][seed as usize % 3];
        out.push(fixtures::random_sparse(n, m, max_w, seed));
    }
    out
}

pub fn total_weight(g: &Graph, path: &[usize]) -> Option<f64> {
    path.windows(2).map(|w| g.weight(w[0], w[1])).sum()
}
