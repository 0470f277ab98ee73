//! Canonical Dijkstra trees.
//!
//! The heap pops the smallest tentative distance, equal distances by
//! smaller vertex id, and a parent changes only on a strictly shorter
//! tentative distance. Together with the ascending-id vertex order this
//! makes the tree for each root unique.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Parent value of the root.
pub const NO_PARENT: u32 = u32::MAX;

#[derive(Debug, Clone, Copy, PartialEq)]
struct Entry {
    dist: f64,
    vertex: u32,
}

impl Eq for Entry {}

impl Ord for Entry {
    // reversed: BinaryHeap is a max-heap
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .dist
            .total_cmp(&self.dist)
            .then_with(|| other.vertex.cmp(&self.vertex))
    }
}

impl PartialOrd for Entry {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// The canonical shortest-path tree of one root.
#[derive(Debug, Clone, PartialEq)]
pub struct ShortestPathTree {
    pub root: usize,
    /// `NO_PARENT` for the root.
    pub parent: Vec<u32>,
    pub dist: Vec<f64>,
    /// Edges on the tree path from the root.
    pub hop: Vec<u32>,
    /// Vertices in the order Dijkstra settled them.
    pub settled: Vec<u32>,
    child_offsets: Vec<u32>,
    child_list: Vec<u32>,
}

impl ShortestPathTree {
    pub fn n(&self) -> usize {
        self.parent.len()
    }

    /// Children of `v`, ascending by id.
    pub fn children(&self, v: usize) -> &[u32] {
        &self.child_list[self.child_offsets[v] as usize..self.child_offsets[v + 1] as usize]
    }

    pub fn parent_of(&self, v: usize) -> Option<usize> {
        match self.parent[v] {
            NO_PARENT => None,
            p => Some(p as usize),
        }
    }

    fn link_children(&mut self) {
        let n = self.n();
        let mut offsets = vec![0u32; n + 1];
        for &p in &self.parent {
            if p != NO_PARENT {
                offsets[p as usize + 1] += 1;
            }
        }
        for i in 0..n {
            offsets[i + 1] += offsets[i];
        }
        let mut cursor = offsets.clone();
        let mut list = vec![0u32; n.saturating_sub(1)];
        // ascending v keeps each child list sorted
        for (v, &p) in self.parent.iter().enumerate() {
            if p != NO_PARENT {
                list[cursor[p as usize] as usize] = v as u32;
                cursor[p as usize] += 1;
            }
        }
        self.child_offsets = offsets;
        self.child_list = list;
    }
}

/// Runs canonical Dijkstra from `root`. The graph must be connected.
pub fn dijkstra_canonical(g: &Graph, root: usize) -> Result<ShortestPathTree> {
    let n = g.n();
    if root >= n {
        return Err(Error::RootOutOfRange { root, n });
    }
    let mut dist = vec![f64::INFINITY; n];
    let mut parent = vec![NO_PARENT; n];
    let mut hop = vec![0u32; n];
    let mut done = vec![false; n];
    let mut settled = Vec::with_capacity(n);
    let mut heap = BinaryHeap::with_capacity(n);

    dist[root] = 0.0;
    heap.push(Entry {
        dist: 0.0,
        vertex: root as u32,
    });
    while let Some(Entry { dist: d, vertex }) = heap.pop() {
        let u = vertex as usize;
        if done[u] {
            continue;
        }
        done[u] = true;
        settled.push(vertex);
        for (v, w) in g.neighbors(u) {
            if done[v] {
                continue;
            }
            let candidate = d + w;
            if candidate < dist[v] {
                dist[v] = candidate;
                parent[v] = vertex;
                hop[v] = hop[u] + 1;
                heap.push(Entry {
                    dist: candidate,
                    vertex: v as u32,
                });
            }
        }
    }
    if settled.len() != n {
        let unreached = (0..n).find(|&v| !done[v]).unwrap();
        return Err(Error::Disconnected { unreached });
    }

    let mut tree = ShortestPathTree {
        root,
        parent,
        dist,
        hop,
        settled,
        child_offsets: Vec::new(),
        child_list: Vec::new(),
    };
    tree.link_children();
    Ok(tree)
}

/// Relative tie tolerance used when deciding whether an edge lies on some
/// shortest path.
pub fn tie_tolerance(dist: f64) -> f64 {
    1e-9 * dist.max(1.0)
}

/// For every vertex, the largest edge count over all shortest paths from
/// `root`.
///
/// Zero-weight edges between vertices at equal distance are only followed
/// in settling order, so on graphs with zero-weight edges the result can
/// undercount.
pub fn max_hop_levels(g: &Graph, root: usize) -> Result<Vec<u32>> {
    let tree = dijkstra_canonical(g, root)?;
    Ok(max_hops_from_tree(g, &tree))
}

pub(crate) fn max_hops_from_tree(g: &Graph, tree: &ShortestPathTree) -> Vec<u32> {
    let n = g.n();
    let mut rank = vec![0u32; n];
    for (i, &v) in tree.settled.iter().enumerate() {
        rank[v as usize] = i as u32;
    }
    let mut h = vec![0u32; n];
    for &v in &tree.settled {
        let v = v as usize;
        let dv = tree.dist[v];
        let tol = tie_tolerance(dv);
        let mut best = 0u32;
        for (u, w) in g.neighbors(v) {
            if rank[u] < rank[v] && (tree.dist[u] + w - dv).abs() <= tol {
                best = best.max(h[u] + 1);
            }
        }
        h[v] = best;
    }
    h
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::parse_edge_list;

    fn unit(edges: &[(usize, usize)]) -> Graph {
        let n = edges.iter().map(|&(u, v)| u.max(v) + 1).max().unwrap();
        let e: Vec<_> = edges.iter().map(|&(u, v)| (u, v, 1.0)).collect();
        Graph::from_edges(n, &e).unwrap()
    }

    #[test]
    fn path_tree() {
        let t = dijkstra_canonical(&unit(&[(0, 1), (1, 2)]), 0).unwrap();
        assert_eq!(t.parent, vec![NO_PARENT, 0, 1]);
        assert_eq!(t.dist, vec![0.0, 1.0, 2.0]);
        assert_eq!(t.hop, vec![0, 1, 2]);
        assert_eq!(t.children(0), &[1]);
        assert_eq!(t.children(2), &[] as &[u32]);
    }

    #[test]
    fn triangle_tree() {
        let t = dijkstra_canonical(&unit(&[(0, 1), (1, 2), (0, 2)]), 0).unwrap();
        assert_eq!(t.parent[1], 0);
        assert_eq!(t.parent[2], 0);
        assert_eq!(t.dist, vec![0.0, 1.0, 1.0]);
    }

    #[test]
    fn square_tie_break_prefers_lower_id() {
        let t = dijkstra_canonical(&unit(&[(0, 1), (1, 2), (2, 3), (3, 0)]), 0).unwrap();
        assert_eq!(t.dist[2], 2.0);
        assert_eq!(t.parent[2], 1);
        assert_eq!(t.settled, vec![0, 1, 3, 2]);
    }

    #[test]
    fn root_errors() {
        let g = unit(&[(0, 1)]);
        assert!(matches!(
            dijkstra_canonical(&g, 2),
            Err(Error::RootOutOfRange { root: 2, n: 2 })
        ));
        let g = parse_edge_list("0 1 1\n2 3 1").unwrap();
        assert!(matches!(
            dijkstra_canonical(&g, 0),
            Err(Error::Disconnected { unreached: 2 })
        ));
    }

    #[test]
    fn max_hops() {
        assert_eq!(
            max_hop_levels(&unit(&[(0, 1), (1, 2)]), 0).unwrap(),
            vec![0, 1, 2]
        );
        let sq = unit(&[(0, 1), (1, 2), (2, 3), (3, 0)]);
        assert_eq!(max_hop_levels(&sq, 0).unwrap()[2], 2);
        let g = Graph::from_edges(3, &[(0, 1, 2.0), (0, 2, 1.0), (2, 1, 1.0)]).unwrap();
        let h = max_hop_levels(&g, 0).unwrap();
        assert_eq!(h[1], 2);
        assert_eq!(dijkstra_canonical(&g, 0).unwrap().hop[1], 1);
    }

    #[test]
    fn single_vertex() {
        let g = Graph::from_edges(1, &[]).unwrap();
        let t = dijkstra_canonical(&g, 0).unwrap();
        assert_eq!(t.parent, vec![NO_PARENT]);
        assert!(t.children(0).is_empty());
    }
}
