//! Undirected, non-negatively weighted graphs and the edge-list text format.
//!
//! Vertex ids are dense `0..n`; ascending id order is the fixed vertex
//! ordering that makes Dijkstra trees canonical.
//!
//! Text format, one edge per line:
//!
//! ```text
//! # comment
//! p 4 3        (optional header: vertex and edge counts)
//! 0 1 1.0
//! 1 2 2.5
//! ```

use std::collections::VecDeque;
use std::fmt::Write as _;

use rustc_hash::FxHashSet;

use crate::error::GraphError;

/// Immutable undirected graph in compressed adjacency form.
///
/// Each neighbour list is sorted by neighbour id.
#[derive(Debug, Clone, PartialEq)]
pub struct Graph {
    offsets: Vec<usize>,
    targets: Vec<u32>,
    weights: Vec<f64>,
    m: usize,
}

impl Graph {
    /// Builds a graph on `n` vertices from undirected `(u, v, w)` triples.
    pub fn from_edges(n: usize, edges: &[(usize, usize, f64)]) -> Result<Self, GraphError> {
        let lined: Vec<_> = edges
            .iter()
            .enumerate()
            .map(|(i, &(u, v, w))| (i + 1, u, v, w))
            .collect();
        Self::build(n, &lined)
    }

    fn build(n: usize, edges: &[(usize, usize, usize, f64)]) -> Result<Self, GraphError> {
        if n == 0 {
            return Err(GraphError::Empty);
        }
        assert!(n <= u32::MAX as usize, "vertex count exceeds u32 range");
        let mut seen = FxHashSet::default();
        let mut degree = vec![0usize; n];
        for &(line, u, v, w) in edges {
            for x in [u, v] {
                if x >= n {
                    return Err(GraphError::VertexOutOfRange { line, vertex: x, n });
                }
            }
            if !w.is_finite() {
                return Err(GraphError::Malformed {
                    line,
                    reason: format!("weight {w} is not finite"),
                });
            }
            if w < 0.0 {
                return Err(GraphError::NegativeWeight { line, weight: w });
            }
            if u == v {
                return Err(GraphError::SelfLoop { line, vertex: u });
            }
            if !seen.insert(pair_key(u, v)) {
                return Err(GraphError::DuplicateEdge { line, u, v });
            }
            degree[u] += 1;
            degree[v] += 1;
        }

        let mut offsets = Vec::with_capacity(n + 1);
        offsets.push(0);
        for d in &degree {
            offsets.push(offsets.last().unwrap() + d);
        }
        let mut cursor = offsets[..n].to_vec();
        let mut slots = vec![(0u32, 0.0f64); 2 * edges.len()];
        for &(_, u, v, w) in edges {
            // -0.0 is accepted as a weight; store it as +0.0
            let w = w + 0.0;
            slots[cursor[u]] = (v as u32, w);
            cursor[u] += 1;
            slots[cursor[v]] = (u as u32, w);
            cursor[v] += 1;
        }
        for u in 0..n {
            slots[offsets[u]..offsets[u + 1]].sort_unstable_by_key(|&(t, _)| t);
        }
        let (targets, weights) = slots.into_iter().unzip();
        Ok(Graph {
            offsets,
            targets,
            weights,
            m: edges.len(),
        })
    }

    pub fn n(&self) -> usize {
        self.offsets.len() - 1
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn degree(&self, u: usize) -> usize {
        self.offsets[u + 1] - self.offsets[u]
    }

    /// Neighbours of `u` with edge weights, in ascending neighbour id.
    pub fn neighbors(&self, u: usize) -> impl Iterator<Item = (usize, f64)> + '_ {
        let range = self.offsets[u]..self.offsets[u + 1];
        self.targets[range.clone()]
            .iter()
            .zip(&self.weights[range])
            .map(|(&v, &w)| (v as usize, w))
    }

    /// Weight of edge `{u, v}`, if present.
    pub fn weight(&self, u: usize, v: usize) -> Option<f64> {
        if u >= self.n() || v >= self.n() {
            return None;
        }
        let range = self.offsets[u]..self.offsets[u + 1];
        let slice = &self.targets[range.clone()];
        slice
            .binary_search(&(v as u32))
            .ok()
            .map(|i| self.weights[range.start + i])
    }

    /// Every edge once, as `(u, v, w)` with `u < v`, sorted.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, f64)> + '_ {
        (0..self.n()).flat_map(move |u| {
            self.neighbors(u)
                .filter(move |&(v, _)| u < v)
                .map(move |(v, w)| (u, v, w))
        })
    }

    pub fn has_zero_weight_edge(&self) -> bool {
        self.weights.contains(&0.0)
    }

    pub fn is_integer_weighted(&self) -> bool {
        self.weights.iter().all(|w| w.fract() == 0.0)
    }

    /// First vertex not reachable from vertex 0, if any.
    pub fn first_unreached(&self) -> Option<usize> {
        let n = self.n();
        let mut seen = vec![false; n];
        let mut queue = VecDeque::from([0usize]);
        seen[0] = true;
        while let Some(u) = queue.pop_front() {
            for (v, _) in self.neighbors(u) {
                if !seen[v] {
                    seen[v] = true;
                    queue.push_back(v);
                }
            }
        }
        seen.iter().position(|&s| !s)
    }

    /// Serializes to the edge-list format with a `p n m` header.
    pub fn to_edge_list(&self) -> String {
        let mut out = String::new();
        writeln!(out, "p {} {}", self.n(), self.m()).unwrap();
        for (u, v, w) in self.edges() {
            writeln!(out, "{u} {v} {w}").unwrap();
        }
        out
    }
}

/// True iff a traversal from vertex 0 reaches every vertex.
pub fn validate_connected(g: &Graph) -> bool {
    g.first_unreached().is_none()
}

/// Parses the edge-list text format.
///
/// Without a `p n m` header, `n` is the largest id plus one and every id in
/// `0..n` has to occur in some edge.
pub fn parse_edge_list(text: &str) -> Result<Graph, GraphError> {
    let mut header: Option<(usize, usize)> = None;
    let mut edges = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = trimmed.split_whitespace().collect();
        if fields[0] == "p" {
            if header.is_some() || !edges.is_empty() {
                return Err(malformed(
                    line,
                    "header must precede all edges and appear once",
                ));
            }
            if fields.len() != 3 {
                return Err(malformed(line, "expected 'p n m'"));
            }
            let n = parse_id(fields[1], line)?;
            let m = parse_id(fields[2], line)?;
            header = Some((n, m));
            continue;
        }
        if fields.len() != 3 {
            return Err(malformed(
                line,
                &format!("expected 'u v w', found {} fields", fields.len()),
            ));
        }
        let u = parse_id(fields[0], line)?;
        let v = parse_id(fields[1], line)?;
        let w: f64 = fields[2]
            .parse()
            .map_err(|_| malformed(line, &format!("bad weight '{}'", fields[2])))?;
        edges.push((line, u, v, w));
    }

    match header {
        Some((n, m)) => {
            let g = Graph::build(n, &edges)?;
            if m != edges.len() {
                return Err(GraphError::EdgeCountMismatch {
                    declared: m,
                    found: edges.len(),
                });
            }
            Ok(g)
        }
        None => {
            let n = edges
                .iter()
                .map(|&(_, u, v, _)| u.max(v) + 1)
                .max()
                .ok_or(GraphError::Empty)?;
            let g = Graph::build(n, &edges)?;
            if let Some(vertex) = (0..n).find(|&u| g.degree(u) == 0) {
                return Err(GraphError::IdGap { vertex });
            }
            Ok(g)
        }
    }
}

fn parse_id(field: &str, line: usize) -> Result<usize, GraphError> {
    field
        .parse()
        .map_err(|_| malformed(line, &format!("bad vertex id '{field}'")))
}

fn malformed(line: usize, reason: &str) -> GraphError {
    GraphError::Malformed {
        line,
        reason: reason.to_string(),
    }
}

/// Key of the unordered pair `{u, v}`: smaller id in the high half.
pub fn pair_key(u: usize, v: usize) -> u64 {
    let (a, b) = if u < v { (u, v) } else { (v, u) };
    ((a as u64) << 32) | b as u64
}

/// Inverse of [`pair_key`], returning `(u, v)` with `u < v`.
pub fn unpack_pair(key: u64) -> (usize, usize) {
    ((key >> 32) as usize, (key & 0xffff_ffff) as usize)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_path() {
        let g = parse_edge_list("0 1 1.0\n1 2 1.0").unwrap();
        assert_eq!((g.n(), g.m()), (3, 2));
        assert_eq!(g.neighbors(1).collect::<Vec<_>>(), vec![(0, 1.0), (2, 1.0)]);
        assert_eq!(g.weight(2, 1), Some(1.0));
        assert_eq!(g.weight(0, 2), None);
    }

    #[test]
    fn rejects_negative_weight() {
        let err = parse_edge_list("0 1 -2.0").unwrap_err();
        assert!(matches!(err, GraphError::NegativeWeight { line: 1, .. }));
    }

    #[test]
    fn rejects_duplicate_edge() {
        let err = parse_edge_list("0 1 1\n0 1 2").unwrap_err();
        assert_eq!(
            err,
            GraphError::DuplicateEdge {
                line: 2,
                u: 0,
                v: 1
            }
        );
        let err = parse_edge_list("0 1 1\n1 0 1").unwrap_err();
        assert!(matches!(err, GraphError::DuplicateEdge { line: 2, .. }));
    }

    #[test]
    fn rejects_self_loop_and_garbage() {
        assert!(matches!(
            parse_edge_list("0 0 1").unwrap_err(),
            GraphError::SelfLoop { vertex: 0, .. }
        ));
        assert!(matches!(
            parse_edge_list("# c\n0 1 1\n1 x 1").unwrap_err(),
            GraphError::Malformed { line: 3, .. }
        ));
        assert!(matches!(
            parse_edge_list("0 1").unwrap_err(),
            GraphError::Malformed { line: 1, .. }
        ));
        assert!(matches!(
            parse_edge_list("0 1 nan").unwrap_err(),
            GraphError::Malformed { .. }
        ));
        assert_eq!(
            parse_edge_list("# only a comment\n").unwrap_err(),
            GraphError::Empty
        );
    }

    #[test]
    fn id_gaps_need_header() {
        assert_eq!(
            parse_edge_list("0 1 1\n1 3 1").unwrap_err(),
            GraphError::IdGap { vertex: 2 }
        );
        let g = parse_edge_list("p 4 2\n0 1 1\n1 3 1").unwrap();
        assert_eq!(g.n(), 4);
        assert!(!validate_connected(&g));
        assert!(matches!(
            parse_edge_list("p 3 1\n0 5 1").unwrap_err(),
            GraphError::VertexOutOfRange { vertex: 5, .. }
        ));
        assert_eq!(
            parse_edge_list("p 3 3\n0 1 1").unwrap_err(),
            GraphError::EdgeCountMismatch {
                declared: 3,
                found: 1
            }
        );
    }

    #[test]
    fn accepts_crlf_and_comments() {
        let g = parse_edge_list("# header\r\n0 1 2\r\n\r\n1 2 3\r\n").unwrap();
        assert_eq!(g.m(), 2);
        assert_eq!(g.weight(1, 2), Some(3.0));
    }

    #[test]
    fn connectivity() {
        assert!(validate_connected(
            &parse_edge_list("0 1 1\n1 2 1").unwrap()
        ));
        assert!(!validate_connected(
            &parse_edge_list("0 1 1\n2 3 1").unwrap()
        ));
        assert!(validate_connected(&parse_edge_list("p 1 0\n").unwrap()));
    }

    #[test]
    fn pair_keys() {
        assert_eq!(pair_key(3, 7), pair_key(7, 3));
        assert_eq!(unpack_pair(pair_key(9, 2)), (2, 9));
    }
}
