//! Brute-force ground truth for small graphs: all-pairs distances and exact
//! shortest-path centrality from all `n` canonical trees.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::accumulate::for_each_tree_pair;
use crate::engine::EstimationResult;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::sssp;

/// Default vertex limit for the dense oracle.
pub const DEFAULT_ORACLE_MAX_N: usize = 2000;

/// Dense exact tables, row-major `n × n`.
#[derive(Debug, Clone, PartialEq)]
pub struct ExactTables {
    n: usize,
    dist: Vec<f64>,
    count: Vec<u32>,
}

impl ExactTables {
    /// Builds tables from `(u, v, d, t)` rows covering every pair `u < v`.
    pub fn from_rows(n: usize, rows: &[(usize, usize, f64, u32)]) -> Result<Self> {
        let mut dist = vec![0.0; n * n];
        let mut count = vec![0u32; n * n];
        let mut seen = 0usize;
        for &(u, v, d, t) in rows {
            if u >= n || v >= n || u == v {
                return Err(Error::GraphMismatch {
                    left: u.max(v) + 1,
                    right: n,
                });
            }
            dist[u * n + v] = d;
            dist[v * n + u] = d;
            count[u * n + v] = t;
            count[v * n + u] = t;
            seen += 1;
        }
        if seen != n * (n - 1) / 2 {
            return Err(Error::Invariant(format!(
                "exact table lists {seen} pairs, expected {}",
                n * (n - 1) / 2
            )));
        }
        Ok(ExactTables { n, dist, count })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dist(&self, u: usize, v: usize) -> f64 {
        self.dist[u * self.n + v]
    }

    /// Number of canonical trees in which `u` and `v` are ancestor and
    /// descendant.
    pub fn count(&self, u: usize, v: usize) -> u32 {
        self.count[u * self.n + v]
    }

    pub fn centrality(&self, u: usize, v: usize) -> f64 {
        self.count(u, v) as f64 / self.n as f64
    }

    /// All pairs `u < v`, in order.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| (u + 1..self.n).map(move |v| (u, v)))
    }
}

fn check_size(g: &Graph, limit: usize) -> Result<()> {
    if g.n() > limit {
        return Err(Error::OracleLimit { n: g.n(), limit });
    }
    if let Some(unreached) = g.first_unreached() {
        return Err(Error::Disconnected { unreached });
    }
    Ok(())
}

/// Exact distance matrix from the canonical tree of every root.
pub fn exact_apsp(g: &Graph) -> Result<Vec<Vec<f64>>> {
    exact_apsp_with_limit(g, DEFAULT_ORACLE_MAX_N)
}

pub fn exact_apsp_with_limit(g: &Graph, limit: usize) -> Result<Vec<Vec<f64>>> {
    check_size(g, limit)?;
    (0..g.n())
        .into_par_iter()
        .map(|root| Ok(sssp::dijkstra_canonical(g, root)?.dist))
        .collect()
}

/// Exact distances, tree counts and centralities.
pub fn exact_centrality(g: &Graph) -> Result<ExactTables> {
    exact_centrality_with_limit(g, DEFAULT_ORACLE_MAX_N)
}

pub fn exact_centrality_with_limit(g: &Graph, limit: usize) -> Result<ExactTables> {
    check_size(g, limit)?;
    let n = g.n();
    let (dist, count) = (0..n)
        .into_par_iter()
        .try_fold(
            || (vec![0.0f64; n * n], vec![0u32; n * n]),
            |(mut dist, mut count), root| {
                let tree = sssp::dijkstra_canonical(g, root)?;
                dist[root * n..(root + 1) * n].copy_from_slice(&tree.dist);
                for_each_tree_pair(&tree, |j, i| {
                    count[j * n + i] += 1;
                    count[i * n + j] += 1;
                });
                Ok::<_, Error>((dist, count))
            },
        )
        .try_reduce(
            || (vec![0.0f64; n * n], vec![0u32; n * n]),
            |(mut d1, mut c1), (d2, c2)| {
                // each root fills its own row once, the other partial holds 0.0 there
                for (a, b) in d1.iter_mut().zip(&d2) {
                    *a += b;
                }
                for (a, b) in c1.iter_mut().zip(&c2) {
                    *a += b;
                }
                Ok((d1, c1))
            },
        )?;
    Ok(ExactTables { n, dist, count })
}

/// One stored pair as read back from an estimate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EstimateRecord {
    pub u: usize,
    pub v: usize,
    pub d: f64,
    pub t: u32,
    /// `t̃ / r`, when the estimate carries centralities.
    pub c: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DistanceMismatch {
    pub u: usize,
    pub v: usize,
    pub estimated: f64,
    pub exact: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NetViolation {
    pub u: usize,
    pub v: usize,
    pub centrality: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComparisonReport {
    pub epsilon: f64,
    pub distance_mismatch_count: usize,
    pub distance_mismatches: Vec<DistanceMismatch>,
    pub net_violations: Vec<NetViolation>,
    /// `max |c̃ − c|` over all pairs, unstored pairs counting as 0; absent
    /// when the estimate has no centralities.
    pub sup_centrality_error: Option<f64>,
    pub distances_exact: bool,
    pub epsilon_net_holds: bool,
    pub epsilon_representative_holds: Option<bool>,
}

/// Relative tolerance for in-memory distance comparisons.
pub const DISTANCE_RTOL: f64 = 1e-9;

fn same_distance(a: f64, b: f64, abs_tol: f64) -> bool {
    (a - b).abs() <= (DISTANCE_RTOL * b.abs().max(1.0)).max(abs_tol)
}

/// Checks an estimate against exact tables. `abs_tol` widens the distance
/// check for estimates read back from rounded text.
pub fn compare_records(
    records: &[EstimateRecord],
    exact: &ExactTables,
    epsilon: f64,
    abs_tol: f64,
) -> Result<ComparisonReport> {
    let n = exact.n();
    let mut estimated = vec![None; n * n];
    let mut has_c = !records.is_empty();
    for r in records {
        if r.u >= n || r.v >= n || r.u == r.v {
            return Err(Error::GraphMismatch {
                left: r.u.max(r.v) + 1,
                right: n,
            });
        }
        let (u, v) = (r.u.min(r.v), r.u.max(r.v));
        estimated[u * n + v] = Some(r);
        has_c &= r.c.is_some();
    }

    let mut mismatches = Vec::new();
    let mut violations = Vec::new();
    let mut sup = 0.0f64;
    for (u, v) in exact.pairs() {
        let c = exact.centrality(u, v);
        match estimated[u * n + v] {
            Some(r) => {
                if !same_distance(r.d, exact.dist(u, v), abs_tol) {
                    mismatches.push(DistanceMismatch {
                        u,
                        v,
                        estimated: r.d,
                        exact: exact.dist(u, v),
                    });
                }
                if let Some(ct) = r.c {
                    sup = sup.max((ct - c).abs());
                }
            }
            None => {
                sup = sup.max(c);
                if c >= epsilon {
                    violations.push(NetViolation {
                        u,
                        v,
                        centrality: c,
                    });
                }
            }
        }
    }
    let sup_centrality_error = has_c.then_some(sup);
    Ok(ComparisonReport {
        epsilon,
        distance_mismatch_count: mismatches.len(),
        distances_exact: mismatches.is_empty(),
        distance_mismatches: mismatches,
        epsilon_net_holds: violations.is_empty(),
        net_violations: violations,
        epsilon_representative_holds: sup_centrality_error.map(|s| s <= epsilon),
        sup_centrality_error,
    })
}

/// Records of an estimation result, with centralities.
pub fn estimate_records(est: &EstimationResult) -> Vec<EstimateRecord> {
    let r = est.sample_size() as f64;
    est.records()
        .into_iter()
        .map(|((u, v), e)| EstimateRecord {
            u,
            v,
            d: e.dist,
            t: e.count,
            c: Some(e.count as f64 / r),
        })
        .collect()
}

/// Checks an estimation result against exact tables.
pub fn compare(
    est: &EstimationResult,
    exact: &ExactTables,
    epsilon: f64,
) -> Result<ComparisonReport> {
    if est.n != exact.n() {
        return Err(Error::GraphMismatch {
            left: est.n,
            right: exact.n(),
        });
    }
    compare_records(&estimate_records(est), exact, epsilon, 0.0)
}
