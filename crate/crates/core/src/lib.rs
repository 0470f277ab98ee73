//! Exact shortest paths for every pair whose shortest-path centrality is at
//! least ε, and ε-accurate centrality estimates for all pairs, by
//! progressive sampling of canonical Dijkstra trees.
//!
//! The shortest-path centrality `c(u, v)` of a pair is the fraction of the
//! `n` canonical shortest-path trees (one per root) in which `u` and `v` are
//! ancestor and descendant. Sampling roots uniformly makes the fraction of
//! sampled trees covering a pair an unbiased estimate of `c(u, v)`, and
//! every covered pair gets its exact distance from the covering tree.
//!
//! ```
//! use pasp_core::{fixtures, run, Mode, RunConfig};
//!
//! let g = fixtures::grid(4, 4);
//! let mut cfg = RunConfig::new(0.2, 0.1);
//! cfg.mode = Mode::Centrality;
//! let est = run(&g, &cfg).unwrap();
//! assert_eq!(est.distance(0, 15), Some(6.0));
//! ```

pub mod accumulate;
pub mod bounds;
pub mod cli;
pub mod engine;
pub mod error;
pub mod fixtures;
pub mod graph;
pub mod io;
pub mod oracle;
pub mod rademacher;
pub mod sssp;

pub use accumulate::{
    accumulate_tree, reconstruct_path, PairAccumulator, PairEntry, PairTable, TreeStore,
    ValueHistogram,
};
pub use bounds::{BoundInputs, BoundsSummary, DiamMode};
pub use engine::{run, EstimationResult, Mode, RunConfig, RunReport, SampleSchedule, StopReason};
pub use error::{Error, GraphError, Result};
pub use graph::{parse_edge_list, validate_connected, Graph};
pub use oracle::{compare, exact_apsp, exact_centrality, ComparisonReport, ExactTables};
pub use sssp::{dijkstra_canonical, max_hop_levels, ShortestPathTree};
