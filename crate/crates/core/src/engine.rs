//! The progressive sampling loop.
//!
//! Each iteration grows the sample of roots to the next size of a geometric
//! schedule, accumulates the new canonical trees, and evaluates the stopping
//! rule with confidence budget `δ / 2^i`. Sampling also stops at the
//! VC-dimension cap: the ε-net size in distances mode, the ε-sample size in
//! centrality mode.

use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::accumulate::{PairAccumulator, PairEntry, PairTable, TreeStore};
use crate::bounds::{self, BoundInputs, DiamMode};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::rademacher::{self, StopEvaluation};
use crate::sssp;

/// Trees computed concurrently before being folded in, in sample order.
const TREE_CHUNK: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// Exact distances for every ε-central pair.
    Distances,
    /// Distances plus ε-accurate centrality for all pairs.
    Centrality,
}

impl std::str::FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "distances" => Ok(Mode::Distances),
            "centrality" => Ok(Mode::Centrality),
            other => Err(format!(
                "expected 'distances' or 'centrality', got '{other}'"
            )),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub epsilon: f64,
    pub delta: f64,
    pub mode: Mode,
    pub seed: u64,
    pub schedule_multiplier: f64,
    pub c_univ: f64,
    pub diam_mode: DiamMode,
    pub include_zero: bool,
    pub max_iterations: usize,
}

impl RunConfig {
    pub fn new(epsilon: f64, delta: f64) -> Self {
        RunConfig {
            epsilon,
            delta,
            mode: Mode::Distances,
            seed: 0,
            schedule_multiplier: 1.5,
            c_univ: bounds::DEFAULT_C_UNIV,
            diam_mode: DiamMode::Exact,
            include_zero: true,
            max_iterations: 200,
        }
    }

    pub fn validate(&self) -> Result<()> {
        bounds::check_unit_interval("epsilon", self.epsilon)?;
        bounds::check_unit_interval("delta", self.delta)?;
        if !(self.schedule_multiplier > 1.0 && self.schedule_multiplier.is_finite()) {
            return Err(Error::InvalidConfig(format!(
                "schedule multiplier must exceed 1, got {}",
                self.schedule_multiplier
            )));
        }
        if !(self.c_univ > 0.0 && self.c_univ.is_finite()) {
            return Err(Error::InvalidConfig(format!(
                "c_univ must be positive, got {}",
                self.c_univ
            )));
        }
        if self.max_iterations == 0 {
            return Err(Error::InvalidConfig(
                "max_iterations must be positive".into(),
            ));
        }
        Ok(())
    }
}

/// Geometric schedule `⌈multiplier^(i-1) · s1⌉`, capped.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SampleSchedule {
    pub s1: usize,
    pub multiplier: f64,
    pub cap: usize,
}

impl SampleSchedule {
    /// Size of sample `i` (1-based). Sizes strictly increase until the cap.
    pub fn size(&self, i: usize) -> usize {
        assert!(i >= 1, "schedule is 1-based");
        let mut prev = 0usize;
        let mut size = 0usize;
        for j in 1..=i {
            let geometric = (self.multiplier.powi(j as i32 - 1) * self.s1 as f64).ceil();
            size = if geometric >= self.cap as f64 {
                self.cap
            } else {
                (geometric as usize).max(prev + 1).min(self.cap)
            };
            prev = size;
        }
        size
    }
}

/// Size of sample `i` under `sched`.
pub fn next_sample_size(i: usize, sched: &SampleSchedule) -> usize {
    sched.size(i)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum StopReason {
    /// The deviation bound fell to ε: both guarantees are certified.
    EtaMet,
    /// The VC-dimension cap was reached first: only the guarantee of the
    /// running mode is certified.
    CapReached,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct IterationRecord {
    pub iteration: usize,
    pub sample_size: usize,
    pub w_s: f64,
    pub s_star: f64,
    pub delta_i: f64,
    pub eta: f64,
    /// Wall time of the iteration; not serialized, so reports stay
    /// reproducible.
    #[serde(skip)]
    pub elapsed: Duration,
}

// `elapsed` takes no part in equality
impl PartialEq for IterationRecord {
    fn eq(&self, o: &Self) -> bool {
        (self.iteration, self.sample_size) == (o.iteration, o.sample_size)
            && self.w_s.to_bits() == o.w_s.to_bits()
            && self.s_star.to_bits() == o.s_star.to_bits()
            && self.delta_i.to_bits() == o.delta_i.to_bits()
            && self.eta.to_bits() == o.eta.to_bits()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub iterations: Vec<IterationRecord>,
    pub stop_reason: StopReason,
    pub cap: usize,
    pub vc_k: usize,
    pub diam_v: usize,
    pub diam_mode: DiamMode,
    pub initial_size: usize,
    pub sample_size: usize,
    pub stored_pairs: usize,
}

impl RunReport {
    pub fn last(&self) -> &IterationRecord {
        self.iterations
            .last()
            .expect("a run has at least one iteration")
    }
}

#[derive(Debug, Clone)]
pub struct EstimationResult {
    pub n: usize,
    pub mode: Mode,
    pub pairs: PairTable,
    pub store: TreeStore,
    pub report: RunReport,
}

impl EstimationResult {
    pub fn sample_size(&self) -> usize {
        self.report.sample_size
    }

    /// `t̃ / r` for a stored pair, 0 otherwise.
    pub fn centrality(&self, u: usize, v: usize) -> f64 {
        self.pairs
            .get(u, v)
            .map_or(0.0, |e| e.count as f64 / self.sample_size() as f64)
    }

    pub fn distance(&self, u: usize, v: usize) -> Option<f64> {
        self.pairs.get(u, v).map(|e| e.dist)
    }

    pub fn path(&self, u: usize, v: usize) -> Result<Vec<usize>> {
        crate::accumulate::reconstruct_path(&self.pairs, &self.store, u, v)
    }

    /// Stored pairs sorted by `(u, v)`.
    pub fn records(&self) -> Vec<((usize, usize), PairEntry)> {
        self.pairs.sorted()
    }
}

/// Resolves the diameter bound; exact mode above the size limit falls back
/// to the trivial bound.
fn resolve_diameter(g: &Graph, mode: DiamMode) -> Result<(usize, DiamMode)> {
    let mode = match mode {
        DiamMode::Exact if g.n() > bounds::EXACT_DIAMETER_MAX_N => DiamMode::Trivial,
        m => m,
    };
    Ok((bounds::vertex_diameter_bound(g, mode)?, mode))
}

/// Accumulates the canonical trees of `roots`, in order.
pub fn accumulate_roots(g: &Graph, roots: &[usize], acc: &mut PairAccumulator) -> Result<()> {
    for chunk in roots.chunks(TREE_CHUNK) {
        let trees = chunk
            .par_iter()
            .map(|&root| sssp::dijkstra_canonical(g, root))
            .collect::<Result<Vec<_>>>()?;
        for tree in &trees {
            acc.add(tree);
        }
    }
    Ok(())
}

/// Runs progressive sampling on a connected graph.
pub fn run(g: &Graph, cfg: &RunConfig) -> Result<EstimationResult> {
    cfg.validate()?;
    if let Some(unreached) = g.first_unreached() {
        return Err(Error::Disconnected { unreached });
    }
    let n = g.n();
    let (diam_v, diam_mode) = resolve_diameter(g, cfg.diam_mode)?;
    let inputs = BoundInputs {
        n,
        diam_v,
        epsilon: cfg.epsilon,
        delta: cfg.delta,
        c_univ: cfg.c_univ,
    };
    inputs.validate()?;
    let vc_k = bounds::vc_dimension_bound(n, diam_v);
    let cap = match cfg.mode {
        Mode::Distances => bounds::epsilon_net_size(&inputs, vc_k),
        Mode::Centrality => bounds::epsilon_sample_size(&inputs, vc_k),
    };
    let initial_size = bounds::initial_sample_size(cfg.epsilon, cfg.delta);
    let schedule = SampleSchedule {
        s1: initial_size,
        multiplier: cfg.schedule_multiplier,
        cap,
    };

    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut acc = PairAccumulator::new();
    let mut iterations = Vec::new();
    let mut drawn = 0usize;
    let stop_reason = loop {
        let i = iterations.len() + 1;
        if i > cfg.max_iterations {
            return Err(Error::MaxIterations(cfg.max_iterations));
        }
        let started = Instant::now();
        let size = schedule.size(i);
        let roots: Vec<usize> = (drawn..size).map(|_| rng.random_range(0..n)).collect();
        accumulate_roots(g, &roots, &mut acc)?;
        drawn = size;

        let values: Vec<u32> = acc.hist.distinct().iter().copied().collect();
        let StopEvaluation {
            w_s,
            s_star,
            eta,
            delta_i,
            ..
        } = rademacher::evaluate_stop(&values, size, i, cfg.delta, cfg.include_zero);
        iterations.push(IterationRecord {
            iteration: i,
            sample_size: size,
            w_s,
            s_star,
            delta_i,
            eta,
            elapsed: started.elapsed(),
        });
        if eta <= cfg.epsilon {
            break StopReason::EtaMet;
        }
        if size >= cap {
            break StopReason::CapReached;
        }
    };

    let PairAccumulator { table, store, .. } = acc;
    let report = RunReport {
        iterations,
        stop_reason,
        cap,
        vc_k,
        diam_v,
        diam_mode,
        initial_size,
        sample_size: drawn,
        stored_pairs: table.len(),
    };
    Ok(EstimationResult {
        n,
        mode: cfg.mode,
        pairs: table,
        store,
        report,
    })
}
