//! Python bindings for `pasp-core`.
//!
//! Graphs are immutable; `estimate` and `exact` release the GIL while they
//! run. Reports come back as plain dictionaries.

use pasp_core::bounds::{self, BoundInputs, BoundsSummary, DiamMode};
use pasp_core::{self as core, Error, GraphError, Mode, RunConfig};
use pyo3::exceptions::{PyKeyError, PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

fn to_py(e: Error) -> PyErr {
    match e {
        Error::Graph(_)
        | Error::Disconnected { .. }
        | Error::RootOutOfRange { .. }
        | Error::InvalidConfig(_)
        | Error::GraphMismatch { .. }
        | Error::SelfPair(_)
        | Error::OracleLimit { .. }
        | Error::DiameterLimit { .. } => PyValueError::new_err(e.to_string()),
        Error::PairAbsent { .. } => PyKeyError::new_err(e.to_string()),
        other => PyRuntimeError::new_err(other.to_string()),
    }
}

fn graph_err(e: GraphError) -> PyErr {
    to_py(Error::Graph(e))
}

/// Serializes through JSON so dictionaries mirror the CLI's reports.
fn to_dict<'py, T: serde::Serialize>(py: Python<'py>, value: &T) -> PyResult<Bound<'py, PyDict>> {
    let text = serde_json::to_string(value).map_err(|e| PyRuntimeError::new_err(e.to_string()))?;
    py.import("json")?
        .call_method1("loads", (text,))?
        .cast_into::<PyDict>()
        .map_err(Into::into)
}

fn check_vertex(n: usize, v: usize) -> PyResult<()> {
    if v < n {
        Ok(())
    } else {
        Err(PyValueError::new_err(format!(
            "vertex {v} out of range (n = {n})"
        )))
    }
}

/// An undirected graph with non-negative edge weights.
#[pyclass(frozen, module = "pasp")]
struct Graph {
    inner: core::Graph,
}

#[pymethods]
impl Graph {
    #[new]
    fn new(n: usize, edges: Vec<(usize, usize, f64)>) -> PyResult<Self> {
        let inner = core::Graph::from_edges(n, &edges).map_err(graph_err)?;
        Ok(Graph { inner })
    }

    /// Parses the edge-list text format (`u v w` per line, optional
    /// `p n m` header).
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        let inner = core::parse_edge_list(text).map_err(graph_err)?;
        Ok(Graph { inner })
    }

    #[staticmethod]
    fn read(path: std::path::PathBuf) -> PyResult<Self> {
        let text = std::fs::read_to_string(&path)?;
        Self::parse(&text)
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    #[getter]
    fn m(&self) -> usize {
        self.inner.m()
    }

    fn edges(&self) -> Vec<(usize, usize, f64)> {
        self.inner.edges().collect()
    }

    fn neighbors(&self, u: usize) -> PyResult<Vec<(usize, f64)>> {
        check_vertex(self.inner.n(), u)?;
        Ok(self.inner.neighbors(u).collect())
    }

    fn is_connected(&self) -> bool {
        core::validate_connected(&self.inner)
    }

    fn to_edge_list(&self) -> String {
        self.inner.to_edge_list()
    }

    fn __repr__(&self) -> String {
        format!("Graph(n={}, m={})", self.inner.n(), self.inner.m())
    }
}

/// Output of a sampling run.
#[pyclass(frozen, module = "pasp")]
struct Estimate {
    inner: core::EstimationResult,
    config: RunConfig,
}

#[pymethods]
impl Estimate {
    #[getter]
    fn sample_size(&self) -> usize {
        self.inner.sample_size()
    }

    #[getter]
    fn stop_reason(&self) -> &'static str {
        match self.inner.report.stop_reason {
            core::StopReason::EtaMet => "eta-met",
            core::StopReason::CapReached => "cap-reached",
        }
    }

    #[getter]
    fn eta(&self) -> f64 {
        self.inner.report.last().eta
    }

    fn __len__(&self) -> usize {
        self.inner.pairs.len()
    }

    fn centrality(&self, u: usize, v: usize) -> PyResult<f64> {
        check_vertex(self.inner.n, u)?;
        check_vertex(self.inner.n, v)?;
        Ok(self.inner.centrality(u, v))
    }

    /// Exact distance of a stored pair, `None` when the pair was never
    /// covered.
    fn distance(&self, u: usize, v: usize) -> Option<f64> {
        self.inner.distance(u, v)
    }

    fn path(&self, u: usize, v: usize) -> PyResult<Vec<usize>> {
        self.inner.path(u, v).map_err(to_py)
    }

    /// `(u, v, distance, count)` for every stored pair, sorted.
    fn pairs(&self) -> Vec<(usize, usize, f64, u32)> {
        self.inner
            .records()
            .into_iter()
            .map(|((u, v), e)| (u, v, e.dist, e.count))
            .collect()
    }

    fn report<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyDict>> {
        to_dict(
            py,
            &core::io::EstimateReport::new(&self.config, &self.inner.report),
        )
    }

    fn to_tsv(&self, paths: bool) -> PyResult<String> {
        core::io::write_estimate_tsv(&self.inner, paths).map_err(to_py)
    }

    fn __repr__(&self) -> String {
        format!(
            "Estimate(pairs={}, sample_size={}, stop_reason='{}')",
            self.inner.pairs.len(),
            self.inner.sample_size(),
            self.stop_reason()
        )
    }
}

/// Exact distances and tree counts over all `n` roots.
#[pyclass(frozen, module = "pasp")]
struct Exact {
    inner: core::ExactTables,
}

#[pymethods]
impl Exact {
    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    fn distance(&self, u: usize, v: usize) -> PyResult<f64> {
        check_vertex(self.inner.n(), u)?;
        check_vertex(self.inner.n(), v)?;
        Ok(self.inner.dist(u, v))
    }

    fn count(&self, u: usize, v: usize) -> PyResult<u32> {
        check_vertex(self.inner.n(), u)?;
        check_vertex(self.inner.n(), v)?;
        Ok(self.inner.count(u, v))
    }

    fn centrality(&self, u: usize, v: usize) -> PyResult<f64> {
        check_vertex(self.inner.n(), u)?;
        check_vertex(self.inner.n(), v)?;
        Ok(self.inner.centrality(u, v))
    }

    fn to_tsv(&self) -> String {
        core::io::write_exact_tsv(&self.inner)
    }
}

#[pyfunction]
#[pyo3(signature = (
    graph, epsilon, delta, *, mode = "distances", seed = 0, multiplier = 1.5,
    c_univ = bounds::DEFAULT_C_UNIV, diam = "exact", include_zero = true
))]
#[allow(clippy::too_many_arguments)]
fn estimate(
    py: Python<'_>,
    graph: &Graph,
    epsilon: f64,
    delta: f64,
    mode: &str,
    seed: u64,
    multiplier: f64,
    c_univ: f64,
    diam: &str,
    include_zero: bool,
) -> PyResult<Estimate> {
    let mut config = RunConfig::new(epsilon, delta);
    config.mode = mode.parse::<Mode>().map_err(PyValueError::new_err)?;
    config.diam_mode = diam.parse::<DiamMode>().map_err(PyValueError::new_err)?;
    config.seed = seed;
    config.schedule_multiplier = multiplier;
    config.c_univ = c_univ;
    config.include_zero = include_zero;
    let g = &graph.inner;
    let inner = py.detach(|| core::run(g, &config)).map_err(to_py)?;
    Ok(Estimate { inner, config })
}

#[pyfunction]
fn exact(py: Python<'_>, graph: &Graph) -> PyResult<Exact> {
    let g = &graph.inner;
    let inner = py.detach(|| core::exact_centrality(g)).map_err(to_py)?;
    Ok(Exact { inner })
}

#[pyfunction]
fn compare<'py>(
    py: Python<'py>,
    estimate: &Estimate,
    exact: &Exact,
    epsilon: f64,
) -> PyResult<Bound<'py, PyDict>> {
    let report = core::compare(&estimate.inner, &exact.inner, epsilon).map_err(to_py)?;
    to_dict(py, &report)
}

/// Every sample-size bound for `n` vertices and vertex diameter `diam`.
#[pyfunction]
#[pyo3(signature = (n, diam, epsilon, delta, c_univ = bounds::DEFAULT_C_UNIV))]
fn sample_bounds<'py>(
    py: Python<'py>,
    n: usize,
    diam: usize,
    epsilon: f64,
    delta: f64,
    c_univ: f64,
) -> PyResult<Bound<'py, PyDict>> {
    let inputs = BoundInputs {
        n,
        diam_v: diam,
        epsilon,
        delta,
        c_univ,
    };
    let summary = BoundsSummary::compute(&inputs).map_err(to_py)?;
    to_dict(py, &summary)
}

#[pyfunction]
fn vertex_diameter(graph: &Graph, mode: &str) -> PyResult<usize> {
    let mode = mode.parse::<DiamMode>().map_err(PyValueError::new_err)?;
    bounds::vertex_diameter_bound(&graph.inner, mode).map_err(to_py)
}

#[pymodule]
fn pasp(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Graph>()?;
    m.add_class::<Estimate>()?;
    m.add_class::<Exact>()?;
    m.add_function(wrap_pyfunction!(estimate, m)?)?;
    m.add_function(wrap_pyfunction!(exact, m)?)?;
    m.add_function(wrap_pyfunction!(compare, m)?)?;
    m.add_function(wrap_pyfunction!(sample_bounds, m)?)?;
    m.add_function(wrap_pyfunction!(vertex_diameter, m)?)?;
    Ok(())
}
