//! Python bindings: `import pynetrobust`.

use netrobust::attack::{self, AttackKind, AttackOptions, AttackStrategy, CollapseCriterion};
use netrobust::enhance::{EnhanceMode, EnhancePlan};
use netrobust::generators::{self, BaParams};
use netrobust::{harness, metrics, theory, Error};
use pyo3::exceptions::{PyIOError, PyValueError};
use pyo3::prelude::*;

fn to_py(e: Error) -> PyErr {
    match e {
        Error::Io(msg) => PyIOError::new_err(msg),
        other => PyValueError::new_err(other.to_string()),
    }
}

/// Undirected simple graph over node ids `0..n`.
#[pyclass(name = "Graph", module = "pynetrobust", skip_from_py_object)]
#[derive(Clone)]
pub struct PyGraph {
    inner: netrobust::Graph,
}

impl PyGraph {
    fn check(&self, u: usize) -> PyResult<()> {
        let n = self.inner.node_count();
        if u < n {
            Ok(())
        } else {
            Err(to_py(Error::NodeOutOfRange { node: u, node_count: n }))
        }
    }
}

#[pymethods]
impl PyGraph {
    #[new]
    #[pyo3(signature = (n, edges = Vec::new()))]
    fn new(n: usize, edges: Vec<(usize, usize)>) -> PyResult<Self> {
        let inner = netrobust::Graph::from_edges(n, &edges).map_err(to_py)?;
        Ok(PyGraph { inner })
    }

    fn add_edge(&mut self, u: usize, v: usize) -> PyResult<()> {
        self.inner.add_edge(u, v).map_err(to_py)
    }

    fn remove_node(&mut self, u: usize) -> PyResult<()> {
        self.inner.remove_node(u).map_err(to_py)
    }

    fn has_edge(&self, u: usize, v: usize) -> PyResult<bool> {
        self.check(u)?;
        self.check(v)?;
        Ok(self.inner.has_edge(u, v))
    }

    fn degree(&self, u: usize) -> PyResult<usize> {
        self.check(u)?;
        Ok(self.inner.degree(u))
    }

    fn neighbors(&self, u: usize) -> PyResult<Vec<usize>> {
        self.check(u)?;
        Ok(self.inner.neighbors(u).to_vec())
    }

    fn edges(&self) -> Vec<(usize, usize)> {
        self.inner.edges().collect()
    }

    #[getter]
    fn node_count(&self) -> usize {
        self.inner.node_count()
    }

    #[getter]
    fn alive_count(&self) -> usize {
        self.inner.alive_count()
    }

    #[getter]
    fn edge_count(&self) -> usize {
        self.inner.edge_count()
    }

    /// `(mean_degree, second_moment, kappa)` over alive nodes.
    fn degree_stats(&self) -> PyResult<(f64, f64, f64)> {
        let s = self.inner.degree_stats().map_err(to_py)?;
        Ok((s.mean_degree, s.second_moment, s.kappa))
    }

    fn largest_component_fraction(&self) -> PyResult<f64> {
        self.inner.largest_component_fraction().map_err(to_py)
    }

    fn copy(&self) -> Self {
        self.clone()
    }

    fn __len__(&self) -> usize {
        self.inner.alive_count()
    }

    fn __repr__(&self) -> String {
        format!("Graph(nodes={}, edges={})", self.inner.alive_count(), self.inner.edge_count())
    }
}

fn strategy(name: &str, recompute: bool, seed: Option<u64>) -> PyResult<AttackStrategy> {
    let kind = match (name, seed) {
        ("degree", _) => AttackKind::Degree,
        ("betweenness", _) => AttackKind::Betweenness,
        ("random", Some(seed)) => AttackKind::Random { seed },
        ("random", None) => return Err(PyValueError::new_err("random attack needs a seed")),
        _ => return Err(PyValueError::new_err(format!("unknown attack strategy {name:?}"))),
    };
    Ok(AttackStrategy { kind, recompute })
}

fn criterion(name: &str) -> PyResult<CollapseCriterion> {
    match name {
        "kappa" => Ok(CollapseCriterion::Kappa),
        "giant" => Ok(CollapseCriterion::GiantComponent),
        _ => Err(PyValueError::new_err(format!("unknown collapse criterion {name:?}"))),
    }
}

#[pyfunction]
fn generate_ba(m: usize, n: usize, seed: u64) -> PyResult<PyGraph> {
    let inner = generators::generate_ba(&BaParams::new(m, n, seed)).map_err(to_py)?;
    Ok(PyGraph { inner })
}

/// Reads a whitespace-separated edge list; returns the graph and node labels.
#[pyfunction]
fn load_edge_list(path: &str) -> PyResult<(PyGraph, Vec<String>)> {
    let loaded = generators::load_edge_list(path).map_err(to_py)?;
    Ok((PyGraph { inner: loaded.graph }, loaded.labels))
}

#[pyfunction]
fn save_edge_list(g: &PyGraph, path: &str) -> PyResult<()> {
    generators::save_edge_list(&g.inner, path).map_err(to_py)
}

#[pyfunction]
fn efficiency(g: &PyGraph) -> PyResult<f64> {
    metrics::efficiency(&g.inner).map_err(to_py)
}

#[pyfunction]
fn betweenness(g: &PyGraph) -> PyResult<Vec<f64>> {
    metrics::betweenness(&g.inner).map_err(to_py)
}

#[pyfunction]
fn critical_fraction_random(g: &PyGraph) -> PyResult<f64> {
    let stats = g.inner.degree_stats().map_err(to_py)?;
    Ok(metrics::critical_fraction_random(&stats).map_err(to_py)?.value)
}

#[pyfunction]
#[pyo3(signature = (g, strategy_name = "degree", recompute = true, seed = None, collapse = "kappa"))]
fn critical_fraction_targeted(
    g: &PyGraph,
    strategy_name: &str,
    recompute: bool,
    seed: Option<u64>,
    collapse: &str,
) -> PyResult<f64> {
    let s = strategy(strategy_name, recompute, seed)?;
    Ok(attack::critical_fraction_with(&g.inner, &s, criterion(collapse)?)
        .map_err(to_py)?
        .value)
}

#[pyfunction]
fn random_failure_empirical(g: &PyGraph, seed: u64, trials: usize) -> PyResult<f64> {
    Ok(attack::random_failure_empirical(&g.inner, seed, trials).map_err(to_py)?.value)
}

/// Runs an attack and returns `(samples, critical_fraction)`; each sample is
/// `(removed, fraction_removed, largest_component, S, E, kappa)`.
#[pyfunction]
#[pyo3(signature = (g, strategy_name = "degree", recompute = true, seed = None, interval = None, collapse = "kappa", run_to_end = false))]
#[allow(clippy::type_complexity)]
fn run_attack(
    g: &PyGraph,
    strategy_name: &str,
    recompute: bool,
    seed: Option<u64>,
    interval: Option<usize>,
    collapse: &str,
    run_to_end: bool,
) -> PyResult<(Vec<(usize, f64, usize, f64, f64, Option<f64>)>, Option<f64>)> {
    let options = AttackOptions {
        sample_interval: interval,
        collapse: criterion(collapse)?,
        stop_at_collapse: !run_to_end,
        record_efficiency: true,
    };
    let trace = attack::run_attack(&g.inner, &strategy(strategy_name, recompute, seed)?, &options).map_err(to_py)?;
    let samples = trace
        .samples
        .iter()
        .map(|s| (s.removed, s.fraction_removed, s.largest_component, s.s, s.e, s.kappa))
        .collect();
    Ok((samples, trace.critical_fraction.map(|c| c.value)))
}

/// Adds `round(cost * |E|)` links. `strategy` is `"alpha"`, `"ERR"`, `"ELL"` or `"EHH"`.
#[pyfunction]
#[pyo3(signature = (g, strategy_name, cost, seed, alpha = None))]
fn enhance(
    g: &PyGraph,
    strategy_name: &str,
    cost: f64,
    seed: u64,
    alpha: Option<f64>,
) -> PyResult<(PyGraph, Vec<(usize, usize)>)> {
    let mode = match (strategy_name, alpha) {
        ("alpha", Some(a)) => EnhanceMode::Alpha(a),
        ("alpha", None) => return Err(PyValueError::new_err("strategy 'alpha' needs alpha")),
        (_, Some(_)) => return Err(PyValueError::new_err("alpha only applies to strategy 'alpha'")),
        (name, None) => name.parse().map_err(to_py)?,
    };
    let (inner, added) = netrobust::enhance::enhance(&g.inner, &EnhancePlan { mode, cost, seed }).map_err(to_py)?;
    Ok((PyGraph { inner }, added))
}

#[pyfunction]
fn endpoint_fractions(g: &PyGraph, alpha: f64) -> PyResult<Vec<f64>> {
    theory::endpoint_fractions(&g.inner, alpha).map_err(to_py)
}

#[pyfunction]
fn predicted_kappa(g: &PyGraph, alpha: f64, d: usize) -> PyResult<f64> {
    theory::predicted_kappa(&g.inner, alpha, d).map_err(to_py)
}

#[pyfunction]
fn predicted_f_r(kappa: f64) -> PyResult<f64> {
    theory::predicted_f_r(kappa).map_err(to_py)
}

/// `(mean, low, high)` of the 95% normal-approximation interval.
#[pyfunction]
fn confidence_interval(samples: Vec<f64>) -> PyResult<(f64, f64, f64)> {
    let i = harness::confidence_interval(&samples).map_err(to_py)?;
    Ok((i.mean, i.lo, i.hi))
}

#[pymodule]
fn pynetrobust(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyGraph>()?;
    m.add_function(wrap_pyfunction!(generate_ba, m)?)?;
    m.add_function(wrap_pyfunction!(load_edge_list, m)?)?;
    m.add_function(wrap_pyfunction!(save_edge_list, m)?)?;
    m.add_function(wrap_pyfunction!(efficiency, m)?)?;
    m.add_function(wrap_pyfunction!(betweenness, m)?)?;
    m.add_function(wrap_pyfunction!(critical_fraction_random, m)?)?;
    m.add_function(wrap_pyfunction!(critical_fraction_targeted, m)?)?;
    m.add_function(wrap_pyfunction!(random_failure_empirical, m)?)?;
    m.add_function(wrap_pyfunction!(run_attack, m)?)?;
    m.add_function(wrap_pyfunction!(enhance, m)?)?;
    m.add_function(wrap_pyfunction!(endpoint_fractions, m)?)?;
    m.add_function(wrap_pyfunction!(predicted_kappa, m)?)?;
    m.add_function(wrap_pyfunction!(predicted_f_r, m)?)?;
    m.add_function(wrap_pyfunction!(confidence_interval, m)?)?;
    Ok(())
}
