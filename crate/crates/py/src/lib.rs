use chroma_core::constructions::{build_hrtm, hypergraph_to_graph, star_instance, HrtmSpec};
use chroma_core::rational::parse_rational;
use chroma_core::{
    blow_up, connectivity_hypergraph, evaluate_bounds, exact_cycle_partition, exact_transversal, is_expander,
    monochromatic_components, posa_cycle_cover, random_coloured_graph, tree_cover, tree_cover_number,
    verify_certificate, verify_hub, verify_linked_family, Budget, Certificate, CoverMode, DeltaValue,
    ExpanderParams, IntraColourRule, LinkedHubFamily, Outcome, SimpleGraph,
};
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use serde::Serialize;

fn value_error(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// Converts through JSON so Python sees plain dicts and lists.
fn to_py<'py>(py: Python<'py>, value: &impl Serialize) -> PyResult<Bound<'py, PyAny>> {
    let text = serde_json::to_string(value).map_err(value_error)?;
    py.import("json")?.call_method1("loads", (text,))
}

fn from_py<T: serde::de::DeserializeOwned>(py: Python<'_>, obj: &Bound<'_, PyAny>) -> PyResult<T> {
    let text: String = match obj.extract::<String>() {
        Ok(s) => s,
        Err(_) => py.import("json")?.call_method1("dumps", (obj,))?.extract()?,
    };
    serde_json::from_str(&text).map_err(value_error)
}

fn budget(nodes: Option<u64>) -> Budget {
    nodes.map_or_else(Budget::unlimited, Budget::nodes)
}

#[pyclass(name = "ColouredGraph", module = "chroma", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyColouredGraph {
    inner: chroma_core::ColouredGraph,
}

#[pymethods]
impl PyColouredGraph {
    #[new]
    #[pyo3(signature = (n, r, edges = Vec::new()))]
    fn new(n: usize, r: usize, edges: Vec<(usize, usize, u8)>) -> PyResult<Self> {
        let inner = chroma_core::ColouredGraph::from_edges(n, r, edges).map_err(value_error)?;
        Ok(PyColouredGraph { inner })
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Ok(PyColouredGraph { inner: chroma_core::ColouredGraph::from_json_str(text).map_err(value_error)? })
    }

    fn to_json(&self) -> String {
        self.inner.to_json_string()
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    #[getter]
    fn r(&self) -> usize {
        self.inner.r()
    }

    fn edges(&self) -> Vec<(usize, usize, u8)> {
        self.inner.edges()
    }

    fn colour(&self, u: usize, v: usize) -> Option<u8> {
        self.inner.colour(u, v)
    }

    fn degree(&self, v: usize) -> PyResult<usize> {
        if v >= self.inner.n() {
            return Err(value_error(format!("vertex {v} out of range")));
        }
        Ok(self.inner.degree(v))
    }

    fn min_degree(&self) -> usize {
        self.inner.min_degree()
    }

    /// `(colour, index, members)` for every monochromatic component.
    fn components(&self) -> Vec<(u8, usize, Vec<usize>)> {
        monochromatic_components(&self.inner).into_iter().map(|c| (c.colour, c.index, c.members)).collect()
    }

    fn __repr__(&self) -> String {
        format!("ColouredGraph(n={}, r={}, edges={})", self.inner.n(), self.inner.r(), self.inner.edge_count())
    }

    fn __eq__(&self, other: &Self) -> bool {
        self.inner == other.inner
    }
}

#[pyclass(name = "Hypergraph", module = "chroma", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyHypergraph {
    inner: chroma_core::MultiHypergraph,
}

#[pymethods]
impl PyHypergraph {
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Ok(PyHypergraph { inner: chroma_core::MultiHypergraph::from_json_str(text).map_err(value_error)? })
    }

    fn to_json(&self) -> String {
        self.inner.to_json_string()
    }

    #[getter]
    fn vertex_count(&self) -> usize {
        self.inner.vertex_count()
    }

    /// Edge count with multiplicity.
    #[getter]
    fn edge_count(&self) -> u64 {
        self.inner.edge_count()
    }

    fn labels(&self) -> Vec<String> {
        self.inner.labels().to_vec()
    }

    fn edges(&self) -> Vec<(Vec<usize>, u64)> {
        self.inner.edges().iter().map(|e| (e.members.clone(), e.mult)).collect()
    }

    fn is_transversal(&self, vertices: Vec<usize>) -> bool {
        self.inner.is_transversal(&vertices)
    }

    fn is_partite(&self) -> bool {
        self.inner.is_partite()
    }

    fn __repr__(&self) -> String {
        format!("Hypergraph(vertices={}, edges={})", self.inner.vertex_count(), self.inner.edge_count())
    }
}

#[pyfunction]
#[pyo3(signature = (n, r, p, seed = 0))]
fn random_graph(n: usize, r: usize, p: f64, seed: u64) -> PyResult<PyColouredGraph> {
    if !(0.0..=1.0).contains(&p) || r == 0 {
        return Err(value_error("need 0 ≤ p ≤ 1 and r ≥ 1"));
    }
    Ok(PyColouredGraph { inner: random_coloured_graph(n, r, p, seed) })
}

#[pyfunction]
fn star(r: usize, n: usize) -> PyResult<PyColouredGraph> {
    Ok(PyColouredGraph { inner: star_instance(r, n, IntraColourRule::Fixed(1)).map_err(value_error)? })
}

#[pyfunction]
fn hrtm(r: usize, t: usize, m: usize) -> PyResult<PyHypergraph> {
    let spec = HrtmSpec::new(r, t, m).map_err(value_error)?;
    Ok(PyHypergraph { inner: build_hrtm(&spec).map_err(value_error)? })
}

#[pyfunction]
#[pyo3(name = "blow_up")]
fn py_blow_up(g: &PyColouredGraph, b: usize) -> PyResult<PyColouredGraph> {
    Ok(PyColouredGraph { inner: blow_up(&g.inner, b, IntraColourRule::Fixed(1)).map_err(value_error)? })
}

/// The reduced graph and the reduction trace.
#[pyfunction]
fn reduce<'py>(py: Python<'py>, h: &PyHypergraph) -> PyResult<(PyColouredGraph, Bound<'py, PyAny>)> {
    let (g, trace) = hypergraph_to_graph(&h.inner).map_err(value_error)?;
    Ok((PyColouredGraph { inner: g }, to_py(py, &trace)?))
}

#[pyfunction]
#[pyo3(name = "connectivity_hypergraph")]
fn py_connectivity_hypergraph(g: &PyColouredGraph) -> PyHypergraph {
    PyHypergraph { inner: connectivity_hypergraph(&g.inner).hypergraph }
}

/// Minimum transversal, or `None` when the node budget runs out.
#[pyfunction]
#[pyo3(signature = (h, nodes = None))]
fn transversal(h: &PyHypergraph, nodes: Option<u64>) -> Option<Vec<usize>> {
    exact_transversal(&h.inner, &budget(nodes)).solved().map(|t| t.vertices)
}

#[pyfunction]
#[pyo3(signature = (g, nodes = None))]
fn tc(g: &PyColouredGraph, nodes: Option<u64>) -> Option<usize> {
    tree_cover_number(&g.inner, &budget(nodes)).solved()
}

/// Tree-cover certificate as a dict tagged `"kind"`.
#[pyfunction]
#[pyo3(signature = (g, greedy = false, delta = "0", nodes = None))]
fn tree_cover_certificate<'py>(
    py: Python<'py>,
    g: &PyColouredGraph,
    greedy: bool,
    delta: &str,
    nodes: Option<u64>,
) -> PyResult<Option<Bound<'py, PyAny>>> {
    let mode = if greedy { CoverMode::Greedy } else { CoverMode::Exact };
    let delta = parse_rational(delta).map_err(value_error)?;
    match tree_cover(&g.inner, mode, &delta, &budget(nodes)).map_err(value_error)? {
        Outcome::Solved(c) => Ok(Some(to_py(py, &Certificate::TreeCover(c))?)),
        Outcome::Unknown { .. } => Ok(None),
    }
}

#[pyfunction]
#[pyo3(signature = (g, nodes = None))]
fn cycle_partition<'py>(py: Python<'py>, g: &PyColouredGraph, nodes: Option<u64>) -> PyResult<Option<Bound<'py, PyAny>>> {
    match exact_cycle_partition(&g.inner, &budget(nodes)).map_err(value_error)? {
        Outcome::Solved(c) => Ok(Some(to_py(py, &Certificate::CyclePartition(c))?)),
        Outcome::Unknown { .. } => Ok(None),
    }
}

/// Vertex lists of a cycle cover of the uncoloured graph.
#[pyfunction]
fn posa(g: &PyColouredGraph) -> Vec<Vec<usize>> {
    posa_cycle_cover(&g.inner.uncoloured()).into_iter().map(|c| c.vertices).collect()
}

/// Violations as `(kind, detail)` pairs; empty when the certificate checks out.
#[pyfunction]
fn verify(py: Python<'_>, g: &PyColouredGraph, certificate: &Bound<'_, PyAny>) -> PyResult<Vec<(String, String)>> {
    let cert: Certificate = from_py(py, certificate)?;
    let report = verify_certificate(&g.inner, &cert);
    Ok(report.violations.into_iter().map(|v| (v.kind.label().to_string(), v.detail)).collect())
}

#[pyfunction]
#[pyo3(signature = (r, delta, k = "1", big_k = "1"))]
fn bounds<'py>(py: Python<'py>, r: usize, delta: &str, k: &str, big_k: &str) -> PyResult<Bound<'py, PyAny>> {
    let delta = DeltaValue::parse(delta).map_err(value_error)?;
    let k = parse_rational(k).map_err(value_error)?;
    let big_k = parse_rational(big_k).map_err(value_error)?;
    to_py(py, &evaluate_bounds(r, &delta, &k, &big_k).map_err(value_error)?)
}

#[pyfunction]
#[pyo3(name = "is_expander")]
fn py_is_expander<'py>(
    py: Python<'py>,
    n: usize,
    edges: Vec<(usize, usize)>,
    eps: &str,
    t: &str,
) -> PyResult<Bound<'py, PyAny>> {
    let g = SimpleGraph::from_edges(n, edges).map_err(value_error)?;
    let params = ExpanderParams::new(parse_rational(eps).map_err(value_error)?, parse_rational(t).map_err(value_error)?)
        .map_err(value_error)?;
    to_py(py, &is_expander(&g, &params))
}

/// Checks a hub document (`params`, `a`, `b`, `x`, `hubs`).
#[pyfunction]
fn check_hubs<'py>(py: Python<'py>, g: &PyColouredGraph, document: &Bound<'_, PyAny>) -> PyResult<Bound<'py, PyAny>> {
    let doc: chroma_core::hub::HubDocument = from_py(py, document)?;
    let report = match doc.hubs.as_slice() {
        [] => return Err(value_error("hub document lists no hubs")),
        [one] => verify_hub(&g.inner, &doc.a, &doc.b, &doc.x, one, &doc.params),
        hubs => {
            let family = LinkedHubFamily { hubs: hubs.to_vec() };
            verify_linked_family(&g.inner, &doc.a, &doc.b, &doc.x, &family, &doc.params)
        }
    }
    .map_err(value_error)?;
    to_py(py, &report)
}

#[pymodule]
fn chroma(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyColouredGraph>()?;
    m.add_class::<PyHypergraph>()?;
    m.add_function(wrap_pyfunction!(random_graph, m)?)?;
    m.add_function(wrap_pyfunction!(star, m)?)?;
    m.add_function(wrap_pyfunction!(hrtm, m)?)?;
    m.add_function(wrap_pyfunction!(py_blow_up, m)?)?;
    m.add_function(wrap_pyfunction!(reduce, m)?)?;
    m.add_function(wrap_pyfunction!(py_connectivity_hypergraph, m)?)?;
    m.add_function(wrap_pyfunction!(transversal, m)?)?;
    m.add_function(wrap_pyfunction!(tc, m)?)?;
    m.add_function(wrap_pyfunction!(tree_cover_certificate, m)?)?;
    m.add_function(wrap_pyfunction!(cycle_partition, m)?)?;
    m.add_function(wrap_pyfunction!(posa, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add_function(wrap_pyfunction!(bounds, m)?)?;
    m.add_function(wrap_pyfunction!(py_is_expander, m)?)?;
    m.add_function(wrap_pyfunction!(check_hubs, m)?)?;
    Ok(())
}
