//! Python bindings for the surfcut solver.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use surfcut_core::balance::{format_rational, parse_rational, rat_int};
use surfcut_core::{self as core, BalanceFunction, Objective};

fn value_error(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// A multigraph with a rotation system.
#[pyclass(frozen, module = "surfcut")]
struct EmbeddedGraph {
    inner: core::EmbeddedGraph,
}

#[pymethods]
impl EmbeddedGraph {
    /// Builds from edge endpoints and one counterclockwise dart list per vertex.
    #[new]
    fn new(n: usize, edges: Vec<(usize, usize)>, rotations: Vec<Vec<usize>>) -> PyResult<Self> {
        let inner = core::EmbeddedGraph::new(n, &edges, &rotations).map_err(value_error)?;
        Ok(EmbeddedGraph { inner })
    }

    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        let inner = core::parse_embedding(text).map_err(value_error)?;
        Ok(EmbeddedGraph { inner })
    }

    #[staticmethod]
    fn from_file(path: std::path::PathBuf) -> PyResult<Self> {
        let text = std::fs::read_to_string(&path).map_err(value_error)?;
        Self::parse(&text)
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.vertex_count()
    }

    #[getter]
    fn m(&self) -> usize {
        self.inner.edge_count()
    }

    #[getter]
    fn genus(&self) -> PyResult<usize> {
        self.inner.genus().map_err(value_error)
    }

    #[getter]
    fn face_count(&self) -> usize {
        self.inner.trace_faces().face_count()
    }

    fn edges(&self) -> Vec<(usize, usize)> {
        self.inner.edges()
    }

    fn rotations(&self) -> Vec<Vec<usize>> {
        self.inner.rotations()
    }

    /// Darts of each face in traversal order.
    fn faces(&self) -> Vec<Vec<usize>> {
        self.inner.trace_faces().facial_walks
    }

    fn mirror(&self) -> Self {
        EmbeddedGraph {
            inner: self.inner.mirror(),
        }
    }

    fn to_text(&self) -> String {
        self.inner.to_text()
    }

    fn __repr__(&self) -> String {
        format!(
            "EmbeddedGraph(n={}, m={}, faces={})",
            self.n(),
            self.m(),
            self.face_count()
        )
    }
}

/// An optimal or enumerated cut. Rationals are `p/q` strings.
#[pyclass(frozen, get_all, module = "surfcut")]
struct CutResult {
    side: Vec<usize>,
    cut_edges: Vec<usize>,
    cut_size: u64,
    value: String,
    balance: String,
    expansion: String,
}

#[pymethods]
impl CutResult {
    fn __repr__(&self) -> String {
        format!(
            "CutResult(value={}, cut_size={}, balance={}, side={:?})",
            self.value, self.cut_size, self.balance, self.side
        )
    }
}

impl From<core::CutResult> for CutResult {
    fn from(c: core::CutResult) -> Self {
        CutResult {
            value: match &c.value {
                Objective::Finite(r) => format_rational(r),
                Objective::Infinite => "inf".to_string(),
            },
            balance: format_rational(&c.balance),
            expansion: format_rational(&c.expansion),
            side: c.side,
            cut_edges: c.cut_edges,
            cut_size: c.cut_size,
        }
    }
}

/// `f` is a built-in name or a list of `(x, y)` breakpoints given as strings
/// such as `"1/3"` or as integers.
#[derive(FromPyObject)]
enum FSpec {
    Name(String),
    Points(Vec<(String, String)>),
}

fn balance(f: FSpec) -> PyResult<BalanceFunction> {
    match f {
        FSpec::Name(name) => BalanceFunction::from_name(&name).map_err(value_error),
        FSpec::Points(points) => {
            let parsed = points
                .iter()
                .map(|(x, y)| match (parse_rational(x), parse_rational(y)) {
                    (Some(x), Some(y)) => Ok((x, y)),
                    _ => Err(value_error(format!("bad breakpoint ({x}, {y})"))),
                })
                .collect::<PyResult<Vec<_>>>()?;
            BalanceFunction::custom(parsed).map_err(value_error)
        }
    }
}

/// Exact f-sparsest cut.
#[pyfunction]
#[pyo3(signature = (graph, f = FSpec::Name("quotient".into()), root = 0))]
fn solve(py: Python<'_>, graph: &EmbeddedGraph, f: FSpec, root: usize) -> PyResult<CutResult> {
    let f = balance(f)?;
    let g = graph.inner.clone();
    let cut = py
        .detach(move || core::solve(&g, &f, root))
        .map_err(value_error)?;
    Ok(cut.into())
}

/// Exhaustive search over all cuts (at most 16 vertices).
#[pyfunction]
#[pyo3(signature = (graph, f = FSpec::Name("quotient".into())))]
fn brute_force(py: Python<'_>, graph: &EmbeddedGraph, f: FSpec) -> PyResult<CutResult> {
    let f = balance(f)?;
    let g = graph.inner.clone();
    let report = py
        .detach(move || core::brute_force_cut(&g, &f))
        .map_err(value_error)?;
    Ok(report.best.into())
}

/// `f(x)` as a `p/q` string.
#[pyfunction]
fn evaluate_balance(f: FSpec, x: &str) -> PyResult<String> {
    let f = balance(f)?;
    let x = parse_rational(x).ok_or_else(|| value_error(format!("bad rational {x}")))?;
    if x < rat_int(0) || x > rat_int(1) {
        return Err(value_error("x must lie in [0, 1]"));
    }
    Ok(format_rational(&f.eval(&x)))
}

#[pymodule]
fn surfcut(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<EmbeddedGraph>()?;
    m.add_class::<CutResult>()?;
    m.add_function(wrap_pyfunction!(solve, m)?)?;
    m.add_function(wrap_pyfunction!(brute_force, m)?)?;
    m.add_function(wrap_pyfunction!(evaluate_balance, m)?)?;
    Ok(())
}
