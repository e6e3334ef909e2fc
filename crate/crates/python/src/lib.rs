use std::collections::{BTreeMap, HashMap};

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use serde_json::{json, Value};

use chipgraph::divisor::{self as div, DivisorJson, DEFAULT_CLASS_CAP};
use chipgraph::gonality::{self, Decision, Mode, SearchOptions, DEFAULT_BUDGET};
use chipgraph::hurwitz::{self, PartitionSet, RhGenus};
use chipgraph::hyperelliptic;
use chipgraph::{Divisor, DivisorTheory, IndexedMorphism, WeightedGraph};

fn err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn to_py(py: Python<'_>, v: &Value) -> PyResult<PyObject> {
    let json = py.import_bound("json")?;
    Ok(json.call_method1("loads", (v.to_string(),))?.unbind())
}

/// A weighted multigraph with optional legs.
#[pyclass(name = "Graph", module = "chipgraph_py")]
#[derive(Clone)]
struct PyGraph {
    inner: WeightedGraph,
}

#[pymethods]
impl PyGraph {
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        WeightedGraph::from_json_str(text).map(|inner| PyGraph { inner }).map_err(err)
    }

    /// Named test graph such as `"pdx"`, `"B3"` or `"B3w01"`.
    #[staticmethod]
    fn fixture(name: &str) -> PyResult<Self> {
        chipgraph::fixtures::by_name(name)
            .map(|inner| PyGraph { inner })
            .ok_or_else(|| PyValueError::new_err(format!("unknown fixture `{name}`")))
    }

    fn to_json(&self) -> String {
        self.inner.to_json_string()
    }

    #[getter]
    fn genus(&self) -> u32 {
        self.inner.genus()
    }

    #[getter]
    fn vertices(&self) -> Vec<(String, u32)> {
        self.inner.vertices().iter().map(|v| (v.id.clone(), v.weight)).collect()
    }

    #[getter]
    fn edges(&self) -> Vec<(String, String, String)> {
        self.inner
            .edges()
            .iter()
            .map(|e| (e.id.clone(), self.inner.vertex_id(e.ends[0]).into(), self.inner.vertex_id(e.ends[1]).into()))
            .collect()
    }

    fn is_stable(&self) -> bool {
        self.inner.is_stable()
    }

    fn bridges(&self) -> Vec<String> {
        self.inner.bridges().into_iter().map(|e| self.inner.edges()[e].id.clone()).collect()
    }

    fn loopless_model(&self) -> Self {
        PyGraph { inner: self.inner.loopless_model() }
    }

    fn weightless_model(&self) -> Self {
        PyGraph { inner: self.inner.weightless_model() }
    }

    fn stabilize(&self) -> PyResult<Self> {
        self.inner.stabilize().map(|inner| PyGraph { inner }).map_err(err)
    }

    fn contract_bridges(&self) -> PyResult<Self> {
        self.inner.contract_bridges().map(|inner| PyGraph { inner }).map_err(err)
    }

    /// `plan` maps edge ids to the number of pieces; other edges stay whole.
    fn refine(&self, plan: BTreeMap<String, u32>) -> PyResult<Self> {
        self.inner.refine_by_id(&plan).map(|inner| PyGraph { inner }).map_err(err)
    }

    fn isomorphic(&self, other: &PyGraph) -> bool {
        chipgraph::are_isomorphic(&self.inner, &other.inner)
    }

    fn __repr__(&self) -> String {
        format!(
            "Graph(genus={}, vertices={}, edges={})",
            self.inner.genus(),
            self.inner.vertex_count(),
            self.inner.edge_count()
        )
    }
}

/// An indexed morphism in the JSON wire format.
#[pyclass(name = "Morphism", module = "chipgraph_py")]
struct PyMorphism {
    inner: IndexedMorphism,
}

#[pymethods]
impl PyMorphism {
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        IndexedMorphism::from_json_str(text).map(|inner| PyMorphism { inner }).map_err(err)
    }

    fn to_json(&self) -> String {
        serde_json::to_string(&self.inner.to_json()).expect("morphism serializes")
    }

    fn degree(&self) -> PyResult<u32> {
        self.inner.degree().map_err(err)
    }

    fn is_harmonic(&self) -> PyResult<bool> {
        Ok(self.inner.check_harmonic().map_err(err)?.0)
    }

    fn ramification(&self) -> PyResult<BTreeMap<String, i64>> {
        Ok(self.inner.ramification_divisor().map_err(err)?.to_map(self.inner.source()))
    }

    #[getter]
    fn source(&self) -> PyGraph {
        PyGraph { inner: self.inner.source().clone() }
    }

    #[getter]
    fn target(&self) -> PyGraph {
        PyGraph { inner: self.inner.target().clone() }
    }
}

/// Coefficients may name vertices of the graph or of its weightless model.
fn divisor(g: &WeightedGraph, coeffs: HashMap<String, i64>) -> PyResult<Divisor> {
    let doc = DivisorJson { graph: None, coeffs: coeffs.into_iter().collect() };
    doc.to_divisor(g).or_else(|first| doc.to_divisor(&g.weightless_model()).map_err(|_| err(first)))
}

#[pyfunction]
fn rank(graph: &PyGraph, coeffs: HashMap<String, i64>) -> PyResult<i64> {
    let d = divisor(&graph.inner, coeffs)?;
    DivisorTheory::new(&graph.inner).rank(&d).map_err(err)
}

#[pyfunction]
fn is_equivalent(graph: &PyGraph, a: HashMap<String, i64>, b: HashMap<String, i64>) -> PyResult<bool> {
    let (a, b) = (divisor(&graph.inner, a)?, divisor(&graph.inner, b)?);
    DivisorTheory::new(&graph.inner).is_equivalent(&a, &b).map_err(err)
}

/// Reduced representative on the weightless model, relative to its first vertex.
#[pyfunction]
fn reduce(graph: &PyGraph, coeffs: HashMap<String, i64>) -> PyResult<BTreeMap<String, i64>> {
    let t = DivisorTheory::new(&graph.inner);
    let d = t.reduced(&divisor(&graph.inner, coeffs)?).map_err(err)?;
    Ok(d.to_map(t.model()))
}

#[pyfunction]
fn jacobian_order(graph: &PyGraph) -> u128 {
    div::jacobian_order(&graph.inner)
}

#[pyfunction]
fn w_r_d(graph: &PyGraph, d: i64, r: i64) -> PyResult<Vec<BTreeMap<String, i64>>> {
    let mut t = DivisorTheory::new(&graph.inner);
    let classes = t.w_r_d(d, r, DEFAULT_CLASS_CAP).map_err(err)?;
    Ok(classes.iter().map(|c| c.representative.to_map(t.model())).collect())
}

#[pyfunction]
fn is_divisorially_gonal(graph: &PyGraph, d: usize) -> PyResult<(bool, Option<BTreeMap<String, i64>>)> {
    let (found, w) = div::is_divisorially_gonal(&graph.inner, d).map_err(err)?;
    let model = graph.inner.weightless_model();
    Ok((found, w.map(|w| w.to_map(&model))))
}

/// Returns `(decision, witness)` with decision one of `"found"`,
/// `"not_found"`, `"inconclusive"`.
#[pyfunction]
#[pyo3(signature = (graph, d, mode = "harmonic", hurwitz = false, budget = DEFAULT_BUDGET))]
fn find_harmonic_to_tree(
    graph: &PyGraph,
    d: u32,
    mode: &str,
    hurwitz: bool,
    budget: u64,
) -> PyResult<(String, Option<PyMorphism>)> {
    let mode = match mode {
        "harmonic" => Mode::Harmonic,
        "pseudo" => Mode::PseudoHarmonic,
        other => return Err(PyValueError::new_err(format!("unknown mode `{other}`"))),
    };
    let report = gonality::find_harmonic_to_tree(&graph.inner, d, SearchOptions { mode, hurwitz, budget }).map_err(err)?;
    let decision = match report.decision {
        Decision::Found => "found",
        Decision::NotFound => "not_found",
        Decision::Inconclusive => "inconclusive",
    };
    Ok((decision.into(), report.witness.map(|inner| PyMorphism { inner })))
}

/// `None` when the search budget runs out.
#[pyfunction]
fn is_geometrically_gonal(graph: &PyGraph, d: u32) -> PyResult<Option<bool>> {
    gonality::is_geometrically_gonal(&graph.inner, d).map_err(err)
}

/// Realizing permutations in cycle notation, or `None`.
#[pyfunction]
fn is_hurwitz_type(d: u32, partitions: Vec<Vec<u32>>) -> PyResult<Option<Vec<String>>> {
    let p = PartitionSet::new(d, partitions).map_err(err)?;
    Ok(hurwitz::is_hurwitz_type(&p).map_err(err)?.map(|w| w.to_strings()))
}

/// Genus from the Riemann-Hurwitz count, `None` when it is not a
/// non-negative integer.
#[pyfunction]
fn rh_genus(d: u32, partitions: Vec<Vec<u32>>) -> PyResult<Option<u64>> {
    let p = PartitionSet::new(d, partitions).map_err(err)?;
    Ok(match p.rh_genus() {
        RhGenus::Genus(g) => Some(g),
        _ => None,
    })
}

#[pyfunction]
fn is_hyperelliptic(graph: &PyGraph) -> PyResult<bool> {
    Ok(hyperelliptic::is_hyperelliptic(&graph.inner).map_err(err)?.hyperelliptic)
}

#[pyfunction]
fn curve_locus(py: Python<'_>, graph: &PyGraph) -> PyResult<PyObject> {
    let r = hyperelliptic::stable_curve_hyperelliptic_locus(&graph.inner).map_err(err)?;
    to_py(
        py,
        &json!({
            "in_locus": r.in_locus,
            "hyperelliptic": r.hyperelliptic,
            "bridge_violations": r.bridge_violations,
            "two_gonal": r.two_gonal,
            "comparable": r.comparable,
        }),
    )
}

#[pyfunction]
fn stable_graphs(genus: u32) -> PyResult<Vec<PyGraph>> {
    if genus < 2 {
        return Err(PyValueError::new_err("stable graphs need genus at least 2"));
    }
    Ok(chipgraph::corpus::stable_graphs(genus).into_iter().map(|inner| PyGraph { inner }).collect())
}

/// Runs the command-line front end; returns `(exit_code, stdout)`.
#[pyfunction]
fn run_cli(args: Vec<String>) -> (i32, String) {
    let out = chipgraph::cli::run(std::iter::once("chipgraph".to_string()).chain(args));
    (out.code, out.stdout)
}

#[pymodule]
fn chipgraph_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyGraph>()?;
    m.add_class::<PyMorphism>()?;
    m.add_function(wrap_pyfunction!(rank, m)?)?;
    m.add_function(wrap_pyfunction!(is_equivalent, m)?)?;
    m.add_function(wrap_pyfunction!(reduce, m)?)?;
    m.add_function(wrap_pyfunction!(jacobian_order, m)?)?;
    m.add_function(wrap_pyfunction!(w_r_d, m)?)?;
    m.add_function(wrap_pyfunction!(is_divisorially_gonal, m)?)?;
    m.add_function(wrap_pyfunction!(find_harmonic_to_tree, m)?)?;
    m.add_function(wrap_pyfunction!(is_geometrically_gonal, m)?)?;
    m.add_function(wrap_pyfunction!(is_hurwitz_type, m)?)?;
    m.add_function(wrap_pyfunction!(rh_genus, m)?)?;
    m.add_function(wrap_pyfunction!(is_hyperelliptic, m)?)?;
    m.add_function(wrap_pyfunction!(curve_locus, m)?)?;
    m.add_function(wrap_pyfunction!(stable_graphs, m)?)?;
    m.add_function(wrap_pyfunction!(run_cli, m)?)?;
    Ok(())
}
