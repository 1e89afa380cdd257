//! Python bindings for `plbea`.
//!
//! Vertex sets cross the boundary as lists of selected vertex ids.

use pyo3::exceptions::{PyOSError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

use plbea::engines::{self, Algorithm, RunBudget, TrialRecord};
use plbea::error::Error;
use plbea::fitness::{self, Problem};
use plbea::generators::{self, GenSpec};
use plbea::graph::{Graph, Solution};
use plbea::oracles::{self, OracleResult};
use plbea::plb::{self, PlbParams};

fn py_err(e: Error) -> PyErr {
    match e {
        Error::Io(io) => PyOSError::new_err(io.to_string()),
        other => PyValueError::new_err(other.to_string()),
    }
}

fn problem(name: &str) -> PyResult<Problem> {
    name.parse().map_err(py_err)
}

fn solution(g: &Graph, vertices: Vec<usize>) -> PyResult<Solution> {
    if let Some(&v) = vertices.iter().find(|&&v| v >= g.n()) {
        return Err(PyValueError::new_err(format!("vertex {v} out of range for n = {}", g.n())));
    }
    Ok(Solution::from_vertices(g.n(), vertices))
}

#[pyclass(name = "Graph", frozen)]
struct PyGraph {
    inner: Graph,
}

#[pymethods]
impl PyGraph {
    #[new]
    fn new(n: usize, edges: Vec<(usize, usize)>) -> PyResult<Self> {
        Ok(PyGraph {
            inner: Graph::new(n, edges).map_err(py_err)?,
        })
    }

    #[staticmethod]
    fn path(n: usize) -> Self {
        PyGraph { inner: Graph::path(n) }
    }

    #[staticmethod]
    fn cycle(n: usize) -> Self {
        PyGraph { inner: Graph::cycle(n) }
    }

    #[staticmethod]
    fn complete(n: usize) -> Self {
        PyGraph { inner: Graph::complete(n) }
    }

    #[staticmethod]
    fn star(leaves: usize) -> Self {
        PyGraph { inner: Graph::star(leaves) }
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Ok(PyGraph {
            inner: Graph::from_json(text).map_err(py_err)?,
        })
    }

    #[staticmethod]
    fn from_edge_list(text: &str) -> PyResult<Self> {
        Ok(PyGraph {
            inner: generators::parse_edge_list(text).map_err(py_err)?,
        })
    }

    #[staticmethod]
    fn load(path: &str) -> PyResult<Self> {
        Ok(PyGraph {
            inner: generators::load_graph(path).map_err(py_err)?,
        })
    }

    fn to_json(&self) -> String {
        self.inner.to_json()
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    #[getter]
    fn m(&self) -> usize {
        self.inner.m()
    }

    fn edges(&self) -> Vec<(usize, usize)> {
        self.inner.edges().to_vec()
    }

    fn neighbors(&self, v: usize) -> PyResult<Vec<usize>> {
        self.inner.degree(v).map_err(py_err)?;
        Ok(self.inner.neighbors(v).to_vec())
    }

    fn degrees(&self) -> Vec<usize> {
        self.inner.degrees().collect()
    }

    fn max_degree(&self) -> usize {
        self.inner.max_degree()
    }

    fn is_connected(&self) -> bool {
        self.inner.is_connected()
    }

    fn __len__(&self) -> usize {
        self.inner.n()
    }

    fn __repr__(&self) -> String {
        format!("Graph(n={}, m={})", self.inner.n(), self.inner.m())
    }
}

#[pyfunction]
#[pyo3(signature = (n, attach_m = 2, seed = 0))]
fn preferential_attachment(n: usize, attach_m: usize, seed: u64) -> PyResult<PyGraph> {
    Ok(PyGraph {
        inner: generators::generate(&GenSpec::pa(n, attach_m, seed)).map_err(py_err)?,
    })
}

#[pyfunction]
#[pyo3(signature = (n, beta = 2.5, seed = 0))]
fn chung_lu(n: usize, beta: f64, seed: u64) -> PyResult<PyGraph> {
    Ok(PyGraph {
        inner: generators::generate(&GenSpec::chung_lu(n, beta, seed)).map_err(py_err)?,
    })
}

#[pyfunction]
fn scalar_fitness(g: PyRef<'_, PyGraph>, vertices: Vec<usize>, problem_name: &str) -> PyResult<i64> {
    let x = solution(&g.inner, vertices)?;
    fitness::scalar(&g.inner, &x, problem(problem_name)?).map_err(py_err)
}

#[pyfunction]
fn bi_objective(g: PyRef<'_, PyGraph>, vertices: Vec<usize>, problem_name: &str) -> PyResult<(i64, i64)> {
    let x = solution(&g.inner, vertices)?;
    let v = fitness::bi_objective(&g.inner, &x, problem(problem_name)?).map_err(py_err)?;
    Ok((v.0, v.1))
}

#[pyfunction]
fn is_feasible(g: PyRef<'_, PyGraph>, vertices: Vec<usize>, problem_name: &str) -> PyResult<bool> {
    let x = solution(&g.inner, vertices)?;
    fitness::is_feasible(&g.inner, &x, problem(problem_name)?).map_err(py_err)
}

fn record_dict<'py>(py: Python<'py>, rec: &TrialRecord) -> PyResult<Bound<'py, PyDict>> {
    let d = PyDict::new(py);
    d.set_item("seed", rec.seed)?;
    d.set_item("problem", rec.problem.name())?;
    d.set_item("algorithm", rec.algorithm.name())?;
    d.set_item("n", rec.n)?;
    d.set_item("m", rec.m)?;
    d.set_item("evals_to_feasible", rec.evals_to_feasible)?;
    d.set_item("evals_total", rec.evals_total)?;
    d.set_item("best_feasible_size", rec.best_feasible_size)?;
    d.set_item("first_feasible_size", rec.first_feasible_size)?;
    d.set_item("final_solution", rec.final_solution.iter_ones().collect::<Vec<_>>())?;
    let front: Vec<((i64, i64), usize, bool)> = rec
        .archive_snapshot
        .iter()
        .map(|p| ((p.objectives.0, p.objectives.1), p.size, p.feasible))
        .collect();
    d.set_item("archive", front)?;
    d.set_item("wall_time_ms", rec.wall_time_ms)?;
    Ok(d)
}

fn run<'py>(
    py: Python<'py>,
    g: &Graph,
    problem_name: &str,
    algorithm: Algorithm,
    max_evals: Option<u64>,
    seed: u64,
    target: Option<usize>,
) -> PyResult<Bound<'py, PyDict>> {
    let p = problem(problem_name)?;
    let mut budget = max_evals.map_or_else(|| RunBudget::default_for(g.n(), p, algorithm), RunBudget::evaluations);
    budget.target = target;
    let rec = py
        .detach(|| engines::run_trial(g, p, algorithm, &budget, seed))
        .map_err(py_err)?;
    record_dict(py, &rec)
}

/// Runs the (1+1) EA once. `max_evals` defaults to the problem's standard
/// budget.
#[pyfunction]
#[pyo3(signature = (g, problem, max_evals = None, seed = 0, target = None))]
fn one_plus_one_ea<'py>(
    py: Python<'py>,
    g: PyRef<'_, PyGraph>,
    problem: &str,
    max_evals: Option<u64>,
    seed: u64,
    target: Option<usize>,
) -> PyResult<Bound<'py, PyDict>> {
    run(py, &g.inner, problem, Algorithm::Ea, max_evals, seed, target)
}

#[pyfunction]
#[pyo3(signature = (g, problem, max_evals = None, seed = 0, target = None))]
fn gsemo<'py>(
    py: Python<'py>,
    g: PyRef<'_, PyGraph>,
    problem: &str,
    max_evals: Option<u64>,
    seed: u64,
    target: Option<usize>,
) -> PyResult<Bound<'py, PyDict>> {
    run(py, &g.inner, problem, Algorithm::Gsemo, max_evals, seed, target)
}

fn oracle_dict<'py>(py: Python<'py>, r: &OracleResult) -> PyResult<Bound<'py, PyDict>> {
    let d = PyDict::new(py);
    d.set_item("problem", r.problem.name())?;
    d.set_item("optimum_size", r.optimum_size)?;
    d.set_item("witness", r.witness.iter_ones().collect::<Vec<_>>())?;
    d.set_item("method", format!("{:?}", r.method).to_lowercase())?;
    let trace: Vec<(usize, usize)> = r.sequence_trace.iter().map(|s| (s.vertex, s.residual)).collect();
    d.set_item("trace", trace)?;
    Ok(d)
}

#[pyfunction]
#[pyo3(signature = (g, problem, limit = oracles::DEFAULT_EXACT_LIMIT))]
fn exact_solve<'py>(
    py: Python<'py>,
    g: PyRef<'_, PyGraph>,
    problem: &str,
    limit: usize,
) -> PyResult<Bound<'py, PyDict>> {
    let p = self::problem(problem)?;
    let graph = &g.inner;
    let r = py.detach(|| oracles::exact_solve(graph, p, limit)).map_err(py_err)?;
    oracle_dict(py, &r)
}

#[pyfunction]
fn greedy<'py>(py: Python<'py>, g: PyRef<'_, PyGraph>, problem: &str) -> PyResult<Bound<'py, PyDict>> {
    let r = oracles::greedy(&g.inner, self::problem(problem)?).map_err(py_err)?;
    oracle_dict(py, &r)
}

#[pyfunction]
fn size_bounds(g: PyRef<'_, PyGraph>, problem: &str) -> PyResult<(usize, usize)> {
    let b = oracles::size_bounds(&g.inner, self::problem(problem)?).map_err(py_err)?;
    Ok((b.lower, b.upper))
}

/// Returns `(is_optimum, move)` where `move` is `(removed, added)` or None.
#[pyfunction]
#[allow(clippy::type_complexity)]
fn is_3_local_optimum(
    g: PyRef<'_, PyGraph>,
    vertices: Vec<usize>,
) -> PyResult<(bool, Option<(Vec<usize>, Vec<usize>)>)> {
    let x = solution(&g.inner, vertices)?;
    let r = oracles::is_3_local_optimum(&g.inner, &x).map_err(py_err)?;
    Ok((r.is_local_optimum, r.improving_move.map(|m| (m.remove, m.add))))
}

#[pyfunction]
fn fit_c1(g: PyRef<'_, PyGraph>, beta: f64, t: f64) -> PyResult<f64> {
    plb::fit_c1(&g.inner, beta, t).map_err(py_err)
}

#[pyfunction]
fn check_plb(g: PyRef<'_, PyGraph>, beta: f64, t: f64, c1: f64) -> PyResult<bool> {
    let params = PlbParams::new(beta, t, c1).map_err(py_err)?;
    Ok(plb::check_plb(&g.inner, &params).map_err(py_err)?.holds)
}

#[pyfunction]
fn constants_ab(beta: f64, t: f64, c1: f64) -> PyResult<(f64, f64)> {
    let params = PlbParams::new(beta, t, c1).map_err(py_err)?;
    let ab = plb::constants_ab(&params).map_err(py_err)?;
    Ok((ab.a, ab.b))
}

#[pyfunction]
fn ratio_bounds<'py>(py: Python<'py>, beta: f64, t: f64, c1: f64) -> PyResult<Bound<'py, PyDict>> {
    let params = PlbParams::new(beta, t, c1).map_err(py_err)?;
    let r = plb::ratio_bounds(&params).map_err(py_err)?;
    let d = PyDict::new(py);
    for (key, value) in [
        ("mds_ea", r.mds_ea),
        ("mds_gsemo", r.mds_gsemo),
        ("mvc_ea", r.mvc_ea),
        ("mvc_gsemo", r.mvc_gsemo),
        ("cds_ea", r.cds_ea),
        ("cds_gsemo", r.cds_gsemo),
        ("mis_ea", r.mis_ea),
        ("mis_gsemo", r.mis_gsemo),
    ] {
        d.set_item(key, value)?;
    }
    Ok(d)
}

#[pymodule]
fn pyplbea(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyGraph>()?;
    m.add_function(wrap_pyfunction!(preferential_attachment, m)?)?;
    m.add_function(wrap_pyfunction!(chung_lu, m)?)?;
    m.add_function(wrap_pyfunction!(scalar_fitness, m)?)?;
    m.add_function(wrap_pyfunction!(bi_objective, m)?)?;
    m.add_function(wrap_pyfunction!(is_feasible, m)?)?;
    m.add_function(wrap_pyfunction!(one_plus_one_ea, m)?)?;
    m.add_function(wrap_pyfunction!(gsemo, m)?)?;
    m.add_function(wrap_pyfunction!(exact_solve, m)?)?;
    m.add_function(wrap_pyfunction!(greedy, m)?)?;
    m.add_function(wrap_pyfunction!(size_bounds, m)?)?;
    m.add_function(wrap_pyfunction!(is_3_local_optimum, m)?)?;
    m.add_function(wrap_pyfunction!(fit_c1, m)?)?;
    m.add_function(wrap_pyfunction!(check_plb, m)?)?;
    m.add_function(wrap_pyfunction!(constants_ab, m)?)?;
    m.add_function(wrap_pyfunction!(ratio_bounds, m)?)?;
    Ok(())
}
