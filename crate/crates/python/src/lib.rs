//! Python bindings: presentations, the graded checks, Squier slices,
//! finite monoids with their Cayley complexes, and the CLI driver.

use std::path::PathBuf;

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use serde::Serialize;

use relbimod::cayley::{self, Enumeration, Side};
use relbimod::cli::{self, Command, RunConfig};
use relbimod::graded;
use relbimod::linalg::{smith_invariants as smith, ZMatrix};
use relbimod::presentation::{monoid_to_algebra, parse_presentation, AlgebraPresentation, MonoidPresentation};
use relbimod::{squier, Z};

fn err(e: relbimod::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// Hands a serializable value to Python as plain dicts and lists.
fn to_py<T: Serialize>(py: Python<'_>, v: &T) -> PyResult<Py<PyAny>> {
    let s = serde_json::to_string(v).map_err(|e| PyValueError::new_err(e.to_string()))?;
    Ok(py.import("json")?.call_method1("loads", (s,))?.unbind())
}

#[pyclass(name = "Presentation", frozen)]
struct PyPresentation {
    inner: relbimod::Presentation,
}

impl PyPresentation {
    fn monoid(&self) -> PyResult<&MonoidPresentation> {
        match &self.inner {
            relbimod::Presentation::Monoid(m) => Ok(m),
            _ => Err(PyValueError::new_err("a monoid presentation is required")),
        }
    }

    fn algebra(&self) -> AlgebraPresentation {
        match &self.inner {
            relbimod::Presentation::Algebra(a) => a.clone(),
            relbimod::Presentation::Monoid(m) => monoid_to_algebra(m),
        }
    }
}

#[pymethods]
impl PyPresentation {
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        Ok(Self { inner: parse_presentation(text).map_err(err)? })
    }

    #[staticmethod]
    fn from_file(path: PathBuf) -> PyResult<Self> {
        let text = std::fs::read_to_string(&path).map_err(|e| PyValueError::new_err(e.to_string()))?;
        Self::parse(&text)
    }

    #[getter]
    fn kind(&self) -> &'static str {
        self.inner.kind()
    }

    #[getter]
    fn generators(&self) -> Vec<String> {
        self.inner.alphabet().names().to_vec()
    }

    #[getter]
    fn homogeneity(&self) -> &'static str {
        self.inner.homogeneity().label()
    }

    fn info(&self, py: Python<'_>) -> PyResult<Py<PyAny>> {
        to_py(py, &relbimod::report::PresentationInfo::new(&self.inner))
    }

    fn to_source(&self) -> String {
        self.inner.to_source()
    }

    fn __repr__(&self) -> String {
        format!("Presentation({} on {})", self.inner.kind(), self.inner.alphabet().names().join(" "))
    }
}

/// Degree components of a graded presentation up to `max_degree`.
#[pyclass(name = "GradedContext", frozen)]
struct PyGradedContext {
    inner: graded::GradedContext,
}

#[pymethods]
impl PyGradedContext {
    #[new]
    fn new(p: &PyPresentation, max_degree: usize) -> PyResult<Self> {
        Ok(Self { inner: graded::GradedContext::new(&p.algebra(), max_degree).map_err(err)? })
    }

    #[getter]
    fn max_degree(&self) -> usize {
        self.inner.max_degree()
    }

    fn algebra_dim(&self, d: usize) -> PyResult<usize> {
        Ok(self.inner.algebra_component(d).map_err(err)?.0)
    }

    fn pi2_dim(&self, d: usize) -> PyResult<usize> {
        Ok(self.inner.pi2_component(d).map_err(err)?.dim)
    }

    fn degree_report(&self, py: Python<'_>, d: usize) -> PyResult<Py<PyAny>> {
        to_py(py, &self.inner.degree_report(d).map_err(err)?)
    }

    fn reports(&self, py: Python<'_>) -> PyResult<Py<PyAny>> {
        to_py(py, &self.inner.reports().map_err(err)?)
    }
}

#[pyclass(name = "FiniteMonoid", frozen)]
struct PyFiniteMonoid {
    inner: cayley::FiniteMonoid,
    pres: MonoidPresentation,
}

#[pymethods]
impl PyFiniteMonoid {
    #[getter]
    fn size(&self) -> usize {
        self.inner.size()
    }

    #[getter]
    fn elements(&self) -> Vec<String> {
        self.inner.elements.iter().map(|w| self.pres.alphabet().format_word(w)).collect()
    }

    #[getter]
    fn table(&self) -> Vec<Vec<usize>> {
        self.inner.table.clone()
    }

    fn mul(&self, a: usize, b: usize) -> PyResult<usize> {
        let n = self.inner.size();
        if a >= n || b >= n {
            return Err(PyValueError::new_err("element index out of range"));
        }
        Ok(self.inner.mul(a, b))
    }

    /// Element index of a space-separated word.
    fn eval(&self, word: &str) -> PyResult<usize> {
        Ok(self.inner.eval(&self.pres.alphabet().parse_word(word).map_err(err)?))
    }

    /// Left (`"left"`) or two-sided (`"two_sided"`) Cayley complex report.
    fn cayley_report(&self, py: Python<'_>, side: &str) -> PyResult<Py<PyAny>> {
        let side = match side {
            "left" => Side::Left,
            "two_sided" => Side::TwoSided,
            _ => return Err(PyValueError::new_err("side must be 'left' or 'two_sided'")),
        };
        let c = cayley::build_cayley(&self.inner, &self.pres, side).map_err(err)?;
        to_py(py, &cayley::cayley_homology_check(&self.inner, &c).map_err(err)?)
    }
}

/// Finite monoid by bounded enumeration, or `None` when it does not stabilize.
#[pyfunction]
#[pyo3(signature = (p, max_length = 8))]
fn enumerate_monoid(p: &PyPresentation, max_length: usize) -> PyResult<Option<PyFiniteMonoid>> {
    let m = p.monoid()?;
    Ok(match cayley::enumerate_finite_monoid(m, max_length) {
        Enumeration::Stabilized(inner) => Some(PyFiniteMonoid { inner, pres: m.clone() }),
        Enumeration::NotStabilized { .. } => None,
    })
}

#[pyfunction]
fn monoid_from_table(p: &PyPresentation, text: &str) -> PyResult<PyFiniteMonoid> {
    let m = p.monoid()?;
    Ok(PyFiniteMonoid { inner: cayley::parse_table(text, m).map_err(err)?, pres: m.clone() })
}

/// `(betti, torsion)` of the length-`n` Squier slice.
#[pyfunction]
fn squier_h1(p: &PyPresentation, n: usize) -> PyResult<(usize, Vec<Z>)> {
    let h = squier::slice_h1_total(p.monoid()?, n).map_err(err)?;
    Ok((h.betti, h.torsion))
}

#[pyfunction]
fn edge_embedding_check(py: Python<'_>, p: &PyPresentation, max_length: usize) -> PyResult<Py<PyAny>> {
    to_py(py, &squier::edge_embedding_check(p.monoid()?, max_length).map_err(err)?)
}

#[pyfunction]
fn mu_kernel_check(py: Python<'_>, alphabet_size: usize, degree: usize) -> PyResult<Py<PyAny>> {
    to_py(py, &graded::mu_kernel_freeness_check(alphabet_size, degree))
}

/// Invariant factors of an integer matrix given as a list of rows.
#[pyfunction]
fn smith_invariants(rows: Vec<Vec<Z>>) -> PyResult<Vec<Z>> {
    let cols = rows.first().map_or(0, Vec::len);
    if rows.iter().any(|r| r.len() != cols) {
        return Err(PyValueError::new_err("rows must have equal length"));
    }
    let n = rows.len();
    let mut t = Vec::new();
    for (i, row) in rows.into_iter().enumerate() {
        for (j, v) in row.into_iter().enumerate() {
            if v != Z::ZERO {
                t.push((i, j, v));
            }
        }
    }
    let m = ZMatrix::from_triplets(n, cols, t).map_err(err)?;
    Ok(smith(&m).invariant_factors)
}

/// Runs the CLI driver; returns `(output, exit_code)`.
#[pyfunction]
#[pyo3(signature = (input, command = "all", max_degree = 8, max_length = 8, json = true, table = None))]
fn run_cli(
    input: PathBuf,
    command: &str,
    max_degree: usize,
    max_length: usize,
    json: bool,
    table: Option<PathBuf>,
) -> PyResult<(String, i32)> {
    let command = match command {
        "graded" => Command::Graded,
        "squier" => Command::Squier,
        "cayley" => Command::Cayley,
        "all" => Command::All,
        _ => return Err(PyValueError::new_err("command must be graded, squier, cayley or all")),
    };
    Ok(cli::run(&RunConfig { input, command, max_degree, max_length, json, table }))
}

#[pymodule]
fn pyrelbimod(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyPresentation>()?;
    m.add_class::<PyGradedContext>()?;
    m.add_class::<PyFiniteMonoid>()?;
    m.add_function(wrap_pyfunction!(enumerate_monoid, m)?)?;
    m.add_function(wrap_pyfunction!(monoid_from_table, m)?)?;
    m.add_function(wrap_pyfunction!(squier_h1, m)?)?;
    m.add_function(wrap_pyfunction!(edge_embedding_check, m)?)?;
    m.add_function(wrap_pyfunction!(mu_kernel_check, m)?)?;
    m.add_function(wrap_pyfunction!(smith_invariants, m)?)?;
    m.add_function(wrap_pyfunction!(run_cli, m)?)?;
    Ok(())
}
