use num_complex::Complex64;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use propmap_core::ballmap::{canonical_form, properness_certificate, BallMapError, MonomialBallMap, Signature};
use propmap_core::catalog;
use propmap_core::classify::{self, HarnessBounds, Lemma, SearchLimits};
use propmap_core::exactnum::{parse_rational, Rational};
use propmap_core::induce::{self, SymbolicMatrixMap};
use propmap_core::numverify;

fn value_error(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// Hands a report to Python as plain dicts and lists.
fn to_py<'py>(py: Python<'py>, value: &serde_json::Value) -> PyResult<Bound<'py, PyAny>> {
    py.import("json")?.call_method1("loads", (value.to_string(),))
}

fn parse_t(name: &str, t: Option<&str>) -> PyResult<Option<Rational>> {
    t.map(|text| catalog::parse_t(name, text).map_err(value_error)).transpose()
}

fn signature(sig: (usize, usize, usize, usize)) -> PyResult<Signature> {
    Signature::new(sig.0, sig.1, sig.2, sig.3).map_err(value_error)
}

#[pyclass(name = "BallMap", frozen, eq, skip_from_py_object)]
#[derive(Clone, PartialEq)]
struct PyBallMap {
    inner: MonomialBallMap,
}

#[pymethods]
impl PyBallMap {
    /// `BallMap((2, 2, 3, 3), ["z1^2", "z1*z2", "z2*z3"], ["z3^2", "z3*z4", "z1*z4"])`
    #[new]
    fn new(signature_: (usize, usize, usize, usize), positive: Vec<String>, negative: Vec<String>) -> PyResult<Self> {
        let pos: Vec<&str> = positive.iter().map(String::as_str).collect();
        let neg: Vec<&str> = negative.iter().map(String::as_str).collect();
        let inner = MonomialBallMap::parse(signature(signature_)?, &pos, &neg).map_err(value_error)?;
        Ok(PyBallMap { inner })
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Ok(PyBallMap {
            inner: MonomialBallMap::from_json(text).map_err(value_error)?,
        })
    }

    fn to_json(&self) -> String {
        self.inner.to_json()
    }

    #[getter]
    fn signature(&self) -> (usize, usize, usize, usize) {
        let s = self.inner.signature();
        (s.r, s.s, s.rp, s.sp)
    }

    #[getter]
    fn degree(&self) -> u32 {
        self.inner.degree()
    }

    fn components(&self) -> (Vec<String>, Vec<String>) {
        self.inner.component_texts()
    }

    fn canonical_form(&self) -> Self {
        PyBallMap {
            inner: canonical_form(&self.inner),
        }
    }

    /// Properness certificate; `proper` is false when `L` does not divide `P`.
    #[pyo3(signature = (trials = 2000, seed = 0))]
    fn check<'py>(&self, py: Python<'py>, trials: usize, seed: u64) -> PyResult<Bound<'py, PyAny>> {
        let value = match properness_certificate(&self.inner, trials, seed) {
            Ok(cert) => cert.to_json_value(),
            Err(BallMapError::NotProper(why)) => serde_json::json!({"proper": false, "reason": why.to_string()}),
            Err(e) => return Err(value_error(e)),
        };
        to_py(py, &value)
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("BallMap({})", self.inner)
    }
}

#[pyclass(name = "MatrixMap", frozen, eq, skip_from_py_object)]
#[derive(Clone, PartialEq)]
struct PyMatrixMap {
    inner: SymbolicMatrixMap,
}

#[pymethods]
impl PyMatrixMap {
    /// Entries are polynomials in `z1..z(r*s)`, row-major in `Z`.
    #[new]
    fn new(r: usize, s: usize, rows: Vec<Vec<String>>) -> PyResult<Self> {
        let rows: Vec<Vec<&str>> = rows.iter().map(|row| row.iter().map(String::as_str).collect()).collect();
        let refs: Vec<&[&str]> = rows.iter().map(Vec::as_slice).collect();
        Ok(PyMatrixMap {
            inner: SymbolicMatrixMap::parse(r, s, &refs).map_err(value_error)?,
        })
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Ok(PyMatrixMap {
            inner: SymbolicMatrixMap::from_json(text).map_err(value_error)?,
        })
    }

    fn to_json(&self) -> String {
        self.inner.to_json()
    }

    fn texts(&self) -> Vec<Vec<String>> {
        self.inner.texts()
    }

    #[getter]
    fn shape(&self) -> (usize, usize) {
        (self.inner.rows(), self.inner.cols())
    }

    #[getter]
    fn source_shape(&self) -> (usize, usize) {
        self.inner.source_shape()
    }

    fn eval(&self, z: Vec<Vec<Complex64>>) -> PyResult<Vec<Vec<Complex64>>> {
        let z = matrix(&z)?;
        if (z.nrows(), z.ncols()) != self.inner.source_shape() {
            return Err(value_error(format!("expected a {:?} matrix", self.inner.source_shape())));
        }
        let w = self.inner.eval(&z);
        Ok(w.row_iter().map(|row| row.iter().copied().collect()).collect())
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }
}

fn matrix(rows: &[Vec<Complex64>]) -> PyResult<nalgebra::DMatrix<Complex64>> {
    let cols = rows.first().map_or(0, Vec::len);
    if rows.is_empty() || rows.iter().any(|r| r.len() != cols) {
        return Err(value_error("matrix rows must be nonempty and of equal length"));
    }
    Ok(nalgebra::DMatrix::from_fn(rows.len(), cols, |i, j| rows[i][j]))
}

#[pyfunction]
fn enumerate_linear_qp() -> Vec<String> {
    classify::enumerate_linear_qp().iter().map(ToString::to_string).collect()
}

#[pyfunction]
fn classify_degree2_r2(py: Python<'_>) -> PyResult<Bound<'_, PyAny>> {
    to_py(py, &classify::classify_degree2_r2().to_json_value())
}

#[pyfunction]
fn brute_force_search(signature_: (usize, usize, usize, usize), degree: u32, grid: Vec<String>) -> PyResult<Vec<PyBallMap>> {
    let grid = grid.iter().map(|g| parse_rational(g).map_err(value_error)).collect::<PyResult<Vec<_>>>()?;
    let maps = classify::brute_force_search(signature(signature_)?, degree, &grid, &SearchLimits::default())
        .map_err(value_error)?;
    Ok(maps.into_iter().map(|inner| PyBallMap { inner }).collect())
}

#[pyfunction]
#[pyo3(signature = (which, trials = 1000, seed = 0))]
fn lemma_harness<'py>(py: Python<'py>, which: &str, trials: usize, seed: u64) -> PyResult<Bound<'py, PyAny>> {
    let lemma = Lemma::from_name(which).ok_or_else(|| value_error(format!("unknown lemma {which:?}")))?;
    to_py(py, &classify::lemma_harness(lemma, trials, seed, &HarnessBounds::default()).to_json_value())
}

/// `(report, f)`: the solver report and the particular solution.
#[pyfunction]
fn solve_induced<'py>(py: Python<'py>, g: &PyBallMap) -> PyResult<(Bound<'py, PyAny>, PyMatrixMap)> {
    let out = induce::solve_induced(&g.inner).map_err(value_error)?;
    Ok((to_py(py, &out.to_json_value())?, PyMatrixMap { inner: out.particular }))
}

#[pyfunction]
fn residual_zero(g: &PyBallMap, f: &PyMatrixMap) -> PyResult<bool> {
    let residual = induce::residual_check(&g.inner, &f.inner).map_err(value_error)?;
    Ok(residual.iter().all(|p| p.is_zero()))
}

#[pyfunction]
fn catalog_list() -> Vec<String> {
    catalog::list()
}

/// `(g, f)` for a named entry; families take `t` as text such as `"1/4"`.
#[pyfunction]
#[pyo3(signature = (name, t = None))]
fn catalog_get(name: &str, t: Option<&str>) -> PyResult<(PyBallMap, PyMatrixMap)> {
    let entry = catalog::get_at(name, parse_t(name, t)?.as_ref()).map_err(value_error)?;
    Ok((PyBallMap { inner: entry.g }, PyMatrixMap { inner: entry.f_expected }))
}

#[pyfunction]
#[pyo3(signature = (name, t = None))]
fn catalog_verify<'py>(py: Python<'py>, name: &str, t: Option<&str>) -> PyResult<Bound<'py, PyAny>> {
    let report = catalog::verify_entry(name, parse_t(name, t)?.as_ref()).map_err(value_error)?;
    to_py(py, &report.to_json_value())
}

#[pyfunction]
fn omega_margin(z: Vec<Vec<Complex64>>) -> PyResult<f64> {
    Ok(numverify::omega_margin(&matrix(&z)?))
}

/// The interior, boundary and fiber checks of `f` against `g`.
#[pyfunction]
#[pyo3(signature = (f, g, trials = 1000, seed = 0, steps = 4))]
fn verify_numeric<'py>(
    py: Python<'py>,
    f: &PyMatrixMap,
    g: &PyBallMap,
    trials: usize,
    seed: u64,
    steps: u32,
) -> PyResult<Vec<Bound<'py, PyAny>>> {
    let sig = g.inner.signature();
    let reports = [
        numverify::verify_map_into_domain(&f.inner, sig.r, sig.s, trials, seed),
        numverify::verify_boundary_behavior(&f.inner, sig.r, sig.s, seed, steps),
        numverify::verify_fiber_preservation(&f.inner, &g.inner, trials, seed),
    ];
    reports
        .into_iter()
        .map(|r| to_py(py, &r.map_err(value_error)?.to_json_value()))
        .collect()
}

#[pyfunction]
#[pyo3(signature = (free_row, samples = 1000, seed = 0))]
fn shilov_obstruction_demo(py: Python<'_>, free_row: Vec<Complex64>, samples: usize, seed: u64) -> PyResult<Bound<'_, PyAny>> {
    let report = numverify::shilov_obstruction_demo(&free_row, samples, seed).map_err(value_error)?;
    to_py(py, &report.to_json_value())
}

#[pymodule]
fn propmap(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyBallMap>()?;
    m.add_class::<PyMatrixMap>()?;
    m.add_function(wrap_pyfunction!(enumerate_linear_qp, m)?)?;
    m.add_function(wrap_pyfunction!(classify_degree2_r2, m)?)?;
    m.add_function(wrap_pyfunction!(brute_force_search, m)?)?;
    m.add_function(wrap_pyfunction!(lemma_harness, m)?)?;
    m.add_function(wrap_pyfunction!(solve_induced, m)?)?;
    m.add_function(wrap_pyfunction!(residual_zero, m)?)?;
    m.add_function(wrap_pyfunction!(catalog_list, m)?)?;
    m.add_function(wrap_pyfunction!(catalog_get, m)?)?;
    m.add_function(wrap_pyfunction!(catalog_verify, m)?)?;
    m.add_function(wrap_pyfunction!(omega_margin, m)?)?;
    m.add_function(wrap_pyfunction!(verify_numeric, m)?)?;
    m.add_function(wrap_pyfunction!(shilov_obstruction_demo, m)?)?;
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    Ok(())
}
