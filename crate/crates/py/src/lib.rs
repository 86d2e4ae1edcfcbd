//! Python bindings. Structured results come back as plain dicts and lists
//! (the JSON form of the Rust types).

use std::path::PathBuf;

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use serde::Serialize;

use twistvol::augmentation::augment;
use twistvol::bounds::{crossing_threshold, volume_bounds_with_threshold, ConstantsReport};
use twistvol::cone;
use twistvol::corpus;
use twistvol::diagram::{parse_pd, parse_pd_json, PlanarDiagram};
use twistvol::numeric::QuadratureResult;
use twistvol::twist;

fn value_err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn to_py<'py>(py: Python<'py>, value: &impl Serialize) -> PyResult<Bound<'py, PyAny>> {
    let text = serde_json::to_string(value).map_err(|e| PyRuntimeError::new_err(e.to_string()))?;
    py.import("json")?.call_method1("loads", (text,))
}

/// A planar diagram given by PD code.
#[pyclass(name = "Diagram", module = "twistvol_py", frozen)]
struct PyDiagram {
    inner: PlanarDiagram,
}

#[pymethods]
impl PyDiagram {
    /// Parse PD text such as `"X[1,5,2,4] X[3,1,4,6] X[5,3,6,2]"`.
    #[new]
    #[pyo3(signature = (pd, name=None))]
    fn new(pd: &str, name: Option<String>) -> PyResult<Self> {
        let mut d = parse_pd(pd).map_err(value_err)?;
        if let Some(n) = name {
            d = d.with_name(n);
        }
        Ok(PyDiagram { inner: d })
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        parse_pd_json(text)
            .map(|inner| PyDiagram { inner })
            .map_err(value_err)
    }

    fn to_json(&self) -> PyResult<String> {
        serde_json::to_string(&self.inner.to_json()).map_err(value_err)
    }

    #[getter]
    fn name(&self) -> Option<String> {
        self.inner.name().map(str::to_string)
    }

    #[getter]
    fn crossing_count(&self) -> usize {
        self.inner.crossing_count()
    }

    #[getter]
    fn component_count(&self) -> usize {
        self.inner.component_count()
    }

    #[getter]
    fn face_count(&self) -> usize {
        self.inner.faces().len()
    }

    #[getter]
    fn bigon_count(&self) -> usize {
        self.inner.faces().iter().filter(|f| f.is_bigon()).count()
    }

    fn pd_tuples(&self) -> Vec<[u32; 4]> {
        self.inner.pd_tuples()
    }

    fn is_alternating(&self) -> bool {
        self.inner.is_alternating()
    }

    fn mirror(&self) -> PyResult<Self> {
        self.inner
            .mirror()
            .map(|inner| PyDiagram { inner })
            .map_err(value_err)
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!(
            "Diagram(name={:?}, crossings={})",
            self.inner.name().unwrap_or(""),
            self.inner.crossing_count()
        )
    }
}

#[pyfunction]
fn twist_regions<'py>(py: Python<'py>, d: &PyDiagram) -> PyResult<Bound<'py, PyAny>> {
    to_py(py, &twist::twist_regions(&d.inner))
}

/// Crossing counts of the twist regions, ascending.
#[pyfunction]
fn region_crossings(d: &PyDiagram) -> Vec<usize> {
    let mut v: Vec<usize> = twist::twist_regions(&d.inner)
        .iter()
        .map(|r| r.crossing_count)
        .collect();
    v.sort_unstable();
    v
}

#[pyfunction]
fn is_prime(d: &PyDiagram) -> PyResult<bool> {
    twist::is_prime(&d.inner)
        .map(|p| p.prime)
        .map_err(value_err)
}

#[pyfunction]
fn is_twist_reduced(d: &PyDiagram) -> PyResult<bool> {
    twist::is_twist_reduced(&d.inner)
        .map(|t| t.twist_reduced)
        .map_err(value_err)
}

#[pyfunction]
#[pyo3(signature = (d, threshold=None))]
fn gate<'py>(
    py: Python<'py>,
    d: &PyDiagram,
    threshold: Option<usize>,
) -> PyResult<Bound<'py, PyAny>> {
    let g = twist::gate(&d.inner, threshold.unwrap_or_else(crossing_threshold));
    to_py(py, &g)
}

/// Augmented link data: crossing circles, plane components, cusp tilings and
/// the polyhedral decomposition counts.
#[pyfunction]
fn augmented_link<'py>(py: Python<'py>, d: &PyDiagram) -> PyResult<Bound<'py, PyAny>> {
    let regions = twist::twist_regions(&d.inner);
    let a = augment(&d.inner, &regions).map_err(value_err)?;
    to_py(py, &a)
}

#[pyfunction]
#[pyo3(signature = (d, threshold=None))]
fn volume_bounds<'py>(
    py: Python<'py>,
    d: &PyDiagram,
    threshold: Option<usize>,
) -> PyResult<Bound<'py, PyAny>> {
    let r = volume_bounds_with_threshold(&d.inner, threshold.unwrap_or_else(crossing_threshold));
    to_py(py, &r)
}

fn quadrature(q: QuadratureResult) -> (f64, f64, usize) {
    (q.value, q.error_estimate, q.subinterval_count)
}

/// `(value, error_estimate, subinterval_count)` of the per-cusp volume change.
#[pyfunction]
fn delta_v_per_cusp(z_hat: f64) -> PyResult<(f64, f64, usize)> {
    cone::delta_v_per_cusp(z_hat)
        .map(quadrature)
        .map_err(value_err)
}

#[pyfunction]
#[pyo3(signature = (n, lengths=None))]
fn delta_v_bound(n: usize, lengths: Option<Vec<f64>>) -> PyResult<(f64, f64, usize)> {
    cone::delta_v_bound(n, lengths.as_deref())
        .map(quadrature)
        .map_err(value_err)
}

#[pyfunction]
fn solve_rho_hat(l_hat: f64) -> PyResult<f64> {
    cone::solve_rho_hat(l_hat).map_err(value_err)
}

#[pyfunction]
fn tube_function(r: f64) -> PyResult<f64> {
    cone::tube_function(r).map_err(value_err)
}

#[pyfunction]
fn tube_packing_bound(r: f64) -> PyResult<f64> {
    cone::tube_packing_bound(r).map_err(value_err)
}

#[pyfunction]
fn hk_h(z: f64) -> PyResult<f64> {
    cone::hk_h(z).map_err(value_err)
}

/// Recomputed constants next to their published values.
#[pyfunction]
fn constants(py: Python<'_>) -> PyResult<Bound<'_, PyAny>> {
    to_py(py, &ConstantsReport::compute())
}

/// Runs a corpus directory (default: the bundled one) and returns
/// `(name, mismatches)` per entry in file order.
#[pyfunction]
#[pyo3(signature = (directory=None))]
fn run_corpus(directory: Option<PathBuf>) -> PyResult<Vec<(String, Vec<String>)>> {
    let dir = directory.unwrap_or_else(corpus::bundled_dir);
    let out = corpus::run_dir(&dir).map_err(value_err)?;
    Ok(out.into_iter().map(|o| (o.name, o.mismatches)).collect())
}

#[pymodule]
fn twistvol_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyDiagram>()?;
    m.add("CROSSING_THRESHOLD", crossing_threshold())?;
    m.add("MIN_TUBE_RADIUS", cone::MIN_TUBE_RADIUS)?;
    m.add_function(wrap_pyfunction!(twist_regions, m)?)?;
    m.add_function(wrap_pyfunction!(region_crossings, m)?)?;
    m.add_function(wrap_pyfunction!(is_prime, m)?)?;
    m.add_function(wrap_pyfunction!(is_twist_reduced, m)?)?;
    m.add_function(wrap_pyfunction!(gate, m)?)?;
    m.add_function(wrap_pyfunction!(augmented_link, m)?)?;
    m.add_function(wrap_pyfunction!(volume_bounds, m)?)?;
    m.add_function(wrap_pyfunction!(delta_v_per_cusp, m)?)?;
    m.add_function(wrap_pyfunction!(delta_v_bound, m)?)?;
    m.add_function(wrap_pyfunction!(solve_rho_hat, m)?)?;
    m.add_function(wrap_pyfunction!(tube_function, m)?)?;
    m.add_function(wrap_pyfunction!(tube_packing_bound, m)?)?;
    m.add_function(wrap_pyfunction!(hk_h, m)?)?;
    m.add_function(wrap_pyfunction!(constants, m)?)?;
    m.add_function(wrap_pyfunction!(run_corpus, m)?)?;
    Ok(())
}
