use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

use toric_bezier::basis::{self, NodeSet, WeightVector};
use toric_bezier::curve::{self, ControlPolygon, GTBezierCurve};
use toric_bezier::matrix::DenseMatrix;
use toric_bezier::pia::{self, FitProblem, PiaState};
use toric_bezier::reproduce::{run_experiment, Experiment};
use toric_bezier::tp::{self, GenVandermondeSpec, TpMethod, TpReport, DEFAULT_TP_TOLERANCE};

fn value_err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn weights_or_unit(weights: Option<Vec<f64>>, len: usize) -> PyResult<WeightVector> {
    match weights {
        Some(w) => WeightVector::new(w).map_err(value_err),
        None => Ok(WeightVector::unit(len)),
    }
}

fn matrix_from(rows: Vec<Vec<f64>>) -> PyResult<DenseMatrix> {
    DenseMatrix::from_rows(&rows).map_err(value_err)
}

#[pyclass(name = "NodeSet", module = "pytoric", frozen)]
struct PyNodeSet {
    inner: NodeSet,
}

#[pymethods]
impl PyNodeSet {
    #[new]
    #[pyo3(signature = (nodes, coefficients=None, scale=1.0))]
    fn new(nodes: Vec<f64>, coefficients: Option<Vec<f64>>, scale: f64) -> PyResult<Self> {
        let coefficients = coefficients.unwrap_or_else(|| vec![1.0; nodes.len()]);
        Ok(Self {
            inner: NodeSet::new(nodes, coefficients, scale).map_err(value_err)?,
        })
    }

    #[getter]
    fn nodes(&self) -> Vec<f64> {
        self.inner.nodes().to_vec()
    }

    #[getter]
    fn coefficients(&self) -> Vec<f64> {
        self.inner.coefficients().to_vec()
    }

    #[getter]
    fn scale(&self) -> f64 {
        self.inner.scale()
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    /// Raw basis value beta_i(t).
    fn eval(&self, i: usize, t: f64) -> PyResult<f64> {
        self.inner.eval(i, t).map_err(value_err)
    }

    /// Rational basis values at t.
    #[pyo3(signature = (t, weights=None))]
    fn eval_rational(&self, t: f64, weights: Option<Vec<f64>>) -> PyResult<Vec<f64>> {
        let w = weights_or_unit(weights, self.inner.len())?;
        Ok(self.inner.eval_rational(&w, t).map_err(value_err)?.values)
    }

    fn __repr__(&self) -> String {
        format!(
            "NodeSet(nodes={:?}, coefficients={:?}, scale={})",
            self.inner.nodes(),
            self.inner.coefficients(),
            self.inner.scale()
        )
    }
}

#[pyclass(name = "GTBezierCurve", module = "pytoric", frozen)]
struct PyCurve {
    inner: GTBezierCurve,
}

#[pymethods]
impl PyCurve {
    #[new]
    #[pyo3(signature = (nodeset, control, weights=None))]
    fn new(nodeset: PyRef<'_, PyNodeSet>, control: Vec<Vec<f64>>, weights: Option<Vec<f64>>) -> PyResult<Self> {
        let w = weights_or_unit(weights, nodeset.inner.len())?;
        let control = ControlPolygon::new(&control).map_err(value_err)?;
        Ok(Self {
            inner: GTBezierCurve::new(nodeset.inner.clone(), w, control).map_err(value_err)?,
        })
    }

    fn eval(&self, t: f64) -> PyResult<Vec<f64>> {
        self.inner.eval(t).map_err(value_err)
    }

    fn sample_polyline(&self, count: usize) -> PyResult<Vec<Vec<f64>>> {
        self.inner.sample_polyline(count).map_err(value_err)
    }

    #[getter]
    fn control(&self) -> Vec<Vec<f64>> {
        self.inner.control().to_points()
    }

    #[getter]
    fn domain(&self) -> (f64, f64) {
        (self.inner.nodeset().start(), self.inner.nodeset().end())
    }
}

#[pyclass(name = "PiaState", module = "pytoric", frozen, get_all)]
struct PyPiaState {
    control: Vec<Vec<f64>>,
    iteration: usize,
    error_history: Vec<f64>,
}

impl From<&PiaState> for PyPiaState {
    fn from(s: &PiaState) -> Self {
        Self {
            control: s.control.to_points(),
            iteration: s.iteration,
            error_history: s.error_history.clone(),
        }
    }
}

#[pyclass(name = "FitProblem", module = "pytoric", frozen)]
struct PyFitProblem {
    inner: FitProblem,
}

#[pymethods]
impl PyFitProblem {
    #[new]
    #[pyo3(signature = (data, params, nodeset, weights=None))]
    fn new(
        data: Vec<Vec<f64>>,
        params: Vec<f64>,
        nodeset: PyRef<'_, PyNodeSet>,
        weights: Option<Vec<f64>>,
    ) -> PyResult<Self> {
        let w = weights_or_unit(weights, nodeset.inner.len())?;
        let data = ControlPolygon::new(&data).map_err(value_err)?;
        Ok(Self {
            inner: FitProblem::new(data, params, nodeset.inner.clone(), w).map_err(value_err)?,
        })
    }

    /// Runs PIA until the error drops to `tol` or `max_iter` steps ran.
    #[pyo3(signature = (max_iter, tol=0.0))]
    fn run(&self, max_iter: usize, tol: f64) -> PyResult<PyPiaState> {
        let state = pia::pia_run(&self.inner, max_iter, tol).map_err(value_err)?;
        Ok(PyPiaState::from(&state))
    }

    /// Adjustment vectors for the given control points.
    fn adjustment_vectors(&self, control: Vec<Vec<f64>>) -> PyResult<Vec<Vec<f64>>> {
        let state = PiaState {
            control: ControlPolygon::new(&control).map_err(value_err)?,
            iteration: 0,
            error_history: Vec::new(),
        };
        pia::adjustment_vectors(&self.inner, &state).map_err(value_err)
    }

    fn iteration_spectrum(&self) -> f64 {
        pia::iteration_spectrum(&self.inner)
    }

    fn collocation(&self) -> Vec<Vec<f64>> {
        self.inner.collocation().to_rows()
    }
}

#[pyfunction]
fn bernstein_reference(n: usize, i: usize, x: f64) -> PyResult<f64> {
    basis::bernstein_reference(n, i, x).map_err(value_err)
}

#[pyfunction]
fn bernstein_equivalent_nodeset(n: usize) -> PyResult<PyNodeSet> {
    if n == 0 {
        return Err(PyValueError::new_err("degree must be at least 1"));
    }
    Ok(PyNodeSet {
        inner: basis::bernstein_equivalent_nodeset(n),
    })
}

#[pyfunction]
fn collocation_matrix(nodeset: PyRef<'_, PyNodeSet>, params: Vec<f64>) -> PyResult<Vec<Vec<f64>>> {
    Ok(tp::collocation_matrix(&nodeset.inner, &params)
        .map_err(value_err)?
        .to_rows())
}

#[pyfunction]
#[pyo3(signature = (nodeset, params, weights=None))]
fn rational_collocation_matrix(
    nodeset: PyRef<'_, PyNodeSet>,
    params: Vec<f64>,
    weights: Option<Vec<f64>>,
) -> PyResult<Vec<Vec<f64>>> {
    let w = weights_or_unit(weights, nodeset.inner.len())?;
    Ok(tp::rational_collocation_matrix(&nodeset.inner, &w, &params)
        .map_err(value_err)?
        .to_rows())
}

#[pyfunction]
#[pyo3(signature = (nodeset, params, strict_interior=false))]
fn power_reduction(nodeset: PyRef<'_, PyNodeSet>, params: Vec<f64>, strict_interior: bool) -> PyResult<Vec<Vec<f64>>> {
    Ok(tp::power_reduction(&nodeset.inner, &params, strict_interior)
        .map_err(value_err)?
        .to_rows())
}

#[pyfunction]
#[pyo3(signature = (t, alpha, signs=None))]
fn generalized_vandermonde(t: Vec<f64>, alpha: Vec<f64>, signs: Option<Vec<i8>>) -> PyResult<Vec<Vec<f64>>> {
    let signs = signs.unwrap_or_else(|| vec![1; t.len().saturating_sub(1)]);
    let spec = GenVandermondeSpec::new(t, alpha, signs).map_err(value_err)?;
    Ok(tp::generalized_vandermonde(&spec).map_err(value_err)?.to_rows())
}

#[pyfunction]
fn minor_det(matrix: Vec<Vec<f64>>, rows: Vec<usize>, cols: Vec<usize>) -> PyResult<f64> {
    matrix_from(matrix)?.minor_det(&rows, &cols).map_err(value_err)
}

fn report_dict<'py>(py: Python<'py>, r: &TpReport) -> PyResult<Bound<'py, PyDict>> {
    let d = PyDict::new(py);
    d.set_item("is_tp", r.is_tp)?;
    d.set_item("is_stp", r.is_stp)?;
    d.set_item("min_contiguous_minor", r.min_contiguous_minor)?;
    d.set_item("method", r.method.to_string())?;
    d.set_item("minors_checked", r.minors_checked)?;
    match &r.witness {
        Some(w) => d.set_item("witness", (w.rows.clone(), w.cols.clone(), w.value))?,
        None => d.set_item("witness", py.None())?,
    }
    Ok(d)
}

#[pyfunction]
#[pyo3(signature = (matrix, tol=DEFAULT_TP_TOLERANCE, method="exhaustive"))]
fn is_totally_positive<'py>(
    py: Python<'py>,
    matrix: Vec<Vec<f64>>,
    tol: f64,
    method: &str,
) -> PyResult<Bound<'py, PyDict>> {
    let method = match method {
        "exhaustive" => TpMethod::Exhaustive,
        "contiguous" => TpMethod::Contiguous,
        other => return Err(PyValueError::new_err(format!("unknown method {other:?}"))),
    };
    let report = tp::is_totally_positive(&matrix_from(matrix)?, tol, method).map_err(value_err)?;
    report_dict(py, &report)
}

#[pyfunction]
#[pyo3(signature = (nodeset, weights=None, trials=100, seed=42))]
fn verify_ntp_suite<'py>(
    py: Python<'py>,
    nodeset: PyRef<'_, PyNodeSet>,
    weights: Option<Vec<f64>>,
    trials: usize,
    seed: u64,
) -> PyResult<Bound<'py, PyDict>> {
    let w = weights_or_unit(weights, nodeset.inner.len())?;
    let report = tp::verify_ntp_suite(&nodeset.inner, &w, trials, seed).map_err(value_err)?;
    let d = PyDict::new(py);
    d.set_item("trials", report.trials.len())?;
    d.set_item("failures", report.failure_count())?;
    d.set_item("method", report.method.to_string())?;
    d.set_item("tolerance", report.tolerance)?;
    let worst = report
        .worst()
        .and_then(|t| t.report.witness.as_ref())
        .map(|w| w.value);
    d.set_item("worst_relative_minor", worst)?;
    Ok(d)
}

#[pyfunction]
fn classical_bezier(control: Vec<Vec<f64>>) -> PyResult<PyCurve> {
    let control = ControlPolygon::new(&control).map_err(value_err)?;
    Ok(PyCurve {
        inner: curve::classical_bezier(control),
    })
}

#[pyfunction]
fn rational_bezier(control: Vec<Vec<f64>>, weights: Vec<f64>) -> PyResult<PyCurve> {
    let control = ControlPolygon::new(&control).map_err(value_err)?;
    let w = WeightVector::new(weights).map_err(value_err)?;
    Ok(PyCurve {
        inner: curve::rational_bezier(control, w).map_err(value_err)?,
    })
}

/// Runs the "circle" or "helix" experiment and returns its error table.
#[pyfunction]
#[pyo3(signature = (which, iterations=None))]
fn example<'py>(py: Python<'py>, which: &str, iterations: Option<usize>) -> PyResult<Bound<'py, PyDict>> {
    let experiment = match which {
        "circle" => Experiment::Circle,
        "helix" => Experiment::Helix,
        other => return Err(PyValueError::new_err(format!("unknown example {other:?}"))),
    };
    let iterations = iterations.unwrap_or_else(|| experiment.default_iterations());
    let outcome = run_experiment(experiment, iterations).map_err(value_err)?;
    let d = PyDict::new(py);
    d.set_item("checkpoints", outcome.table.checkpoints().to_vec())?;
    let rows = PyDict::new(py);
    for (label, values) in outcome.table.rows() {
        rows.set_item(label, values.to_vec())?;
    }
    d.set_item("errors", rows)?;
    let spectra = PyDict::new(py);
    for (label, problem, _) in &outcome.runs {
        spectra.set_item(label, pia::iteration_spectrum(problem))?;
    }
    d.set_item("spectral_radius", spectra)?;
    Ok(d)
}

#[pymodule]
fn pytoric(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyNodeSet>()?;
    m.add_class::<PyCurve>()?;
    m.add_class::<PyFitProblem>()?;
    m.add_class::<PyPiaState>()?;
    m.add_function(wrap_pyfunction!(bernstein_reference, m)?)?;
    m.add_function(wrap_pyfunction!(bernstein_equivalent_nodeset, m)?)?;
    m.add_function(wrap_pyfunction!(collocation_matrix, m)?)?;
    m.add_function(wrap_pyfunction!(rational_collocation_matrix, m)?)?;
    m.add_function(wrap_pyfunction!(power_reduction, m)?)?;
    m.add_function(wrap_pyfunction!(generalized_vandermonde, m)?)?;
    m.add_function(wrap_pyfunction!(minor_det, m)?)?;
    m.add_function(wrap_pyfunction!(is_totally_positive, m)?)?;
    m.add_function(wrap_pyfunction!(verify_ntp_suite, m)?)?;
    m.add_function(wrap_pyfunction!(classical_bezier, m)?)?;
    m.add_function(wrap_pyfunction!(rational_bezier, m)?)?;
    m.add_function(wrap_pyfunction!(example, m)?)?;
    Ok(())
}
