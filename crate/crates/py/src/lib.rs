//! Python bindings for `ladm_core`.

use ladm_core::adomian::lambda_consistency_check;
use ladm_core::oracle::{self, ComparisonRow};
use ladm_core::solver::{self, order_magnitudes};
use ladm_core::{
    Complex64, EquationModel, ExactSolution, HarmonicPoly, LadmError, LadmRun, NonlinearOperator, TimeSeries,
};
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

fn to_py_err(e: LadmError) -> PyErr {
    PyValueError::new_err(e.to_string())
}

#[pyclass(name = "HarmonicPoly", module = "ladm", skip_from_py_object)]
#[derive(Clone)]
pub struct PyHarmonicPoly(pub HarmonicPoly);

#[pymethods]
impl PyHarmonicPoly {
    /// `terms` maps wavenumber `k` to the coefficient of `e^{ikx}`.
    #[new]
    #[pyo3(signature = (terms = None))]
    fn new(terms: Option<Vec<(i64, Complex64)>>) -> Self {
        Self(HarmonicPoly::from_terms(terms.unwrap_or_default()))
    }

    fn coeff(&self, k: i64) -> Complex64 {
        self.0.coeff(k)
    }

    fn support(&self) -> Vec<i64> {
        self.0.support()
    }

    fn terms(&self) -> Vec<(i64, Complex64)> {
        self.0.iter().collect()
    }

    fn eval(&self, x: f64) -> Complex64 {
        self.0.eval(x)
    }

    fn max_abs(&self) -> f64 {
        self.0.max_abs()
    }

    fn conj(&self) -> Self {
        Self(self.0.conj())
    }

    fn dx(&self) -> Self {
        Self(self.0.dx())
    }

    fn __add__(&self, other: PyRef<'_, Self>) -> Self {
        Self(&self.0 + &other.0)
    }

    fn __sub__(&self, other: PyRef<'_, Self>) -> Self {
        Self(&self.0 - &other.0)
    }

    fn __mul__(&self, other: PyRef<'_, Self>) -> Self {
        Self(&self.0 * &other.0)
    }

    fn __neg__(&self) -> Self {
        Self(-&self.0)
    }

    fn __eq__(&self, other: PyRef<'_, Self>) -> bool {
        self.0 == other.0
    }

    fn __len__(&self) -> usize {
        self.0.len()
    }

    fn __repr__(&self) -> String {
        let terms: Vec<String> = self
            .0
            .iter()
            .map(|(k, c)| format!("({k}, {}{:+}j)", c.re, c.im))
            .collect();
        format!("HarmonicPoly([{}])", terms.join(", "))
    }
}

#[pyclass(name = "TimeSeries", module = "ladm", skip_from_py_object)]
#[derive(Clone)]
pub struct PyTimeSeries(pub TimeSeries);

#[pymethods]
impl PyTimeSeries {
    /// `coeffs[m]` is the coefficient of `t^m`.
    #[new]
    #[pyo3(signature = (coeffs = None))]
    fn new(coeffs: Option<Vec<PyRef<'_, PyHarmonicPoly>>>) -> Self {
        let coeffs = coeffs.unwrap_or_default().iter().map(|h| h.0.clone()).collect();
        Self(TimeSeries::from_coeffs(coeffs))
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        let value: serde_json::Value = serde_json::from_str(text).map_err(|e| PyValueError::new_err(e.to_string()))?;
        TimeSeries::from_json(&value).map(Self).map_err(to_py_err)
    }

    fn to_json(&self) -> String {
        self.0.to_json().to_string()
    }

    fn coeff(&self, m: usize) -> PyHarmonicPoly {
        PyHarmonicPoly(self.0.coeff(m).clone())
    }

    fn degree(&self) -> Option<usize> {
        self.0.degree()
    }

    fn powers(&self) -> Vec<usize> {
        self.0.powers()
    }

    fn eval(&self, x: f64, t: f64) -> Complex64 {
        self.0.eval(x, t)
    }

    fn max_abs(&self) -> f64 {
        self.0.max_abs()
    }

    fn conj(&self) -> Self {
        Self(self.0.conj())
    }

    fn dx(&self) -> Self {
        Self(self.0.dx())
    }

    fn integrate_time(&self) -> Self {
        Self(self.0.integrate_time())
    }

    fn derivative_time(&self) -> Self {
        Self(self.0.derivative_time())
    }

    fn __add__(&self, other: PyRef<'_, Self>) -> Self {
        Self(&self.0 + &other.0)
    }

    fn __sub__(&self, other: PyRef<'_, Self>) -> Self {
        Self(&self.0 - &other.0)
    }

    fn __mul__(&self, other: PyRef<'_, Self>) -> Self {
        Self(&self.0 * &other.0)
    }

    fn __neg__(&self) -> Self {
        Self(-&self.0)
    }

    fn __eq__(&self, other: PyRef<'_, Self>) -> bool {
        self.0 == other.0
    }

    fn __repr__(&self) -> String {
        format!("TimeSeries({})", self.0.to_json())
    }
}

#[pyclass(name = "LadmRun", module = "ladm", frozen, skip_from_py_object)]
pub struct PyLadmRun(LadmRun);

#[pymethods]
impl PyLadmRun {
    #[getter]
    fn beta(&self) -> f64 {
        self.0.beta
    }

    #[getter]
    fn harmonic(&self) -> i64 {
        self.0.harmonic
    }

    #[getter]
    fn terms(&self) -> usize {
        self.0.k
    }

    #[getter]
    fn iterates(&self) -> Vec<PyTimeSeries> {
        self.0.iterates.iter().cloned().map(PyTimeSeries).collect()
    }

    #[getter]
    fn truncated(&self) -> PyTimeSeries {
        PyTimeSeries(self.0.truncated.clone())
    }

    fn eval(&self, x: f64, t: f64) -> Complex64 {
        self.0.eval(x, t)
    }

    /// Largest coefficient magnitude of each power of `t` in the PDE residual.
    fn residual_orders(&self) -> Vec<f64> {
        order_magnitudes(&solver::residual(&EquationModel::kundu_eckhaus(), &self.0.truncated))
    }

    /// Max discrepancy between the λ-expansion and the Adomian polynomials.
    fn lambda_discrepancy(&self) -> f64 {
        let op = NonlinearOperator::kundu_eckhaus();
        lambda_consistency_check(&op, &self.0.iterates, self.0.k).max_discrepancy
    }

    fn __repr__(&self) -> String {
        format!(
            "LadmRun(beta={}, harmonic={}, terms={})",
            self.0.beta, self.0.harmonic, self.0.k
        )
    }
}

#[pyfunction]
fn reference_beta() -> f64 {
    ladm_core::reference_beta()
}

/// LADM run from `beta · e^{i·harmonic·x}` with `terms` corrections.
#[pyfunction]
#[pyo3(signature = (beta = ladm_core::reference_beta(), harmonic = 1, terms = 4))]
fn run(beta: f64, harmonic: i64, terms: usize) -> PyResult<PyLadmRun> {
    solver::run(&EquationModel::kundu_eckhaus(), beta, harmonic, terms)
        .map(PyLadmRun)
        .map_err(to_py_err)
}

#[pyfunction]
#[pyo3(signature = (x, t, amplitude = ladm_core::reference_beta(), sign = 1))]
fn exact_eval(x: f64, t: f64, amplitude: f64, sign: i8) -> PyResult<Complex64> {
    let sol = ExactSolution::new(amplitude, sign).map_err(to_py_err)?;
    oracle::exact_eval(&sol, x, t).map_err(to_py_err)
}

fn row_dict<'py>(py: Python<'py>, r: &ComparisonRow) -> PyResult<Bound<'py, PyDict>> {
    let d = PyDict::new(py);
    d.set_item("x", r.x)?;
    d.set_item("t", r.t)?;
    d.set_item("re_ladm", r.re_ladm)?;
    d.set_item("im_ladm", r.im_ladm)?;
    d.set_item("re_exact", r.re_exact)?;
    d.set_item("im_exact", r.im_exact)?;
    d.set_item("err_re", r.err_re)?;
    d.set_item("err_im", r.err_im)?;
    d.set_item("err_abs", r.err_abs)?;
    Ok(d)
}

/// Comparison rows of `ladm_run` against the closed form at time `t`.
#[pyfunction]
#[pyo3(signature = (ladm_run, xs, t, sign = 1))]
fn compare_grid<'py>(
    py: Python<'py>,
    ladm_run: PyRef<'_, PyLadmRun>,
    xs: Vec<f64>,
    t: f64,
    sign: i8,
) -> PyResult<Vec<Bound<'py, PyDict>>> {
    let sol = ExactSolution::new(ladm_run.0.beta, sign).map_err(to_py_err)?;
    let rows = oracle::compare_grid(&ladm_run.0, &sol, &xs, t).map_err(to_py_err)?;
    rows.iter().map(|r| row_dict(py, r)).collect()
}

/// Symbolic Adomian polynomial of order `n` for family "P", "Q", "R" or "A".
#[pyfunction]
#[pyo3(signature = (n, family = "A"))]
fn adomian_symbolic(n: usize, family: &str) -> PyResult<String> {
    let poly = match family {
        "P" => NonlinearOperator::quintic_part().symbolic(n),
        "Q" => NonlinearOperator::conj_derivative_part().symbolic(n),
        "R" => NonlinearOperator::derivative_part().symbolic(n),
        "A" => NonlinearOperator::kundu_eckhaus().symbolic(n),
        other => return Err(PyValueError::new_err(format!("unknown family {other:?}"))),
    };
    Ok(poly.to_string())
}

#[pymodule]
fn ladm(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyHarmonicPoly>()?;
    m.add_class::<PyTimeSeries>()?;
    m.add_class::<PyLadmRun>()?;
    m.add_function(wrap_pyfunction!(reference_beta, m)?)?;
    m.add_function(wrap_pyfunction!(run, m)?)?;
    m.add_function(wrap_pyfunction!(exact_eval, m)?)?;
    m.add_function(wrap_pyfunction!(compare_grid, m)?)?;
    m.add_function(wrap_pyfunction!(adomian_symbolic, m)?)?;
    Ok(())
}
