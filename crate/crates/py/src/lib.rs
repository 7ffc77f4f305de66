//! Python bindings. Structured results are returned as plain dicts and lists.

use h2beta::asymptotics::{self, MeanGrid};
use h2beta::coeffs;
use h2beta::counterexample::{build_counterexample, CounterexampleOptions};
use h2beta::operator::{self, DivergenceOptions, SchurKind, NORM_ITER_CAP};
use h2beta::symbols::{self, SymbolSpec};
use h2beta::verify::{run_suite, Suite, SuiteOptions};
use h2beta::weights::{self, Property, WeightSpec};
use num_complex::Complex64;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyModule;
use serde::Serialize;

fn err(e: h2beta::Error) -> PyErr {
    match e {
        h2beta::Error::InvalidParameter(_)
        | h2beta::Error::UnknownCatalog(_)
        | h2beta::Error::Config { .. }
        | h2beta::Error::Precondition(_) => PyValueError::new_err(e.to_string()),
        _ => PyRuntimeError::new_err(e.to_string()),
    }
}

/// Serialize through JSON into Python objects.
fn to_py<'py, T: Serialize>(py: Python<'py>, value: &T) -> PyResult<Bound<'py, PyAny>> {
    let text = serde_json::to_string(value).map_err(|e| PyRuntimeError::new_err(e.to_string()))?;
    PyModule::import(py, "json")?.call_method1("loads", (text,))
}

#[pyclass(name = "Weight", module = "pyh2beta", frozen)]
struct PyWeight {
    inner: weights::WeightSequence,
}

#[pymethods]
impl PyWeight {
    /// `spec` is an inline catalog spec such as "power:nu=0.5" or "hardy".
    #[new]
    fn new(spec: &str) -> PyResult<Self> {
        let s: WeightSpec = spec.parse().map_err(err)?;
        Ok(PyWeight { inner: weights::make_weight(&s).map_err(err)? })
    }

    /// Weight from an explicit table β_0, β_1, ...
    #[staticmethod]
    fn from_table(values: Vec<f64>) -> PyResult<Self> {
        Ok(PyWeight { inner: weights::custom_weight(values).map_err(err)? })
    }

    #[getter]
    fn name(&self) -> String {
        self.inner.name().to_string()
    }

    fn __call__(&self, n: u64) -> PyResult<f64> {
        self.inner.eval(n).map_err(err)
    }

    fn values(&self, n_max: u64) -> PyResult<Vec<f64>> {
        self.inner.values(n_max).map_err(err)
    }

    #[pyo3(signature = (property, window = 4096))]
    fn classify<'py>(&self, py: Python<'py>, property: &str, window: u64) -> PyResult<Bound<'py, PyAny>> {
        let p: Property = property.parse().map_err(err)?;
        to_py(py, &weights::classify(&self.inner, p, window).map_err(err)?)
    }

    #[pyo3(signature = (radii, tol = 1e-12))]
    fn kernel_profile<'py>(&self, py: Python<'py>, radii: Vec<f64>, tol: f64) -> PyResult<Bound<'py, PyAny>> {
        to_py(py, &operator::kernel_growth_report(&self.inner, &radii, tol).map_err(err)?)
    }

    fn __repr__(&self) -> String {
        format!("Weight('{}')", self.inner.name())
    }
}

#[pyclass(name = "Symbol", module = "pyh2beta", frozen)]
struct PySymbol {
    inner: symbols::Symbol,
}

#[pymethods]
impl PySymbol {
    /// `spec` is an inline spec such as "mobius:a=0.5" or "monomial:k=2".
    #[new]
    fn new(spec: &str) -> PyResult<Self> {
        let s: SymbolSpec = spec.parse().map_err(err)?;
        Ok(PySymbol { inner: symbols::make_symbol(&s).map_err(err)? })
    }

    #[getter]
    fn name(&self) -> String {
        self.inner.name()
    }

    fn __call__(&self, z: Complex64) -> Complex64 {
        self.inner.eval(z)
    }

    fn boundary(&self, x: f64) -> Complex64 {
        self.inner.eval_boundary(x)
    }

    /// First `length` Taylor coefficients of phi^power.
    #[pyo3(signature = (power, length, tol = 1e-12))]
    fn coeffs(&self, power: u32, length: usize, tol: f64) -> PyResult<Vec<Complex64>> {
        Ok(coeffs::coeffs_of_power(&self.inner, power, length, tol).map_err(err)?.values)
    }

    fn __repr__(&self) -> String {
        format!("Symbol('{}')", self.inner.name())
    }
}

#[pyclass(name = "Section", module = "pyh2beta", frozen)]
struct PySection {
    inner: operator::OperatorSection,
}

#[pymethods]
impl PySection {
    #[new]
    #[pyo3(signature = (weight, symbol, n, tol = 1e-12))]
    fn new(weight: &PyWeight, symbol: &PySymbol, n: usize, tol: f64) -> PyResult<Self> {
        Ok(PySection { inner: operator::build_section(&weight.inner, &symbol.inner, n, tol).map_err(err)? })
    }

    #[getter]
    fn dim(&self) -> usize {
        self.inner.dim
    }

    fn entry(&self, m: usize, n: usize) -> PyResult<Complex64> {
        if m >= self.inner.dim || n >= self.inner.dim {
            return Err(PyValueError::new_err("index out of range"));
        }
        Ok(self.inner.entry(m, n))
    }

    /// Rows of the section matrix.
    fn to_list(&self) -> Vec<Vec<Complex64>> {
        let d = self.inner.dim;
        (0..d).map(|m| (0..d).map(|n| self.inner.entry(m, n)).collect()).collect()
    }

    fn column_norm(&self, n: usize) -> f64 {
        self.inner.column_norm(n)
    }

    #[pyo3(signature = (iters = NORM_ITER_CAP, tol = 1e-10))]
    fn norm<'py>(&self, py: Python<'py>, iters: usize, tol: f64) -> PyResult<Bound<'py, PyAny>> {
        to_py(py, &operator::norm_report(&self.inner, iters, tol))
    }
}

#[pyfunction]
#[pyo3(signature = (weight, symbol, n_list, iters = 1000))]
fn divergence_probe<'py>(py: Python<'py>, weight: &PyWeight, symbol: &PySymbol, n_list: Vec<usize>, iters: usize) -> PyResult<Bound<'py, PyAny>> {
    let opts = DivergenceOptions { iters, ..DivergenceOptions::default() };
    to_py(py, &operator::divergence_probe(&weight.inner, &symbol.inner, &n_list, &opts).map_err(err)?)
}

#[pyfunction]
#[pyo3(signature = (weight, k_max = 2, max_index = 1 << 16))]
fn counterexample<'py>(py: Python<'py>, weight: &PyWeight, k_max: usize, max_index: u64) -> PyResult<Bound<'py, PyAny>> {
    let opts = CounterexampleOptions { k_max, max_index, ..Default::default() };
    let (_, plan) = build_counterexample(&weight.inner, &opts).map_err(err)?;
    to_py(py, &plan)
}

/// I = ∫_0^π e^{i(n V_a(x) − m x)} dx and the coefficient Re I/π of z^m in T_a^n.
#[pyfunction]
#[pyo3(signature = (a, m, n, tol = 1e-11))]
fn oscillatory_integral(a: f64, m: f64, n: f64, tol: f64) -> PyResult<(Complex64, f64)> {
    let r = asymptotics::oscillatory_i(a, m, n, tol).map_err(err)?;
    Ok((r.value, r.coefficient))
}

#[pyfunction]
fn mean_lower_bound(m: u64, n: u64) -> PyResult<f64> {
    Ok(asymptotics::mean_lower_bound(m, n, &MeanGrid::default()).map_err(err)?.value)
}

#[pyfunction]
#[pyo3(signature = (kind, trials = 200, dim = 64, seed = 0))]
fn schur_check<'py>(py: Python<'py>, kind: &str, trials: usize, dim: usize, seed: u64) -> PyResult<Bound<'py, PyAny>> {
    let k: SchurKind = kind.parse().map_err(err)?;
    to_py(py, &operator::schur_check(k, trials, dim, seed).map_err(err)?)
}

/// Run a named verification suite and return its records.
#[pyfunction]
#[pyo3(signature = (name, seed = None))]
fn verify<'py>(py: Python<'py>, name: &str, seed: Option<u64>) -> PyResult<Bound<'py, PyAny>> {
    let suite: Suite = name.parse().map_err(err)?;
    let mut opts = SuiteOptions::default();
    if let Some(s) = seed {
        opts.seed = s;
    }
    let out = py.detach(|| run_suite(suite, &opts)).map_err(err)?;
    to_py(py, &out.result)
}

#[pymodule]
fn pyh2beta(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyWeight>()?;
    m.add_class::<PySymbol>()?;
    m.add_class::<PySection>()?;
    m.add_function(wrap_pyfunction!(divergence_probe, m)?)?;
    m.add_function(wrap_pyfunction!(counterexample, m)?)?;
    m.add_function(wrap_pyfunction!(oscillatory_integral, m)?)?;
    m.add_function(wrap_pyfunction!(mean_lower_bound, m)?)?;
    m.add_function(wrap_pyfunction!(schur_check, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    Ok(())
}
