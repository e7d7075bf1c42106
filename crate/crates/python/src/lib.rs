//! Python module `bose_casimir`: parameters, polylogarithms, potential and
//! force evaluation, sweeps and the verification suite.

use pyo3::exceptions::{PyArithmeticError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

use bose_casimir::casimir;
use bose_casimir::cli::{evaluate, OutputFormat, SweepConfig, DEFAULT_POINTS};
use bose_casimir::oracles::{run_verification_suite, SuiteConfig};
use bose_casimir::physics::{self, RegimeTag};
use bose_casimir::polylog::{li_series, li_unit_circle, PolylogOrder, SeriesOptions};
use bose_casimir::{Complex64, Error, TermSelector};

fn to_py(e: Error) -> PyErr {
    match e {
        Error::NonFinite(_) => PyArithmeticError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn term(name: &str) -> PyResult<TermSelector> {
    name.parse().map_err(to_py)
}

fn order(s: u32) -> PyResult<PolylogOrder> {
    PolylogOrder::new(s).map_err(to_py)
}

/// Physical parameters; everything defaults to 1 except the magnetic field.
#[pyclass(name = "PhysicalParams", module = "bose_casimir", frozen, skip_from_py_object)]
#[derive(Clone, Copy)]
struct PyParams {
    inner: physics::PhysicalParams,
}

#[pymethods]
impl PyParams {
    #[new]
    #[pyo3(signature = (
        magnetic_field,
        *,
        mass = 1.0,
        charge = 1.0,
        light_speed = 1.0,
        planck_h = 1.0,
        boltzmann_k = 1.0,
        temperature = 1.0,
        electric_field = 1.0,
    ))]
    #[allow(clippy::too_many_arguments)]
    fn new(
        magnetic_field: f64,
        mass: f64,
        charge: f64,
        light_speed: f64,
        planck_h: f64,
        boltzmann_k: f64,
        temperature: f64,
        electric_field: f64,
    ) -> PyResult<Self> {
        let inner = physics::PhysicalParams {
            mass,
            charge,
            light_speed,
            planck_h,
            boltzmann_k,
            temperature,
            electric_field,
            magnetic_field,
        };
        inner.validate().map_err(to_py)?;
        Ok(Self { inner })
    }

    #[getter]
    fn magnetic_field(&self) -> f64 {
        self.inner.magnetic_field
    }

    #[getter]
    fn temperature(&self) -> f64 {
        self.inner.temperature
    }

    #[getter]
    fn electric_field(&self) -> f64 {
        self.inner.electric_field
    }

    fn with_magnetic_field(&self, magnetic_field: f64) -> PyResult<Self> {
        let inner = self.inner.with_magnetic_field(magnetic_field);
        inner.validate().map_err(to_py)?;
        Ok(Self { inner })
    }

    fn with_temperature(&self, temperature: f64) -> PyResult<Self> {
        let inner = self.inner.with_temperature(temperature);
        inner.validate().map_err(to_py)?;
        Ok(Self { inner })
    }

    /// Field at which the field shift changes sign.
    fn critical_field(&self) -> f64 {
        self.inner.critical_field()
    }

    /// `"oscillatory"`, `"decaying"` or `"critical"`.
    fn regime(&self) -> PyResult<&'static str> {
        physics::regime(&self.inner).map(RegimeTag::as_str).map_err(to_py)
    }

    /// Derived scalars: omega_c, hbar, beta, lambda_thermal, field_shift_a.
    fn derived<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyDict>> {
        let ds = physics::derive(&self.inner).map_err(to_py)?;
        let out = PyDict::new(py);
        out.set_item("omega_c", ds.omega_c)?;
        out.set_item("hbar", ds.hbar)?;
        out.set_item("beta", ds.beta)?;
        out.set_item("lambda_thermal", ds.lambda_thermal)?;
        out.set_item("field_shift_a", ds.field_shift_a)?;
        Ok(out)
    }

    fn phi(&self, d: f64) -> PyResult<Complex64> {
        physics::phi_parameter(&self.inner, d).map_err(to_py)
    }

    fn __repr__(&self) -> String {
        let p = &self.inner;
        format!(
            "PhysicalParams(magnetic_field={}, mass={}, charge={}, light_speed={}, planck_h={}, \
             boltzmann_k={}, temperature={}, electric_field={})",
            p.magnetic_field, p.mass, p.charge, p.light_speed, p.planck_h, p.boltzmann_k,
            p.temperature, p.electric_field
        )
    }
}

/// `Li_s(z)` by direct summation, `|z| ≤ 1`.
#[pyfunction]
#[pyo3(signature = (s, z, tol = 1e-10, max_terms = 10_000_000))]
fn polylog(s: u32, z: Complex64, tol: f64, max_terms: u64) -> PyResult<Complex64> {
    let r = li_series(order(s)?, z, SeriesOptions { tol, max_terms }).map_err(to_py)?;
    Ok(r.value)
}

/// `Li_s(e^{iθ})` from the closed unit-circle forms, `s` in 2..=5.
#[pyfunction]
fn polylog_unit_circle(s: u32, theta: f64) -> PyResult<Complex64> {
    li_unit_circle(order(s)?, theta).map_err(to_py)
}

#[pyfunction]
#[pyo3(signature = (params, d, term = "all"))]
fn potential(params: &PyParams, d: f64, term: &str) -> PyResult<Complex64> {
    let sample = casimir::potential_closed(&params.inner, d, self::term(term)?).map_err(to_py)?;
    Ok(sample.value)
}

#[pyfunction]
#[pyo3(signature = (params, d, term = "all", n_max = 100_000))]
fn potential_series(params: &PyParams, d: f64, term: &str, n_max: u64) -> PyResult<Complex64> {
    let sample = casimir::potential_series(&params.inner, d, self::term(term)?, n_max).map_err(to_py)?;
    Ok(sample.value)
}

#[pyfunction]
#[pyo3(signature = (params, d, term = "all"))]
fn force(params: &PyParams, d: f64, term: &str) -> PyResult<Complex64> {
    let sample = casimir::force_closed(&params.inner, d, self::term(term)?).map_err(to_py)?;
    Ok(sample.analytic)
}

/// Central-difference force with step `step_fraction · d`.
#[pyfunction]
#[pyo3(signature = (params, d, term = "all", step_fraction = 1e-6))]
fn force_fd(params: &PyParams, d: f64, term: &str, step_fraction: f64) -> PyResult<Complex64> {
    casimir::force_fd(&params.inner, d, self::term(term)?, step_fraction).map_err(to_py)
}

/// One dict per `(B, d)` point, ordered by `B` then `d`. Without `points` the
/// grid is made dense enough to resolve the oscillation.
#[pyfunction]
#[pyo3(signature = (params, d_min = 0.1, d_max = 3.0, points = None, term = "all"))]
fn sweep<'py>(
    py: Python<'py>,
    params: Vec<PyRef<'py, PyParams>>,
    d_min: f64,
    d_max: f64,
    points: Option<usize>,
    term: &str,
) -> PyResult<Vec<Bound<'py, PyDict>>> {
    let inner: Vec<physics::PhysicalParams> = params.iter().map(|p| p.inner).collect();
    let config = SweepConfig {
        d_min,
        d_max,
        points: points.unwrap_or(DEFAULT_POINTS),
        points_explicit: points.is_some(),
        b_values: inner.iter().map(|p| p.magnetic_field).collect(),
        term: self::term(term)?,
        output_format: OutputFormat::Csv,
    };
    config.validate().map_err(|e| PyValueError::new_err(e.to_string()))?;
    let rows = py.detach(|| evaluate(&config, &inner)).map_err(to_py)?;
    rows.iter()
        .map(|r| {
            let row = PyDict::new(py);
            row.set_item("d", r.d)?;
            row.set_item("B", r.b)?;
            row.set_item("term", r.term.as_str())?;
            row.set_item("potential", Complex64::new(r.potential_re, r.potential_im))?;
            row.set_item("force", Complex64::new(r.force_re, r.force_im))?;
            row.set_item("regime", r.regime.as_str())?;
            Ok(row)
        })
        .collect()
}

/// Runs the oracle suite; one dict per check.
#[pyfunction]
#[pyo3(signature = (params, separation = 1.0, strict_regime = false, tolerance = None))]
fn verify<'py>(
    py: Python<'py>,
    params: &PyParams,
    separation: f64,
    strict_regime: bool,
    tolerance: Option<f64>,
) -> PyResult<Vec<Bound<'py, PyDict>>> {
    let config = SuiteConfig {
        separation,
        strict_regime,
        tolerance_override: tolerance,
    };
    let inner = params.inner;
    let reports = py.detach(|| run_verification_suite(&inner, &config));
    reports
        .iter()
        .map(|r| {
            let out = PyDict::new(py);
            out.set_item("name", &r.name)?;
            out.set_item("lhs", r.lhs)?;
            out.set_item("rhs", r.rhs)?;
            out.set_item("abs_error", r.abs_error)?;
            out.set_item("rel_error", r.rel_error)?;
            out.set_item("tolerance", r.tolerance)?;
            out.set_item("passed", r.passed)?;
            out.set_item("erratum", r.erratum)?;
            out.set_item("expected_failure", r.expected_failure)?;
            out.set_item("failure", r.is_failure())?;
            out.set_item("skipped", r.skipped.as_deref())?;
            out.set_item("note", r.note.as_deref())?;
            Ok(out)
        })
        .collect()
}

#[pymodule(name = "bose_casimir")]
fn extension(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyParams>()?;
    m.add_function(wrap_pyfunction!(polylog, m)?)?;
    m.add_function(wrap_pyfunction!(polylog_unit_circle, m)?)?;
    m.add_function(wrap_pyfunction!(potential, m)?)?;
    m.add_function(wrap_pyfunction!(potential_series, m)?)?;
    m.add_function(wrap_pyfunction!(force, m)?)?;
    m.add_function(wrap_pyfunction!(force_fd, m)?)?;
    m.add_function(wrap_pyfunction!(sweep, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add("TERMS", ["n3", "n4", "n5", "all"])?;
    Ok(())
}
