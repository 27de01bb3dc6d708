//! Python bindings. Reports cross the boundary as the same JSON documents the
//! `vii` command prints, decoded into plain dicts and lists.

use std::path::PathBuf;

use pyo3::create_exception;
use pyo3::exceptions::{PyException, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;
use serde_json::Value;

use vii_lattice::config::{Curve, CurveKind};
use vii_lattice::enumerate::DEFAULT_CAP;
use vii_lattice::report::{self, ConfigFile, Exit, Outcome};
use vii_lattice::{families, lattice, linalg, selftest};

create_exception!(pyvii, InconsistentError, PyException, "An accepted result failed its independent recheck.");
create_exception!(pyvii, CapExceededError, PyException, "The enumeration size cap was exceeded.");

fn to_py(py: Python<'_>, v: &Value) -> PyResult<Py<PyAny>> {
    let text = serde_json::to_string(v).map_err(|e| PyValueError::new_err(e.to_string()))?;
    Ok(py.import("json")?.call_method1("loads", (text,))?.unbind())
}

fn finish(py: Python<'_>, o: Outcome) -> PyResult<Py<PyAny>> {
    let msg = o.error.clone().unwrap_or_default();
    match o.exit {
        Exit::Ok => to_py(py, o.report.as_ref().unwrap_or(&Value::Null)),
        Exit::InvalidInput => Err(PyValueError::new_err(msg)),
        Exit::Inconsistent => Err(InconsistentError::new_err(msg)),
        Exit::CapRefused => Err(CapExceededError::new_err(msg)),
    }
}

fn kind_of(name: &str) -> PyResult<CurveKind> {
    match name {
        "smooth_rational" => Ok(CurveKind::SmoothRational),
        "nodal_rational" => Ok(CurveKind::NodalRational),
        "elliptic" => Ok(CurveKind::Elliptic),
        other => Err(PyValueError::new_err(format!(
            "unknown curve kind {other:?}; expected smooth_rational, nodal_rational or elliptic"
        ))),
    }
}

/// A curve configuration: `b2`, curves as `(id, kind, self_int)` and
/// intersections as `(id, id, multiplicity)`.
#[pyclass(name = "CurveConfig", module = "pyvii", frozen)]
struct PyCurveConfig {
    inner: vii_lattice::CurveConfig,
}

impl PyCurveConfig {
    fn checked<T>(&self, f: impl FnOnce(&vii_lattice::CurveConfig, Value) -> T) -> Result<T, Outcome> {
        let (cfg, validation) = report::validated(self.inner.clone())?;
        Ok(f(&cfg, validation))
    }
}

#[pymethods]
impl PyCurveConfig {
    #[new]
    #[pyo3(signature = (b2, curves, intersections = Vec::new()))]
    fn new(b2: usize, curves: Vec<(u32, String, i64)>, intersections: Vec<(u32, u32, u32)>) -> PyResult<Self> {
        let curves = curves
            .into_iter()
            .map(|(id, kind, s)| Ok(Curve::new(id, kind_of(&kind)?, s)))
            .collect::<PyResult<Vec<_>>>()?;
        Ok(Self { inner: vii_lattice::CurveConfig::new(b2, curves, intersections) })
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        ConfigFile::parse(text).map(|f| Self { inner: f.to_config() }).map_err(PyValueError::new_err)
    }

    #[staticmethod]
    fn read(path: PathBuf) -> PyResult<Self> {
        ConfigFile::read(&path).map(|f| Self { inner: f.to_config() }).map_err(PyValueError::new_err)
    }

    /// The config-file document for this configuration.
    fn to_json(&self) -> String {
        ConfigFile::from_config(&self.inner).to_json()
    }

    #[getter]
    fn b2(&self) -> usize {
        self.inner.b2()
    }

    #[getter]
    fn curves(&self) -> Vec<(u32, String, i64)> {
        self.inner.curves().iter().map(|c| (c.id, c.kind.to_string(), c.self_int)).collect()
    }

    fn validate(&self, py: Python<'_>) -> PyResult<Py<PyAny>> {
        to_py(py, &serde_json::to_value(self.inner.validate()).expect("serializable"))
    }

    fn intersection_matrix(&self) -> PyResult<Vec<Vec<i64>>> {
        self.inner.intersection_matrix().map(|m| m.rows().to_vec()).map_err(|e| PyValueError::new_err(e.to_string()))
    }

    /// Exact determinant, as a decimal string.
    fn determinant(&self) -> PyResult<String> {
        self.inner.intersection_matrix().map(|m| m.determinant().to_string()).map_err(|e| PyValueError::new_err(e.to_string()))
    }

    /// One of "definite", "semidefinite" or "neither".
    fn definiteness(&self) -> PyResult<String> {
        let m = self.inner.intersection_matrix().map_err(|e| PyValueError::new_err(e.to_string()))?;
        let d = linalg::is_negative_definite(&m).map_err(|e| PyValueError::new_err(e.to_string()))?;
        Ok(serde_json::to_value(d).expect("serializable").as_str().unwrap_or_default().to_string())
    }

    fn sigma(&self, py: Python<'_>) -> PyResult<Py<PyAny>> {
        let r = self.inner.sigma_classify().map_err(|e| PyValueError::new_err(e.to_string()))?;
        to_py(py, &serde_json::to_value(r).expect("serializable"))
    }

    /// The full classification report.
    fn classify(&self, py: Python<'_>) -> PyResult<Py<PyAny>> {
        finish(py, self.checked(report::classify_config).unwrap_or_else(|o| o))
    }

    #[pyo3(signature = (m = 1))]
    fn nac(&self, py: Python<'_>, m: u64) -> PyResult<Py<PyAny>> {
        finish(py, self.checked(|c, v| report::nac_config(c, v, m)).unwrap_or_else(|o| o))
    }

    /// The index, or None when there is no NAC divisor.
    fn index(&self, py: Python<'_>) -> PyResult<Option<u64>> {
        let r = finish(py, self.checked(report::index_config).unwrap_or_else(|o| o))?;
        r.bind(py).get_item("index")?.extract()
    }

    #[pyo3(signature = (cap = DEFAULT_CAP, max_solutions = None))]
    fn enumerate(&self, py: Python<'_>, cap: usize, max_solutions: Option<usize>) -> PyResult<Py<PyAny>> {
        finish(py, self.checked(|c, v| report::enumerate_config(c, v, max_solutions, cap)).unwrap_or_else(|o| o))
    }

    fn __eq__(&self, other: &Self) -> bool {
        self.inner == other.inner
    }

    fn __repr__(&self) -> String {
        format!("CurveConfig(b2={}, curves={})", self.inner.b2(), self.inner.curves().len())
    }
}

/// `a . b` in the lattice with `L_i . L_j = -delta_ij`.
#[pyfunction]
fn intersect(a: Vec<i64>, b: Vec<i64>) -> PyResult<i64> {
    let class = |v| lattice::LatticeClass::new(v).map_err(|e| PyValueError::new_err(e.to_string()));
    lattice::intersect(&class(a)?, &class(b)?).map_err(|e| PyValueError::new_err(e.to_string()))
}

/// A nodal curve of square `1 - n` followed by a chain of `p` (-2)-curves,
/// with `b2 = n`.
#[pyfunction]
fn singrat(n: usize, p: usize) -> PyResult<PyCurveConfig> {
    if n == 0 || p >= n {
        return Err(PyValueError::new_err("singrat needs 0 <= p < n"));
    }
    Ok(PyCurveConfig { inner: families::singrat(n, p) })
}

/// Germ verdict for `kind` in hopf-strong, hopf-primary, enoki. Values may be
/// numbers or strings such as "1/2" or "0.3+0.1i"; for enoki `a` may be a list.
#[pyfunction]
#[pyo3(signature = (kind, **params))]
fn germ(py: Python<'_>, kind: &str, params: Option<&Bound<'_, PyDict>>) -> PyResult<Py<PyAny>> {
    let mut args = Vec::new();
    if let Some(params) = params {
        for (k, v) in params.iter() {
            let key: String = k.extract()?;
            let value = match v.extract::<Vec<Bound<'_, PyAny>>>() {
                Ok(list) if !v.is_instance_of::<pyo3::types::PyString>() => {
                    list.iter().map(|x| x.str().map(|s| s.to_string())).collect::<PyResult<Vec<_>>>()?.join(",")
                }
                _ => v.str()?.to_string(),
            };
            args.push(format!("{key}={value}"));
        }
    }
    finish(py, report::cmd_germ(kind, &args, None))
}

/// Runs the verification suites; a single one when `suite` is given.
#[pyfunction]
#[pyo3(signature = (seed = selftest::DEFAULT_SEED, suite = None))]
fn run_selftest(py: Python<'_>, seed: u64, suite: Option<&str>) -> PyResult<Py<PyAny>> {
    let r = match suite {
        Some(name) => {
            let s = selftest::run_suite(name, seed).ok_or_else(|| PyValueError::new_err(format!("unknown suite {name:?}")))?;
            let passed = usize::from(s.passed);
            selftest::SelftestReport { seed, passed, failed: 1 - passed, suites: vec![s] }
        }
        None => py.detach(|| selftest::run_all(seed)),
    };
    to_py(py, &serde_json::to_value(&r).expect("serializable"))
}

#[pymodule]
pub fn pyvii(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyCurveConfig>()?;
    m.add_function(wrap_pyfunction!(intersect, m)?)?;
    m.add_function(wrap_pyfunction!(singrat, m)?)?;
    m.add_function(wrap_pyfunction!(germ, m)?)?;
    m.add_function(wrap_pyfunction!(run_selftest, m)?)?;
    m.add("SUITES", selftest::SUITES.to_vec())?;
    m.add("DEFAULT_CAP", DEFAULT_CAP)?;
    m.add("InconsistentError", m.py().get_type::<InconsistentError>())?;
    m.add("CapExceededError", m.py().get_type::<CapExceededError>())?;
    Ok(())
}
