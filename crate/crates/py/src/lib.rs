use pyo3::exceptions::{PyMemoryError, PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use semispec::kernel::{construct, verify_axioms};
use semispec::localize;
use semispec::spectra::{enumerate, SpectrumKind};
use semispec::verify::{self, VerifyConfig, CHECKS};
use semispec::{Error, FiniteSemiring};

fn to_py(e: Error) -> PyErr {
    match e {
        Error::Parse(_) | Error::Json(_) | Error::Structural(_) | Error::Precondition(_) => {
            PyValueError::new_err(e.to_string())
        }
        Error::Resource(_) | Error::BoundExhausted(_) => PyMemoryError::new_err(e.to_string()),
        _ => PyRuntimeError::new_err(e.to_string()),
    }
}

fn kind(name: &str) -> PyResult<SpectrumKind> {
    match name {
        "spec" => Ok(SpectrumKind::Spec),
        "sp" => Ok(SpectrumKind::Sp),
        _ => Err(PyValueError::new_err(format!("unknown spectrum kind {name:?}"))),
    }
}

/// A finite commutative semiring given by its tables.
#[pyclass(name = "Semiring", frozen)]
pub struct PySemiring {
    inner: FiniteSemiring,
}

#[pymethods]
impl PySemiring {
    /// One of the built-in constructions, e.g. `line`, `z6`, `chain3`.
    #[staticmethod]
    fn builtin(name: &str) -> PyResult<Self> {
        construct::by_name(name)
            .map(|inner| PySemiring { inner })
            .ok_or_else(|| PyValueError::new_err(format!("no built-in semiring named {name:?}")))
    }

    /// Parses the table JSON format.
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        FiniteSemiring::from_json(text).map(|inner| PySemiring { inner }).map_err(to_py)
    }

    fn to_json(&self) -> String {
        self.inner.to_json()
    }

    fn __len__(&self) -> usize {
        self.inner.size()
    }

    fn __repr__(&self) -> String {
        format!("Semiring({}, {} elements)", self.inner.label(), self.inner.size())
    }

    fn names(&self) -> Vec<String> {
        self.inner.elements().map(|x| self.inner.name(x).to_string()).collect()
    }

    fn add(&self, x: usize, y: usize) -> PyResult<usize> {
        self.check(x)?;
        self.check(y)?;
        Ok(self.inner.add(x, y))
    }

    fn mul(&self, x: usize, y: usize) -> PyResult<usize> {
        self.check(x)?;
        self.check(y)?;
        Ok(self.inner.mul(x, y))
    }

    fn is_valid(&self) -> bool {
        verify_axioms(&self.inner).is_valid()
    }

    /// Points of Spec (`kind="spec"`) or Sp (`kind="sp"`), each as the
    /// sorted element indices of the ideal or kernel.
    #[pyo3(signature = (kind="spec", limit=16))]
    fn points(&self, kind: &str, limit: usize) -> PyResult<Vec<Vec<usize>>> {
        let space = enumerate(&self.inner, self::kind(kind)?, limit).map_err(to_py)?;
        Ok(space.points.iter().map(|p| p.iter().collect()).collect())
    }

    /// The Zariski topology as JSON.
    #[pyo3(signature = (kind="spec", limit=16))]
    fn topology(&self, kind: &str, limit: usize) -> PyResult<String> {
        Ok(enumerate(&self.inner, self::kind(kind)?, limit).map_err(to_py)?.to_json())
    }

    fn is_hard(&self) -> bool {
        localize::is_hard(&self.inner)
    }

    /// Localization at the semi-invertible elements, with the canonical map.
    fn harden(&self) -> (PySemiring, Vec<usize>) {
        let h = localize::harden(&self.inner);
        (PySemiring { inner: h.semiring }, h.phi.map)
    }
}

impl PySemiring {
    fn check(&self, x: usize) -> PyResult<()> {
        if x < self.inner.size() {
            Ok(())
        } else {
            Err(PyValueError::new_err(format!("element {x} out of range")))
        }
    }
}

/// Identifiers and descriptions of the verification checks.
#[pyfunction]
fn checks() -> Vec<(&'static str, &'static str)> {
    CHECKS.to_vec()
}

/// Runs a verification check and returns its report as JSON.
#[pyfunction]
fn run_check(py: Python<'_>, id: &str) -> PyResult<String> {
    let cfg = VerifyConfig::default();
    let report = py.detach(|| verify::run(id, &cfg)).map_err(to_py)?;
    Ok(report.to_json())
}

#[pymodule]
fn semispec_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PySemiring>()?;
    m.add_function(wrap_pyfunction!(checks, m)?)?;
    m.add_function(wrap_pyfunction!(run_check, m)?)?;
    Ok(())
}
