//! Python bindings. Elements and sums cross the boundary as JSON strings in the
//! same schema the command-line tool uses.

use std::sync::Arc;

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use ::loopbracket as core;
use core::goldman::verify_goldman;
use core::schema::{
    axiom_report_to_json, bv_element_from_json, bv_element_to_json, formal_sum_to_json, goldman_report_to_json,
    sign_resolution_to_json,
};
use core::{backend, BracketConfig, BracketConvention, BvAlgebra, Error, LoopClass, Presentation, SignConfig, Word};

fn py_err(e: Error) -> PyErr {
    match e {
        Error::NonStabilized { .. } | Error::Degenerate(_) | Error::NoPassingSigns => {
            PyRuntimeError::new_err(e.to_string())
        }
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn parse_json(text: &str) -> PyResult<serde_json::Value> {
    serde_json::from_str(text).map_err(|e| PyValueError::new_err(format!("invalid JSON: {e}")))
}

fn config(depth: usize, tolerance: f64) -> BracketConfig {
    BracketConfig {
        max_conjugator_length: depth,
        tolerance,
        ..BracketConfig::default()
    }
}

/// Freely reduced form of a word.
#[pyfunction]
fn free_reduce(word: &str, genus: usize) -> PyResult<String> {
    let w = Word::parse(word, genus).map_err(py_err)?;
    Ok(w.free_reduce().map_err(py_err)?.to_string())
}

/// Shortest form of a group element (genus >= 2).
#[pyfunction]
fn dehn_reduce(word: &str, genus: usize) -> PyResult<String> {
    let p = Presentation::new(genus).map_err(py_err)?;
    let w = Word::parse(word, genus).map_err(py_err)?;
    Ok(p.dehn_reduce(&w).map_err(py_err)?.to_string())
}

/// Canonical representative of the conjugacy class of a word.
#[pyfunction]
fn canonical_class(word: &str, genus: usize) -> PyResult<String> {
    let p = Presentation::new(genus).map_err(py_err)?;
    Ok(LoopClass::parse(word, &p).map_err(py_err)?.to_string())
}

#[pyfunction]
fn are_conjugate(w1: &str, w2: &str, genus: usize) -> PyResult<bool> {
    let p = Presentation::new(genus).map_err(py_err)?;
    Ok(LoopClass::parse(w1, &p).map_err(py_err)? == LoopClass::parse(w2, &p).map_err(py_err)?)
}

/// Classes of canonical length at most `max_len`, including the trivial class `""`.
#[pyfunction]
fn enumerate_classes(genus: usize, max_len: i64) -> PyResult<Vec<String>> {
    let p = Presentation::new(genus).map_err(py_err)?;
    Ok(p.enumerate_classes(max_len).map_err(py_err)?.iter().map(|c| c.to_string()).collect())
}

/// Goldman bracket of two classes as a formal-sum JSON string.
#[pyfunction]
#[pyo3(signature = (genus, w1, w2, depth = 8, tolerance = 1e-9))]
fn bracket(py: Python<'_>, genus: usize, w1: &str, w2: &str, depth: usize, tolerance: f64) -> PyResult<String> {
    let p = Presentation::new(genus).map_err(py_err)?;
    let x = LoopClass::parse(w1, &p).map_err(py_err)?;
    let y = LoopClass::parse(w2, &p).map_err(py_err)?;
    let engine = backend(genus, config(depth, tolerance)).map_err(py_err)?;
    let sum = py.detach(|| engine.bracket_classes(&x, &y)).map_err(py_err)?;
    Ok(formal_sum_to_json(&sum).to_string())
}

/// Residual of the relator and the smallest `|trace|` over short words.
#[pyfunction]
#[pyo3(signature = (genus, max_length = 6))]
fn rep_check(genus: usize, max_length: usize) -> PyResult<(f64, f64, bool)> {
    let rep = core::Representation::build(genus).map_err(py_err)?;
    let c = rep.check(max_length);
    Ok((c.relator_error, c.min_abs_trace, c.passed))
}

/// Goldman-bracket verification suite; returns the report as JSON.
#[pyfunction]
#[pyo3(signature = (genus, samples = 100, seed = 7, max_class_len = 2, depth = 8))]
fn verify_goldman_suite(
    py: Python<'_>,
    genus: usize,
    samples: usize,
    seed: u64,
    max_class_len: usize,
    depth: usize,
) -> PyResult<String> {
    let engine = backend(genus, config(depth, 1e-9)).map_err(py_err)?;
    let report = py
        .detach(|| verify_goldman(engine.as_ref(), max_class_len, samples, seed))
        .map_err(py_err)?;
    Ok(goldman_report_to_json(&report).to_string())
}

/// The BV algebra of a genus-`g` surface group with a fixed sign configuration.
#[pyclass(name = "BVAlgebra", frozen)]
struct PyBvAlgebra {
    inner: BvAlgebra,
}

#[pymethods]
impl PyBvAlgebra {
    #[new]
    #[pyo3(signature = (genus, signs = None, convention = "shifted", depth = 8))]
    fn new(genus: usize, signs: Option<&str>, convention: &str, depth: usize) -> PyResult<Self> {
        let signs = match signs {
            Some(s) => s.parse::<SignConfig>().map_err(py_err)?,
            None => SignConfig::DEFAULT,
        };
        let convention: BracketConvention = convention.parse().map_err(py_err)?;
        let engine = backend(genus, config(depth, 1e-9)).map_err(py_err)?;
        Ok(PyBvAlgebra {
            inner: BvAlgebra::new(Arc::from(engine), signs).with_convention(convention),
        })
    }

    #[getter]
    fn genus(&self) -> usize {
        self.inner.genus()
    }

    #[getter]
    fn signs(&self) -> String {
        self.inner.signs().to_string()
    }

    fn cup(&self, x: &str, y: &str) -> PyResult<String> {
        let (x, y) = (self.element(x)?, self.element(y)?);
        Ok(bv_element_to_json(&self.inner.cup(&x, &y).map_err(py_err)?).to_string())
    }

    fn delta(&self, x: &str) -> PyResult<String> {
        let x = self.element(x)?;
        Ok(bv_element_to_json(&self.inner.delta(&x).map_err(py_err)?).to_string())
    }

    fn gerstenhaber(&self, x: &str, y: &str) -> PyResult<String> {
        let (x, y) = (self.element(x)?, self.element(y)?);
        Ok(bv_element_to_json(&self.inner.gerstenhaber(&x, &y).map_err(py_err)?).to_string())
    }

    #[pyo3(signature = (samples = 100, seed = 7, max_class_len = 2))]
    fn verify(&self, py: Python<'_>, samples: usize, seed: u64, max_class_len: usize) -> PyResult<String> {
        let report = py
            .detach(|| core::verify_axioms(&self.inner, max_class_len, samples, seed))
            .map_err(py_err)?;
        Ok(axiom_report_to_json(&report).to_string())
    }

    #[pyo3(signature = (samples = 200, seed = 7, max_class_len = 2))]
    fn resolve_signs(&self, py: Python<'_>, samples: usize, seed: u64, max_class_len: usize) -> PyResult<String> {
        let res = py
            .detach(|| core::resolve_signs(&self.inner, max_class_len, samples, seed))
            .map_err(py_err)?;
        Ok(sign_resolution_to_json(&res).to_string())
    }
}

impl PyBvAlgebra {
    fn element(&self, text: &str) -> PyResult<core::BVElement> {
        let x = bv_element_from_json(&parse_json(text)?).map_err(py_err)?;
        if x.genus() != self.inner.genus() {
            return Err(py_err(Error::GenusMismatch {
                left: x.genus(),
                right: self.inner.genus(),
            }));
        }
        Ok(x)
    }
}

#[pymodule]
#[pyo3(name = "loopbracket")]
fn loopbracket_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(free_reduce, m)?)?;
    m.add_function(wrap_pyfunction!(dehn_reduce, m)?)?;
    m.add_function(wrap_pyfunction!(canonical_class, m)?)?;
    m.add_function(wrap_pyfunction!(are_conjugate, m)?)?;
    m.add_function(wrap_pyfunction!(enumerate_classes, m)?)?;
    m.add_function(wrap_pyfunction!(bracket, m)?)?;
    m.add_function(wrap_pyfunction!(rep_check, m)?)?;
    m.add_function(wrap_pyfunction!(verify_goldman_suite, m)?)?;
    m.add_class::<PyBvAlgebra>()?;
    m.add("DEFAULT_SIGNS", SignConfig::DEFAULT.to_string())?;
    Ok(())
}
