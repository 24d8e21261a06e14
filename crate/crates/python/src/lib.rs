//! Python bindings. Structured results cross the boundary as JSON strings.

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use plumbline::links::{associated_link, jones as jones_poly, kauffman_bracket, parse_pd, write_pd};
use plumbline::theorems::{self, certify, Manifold};
use plumbline::trees::parse_tree_text;
use plumbline::KnotRecord;

fn value_err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

#[pyfunction]
fn en_bound(n: u32) -> PyResult<u32> {
    theorems::en_bound(n).map_err(value_err)
}

/// PD code of the associated link of a tree in edge-list text form.
#[pyfunction]
fn associated_link_pd(tree: &str) -> PyResult<String> {
    let t = parse_tree_text(tree).map_err(value_err)?;
    Ok(write_pd(&associated_link(&t)))
}

#[pyfunction]
fn bracket(pd: &str) -> PyResult<String> {
    let l = parse_pd(pd).map_err(value_err)?;
    Ok(kauffman_bracket(&l).map_err(value_err)?.format_in_a())
}

#[pyfunction]
fn jones(pd: &str) -> PyResult<String> {
    let l = parse_pd(pd).map_err(value_err)?;
    let p = jones_poly(&l).map_err(value_err)?;
    Ok(p.format_in_t().unwrap_or_else(|| p.format_in_a()))
}

/// Certificate JSON for one knot. `manifold` takes the CLI names.
#[pyfunction]
#[pyo3(signature = (name, manifold, u=None, c4=None, g4=None))]
fn certify_knot(name: &str, manifold: &str, u: Option<u32>, c4: Option<u32>, g4: Option<u32>) -> PyResult<String> {
    let m: Manifold = manifold.parse().map_err(value_err)?;
    let cert = certify(&KnotRecord::new(name, u, c4, g4), &m).map_err(value_err)?;
    Ok(cert.to_json())
}

/// `(passed, report)` for a certificate JSON string.
#[pyfunction]
fn verify_certificate(json: &str) -> PyResult<(bool, String)> {
    let r = theorems::verify_certificate(json).map_err(|e| PyRuntimeError::new_err(e.to_string()))?;
    Ok((r.passed(), r.to_string()))
}

#[pymodule]
fn plumbline_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(en_bound, m)?)?;
    m.add_function(wrap_pyfunction!(associated_link_pd, m)?)?;
    m.add_function(wrap_pyfunction!(bracket, m)?)?;
    m.add_function(wrap_pyfunction!(jones, m)?)?;
    m.add_function(wrap_pyfunction!(certify_knot, m)?)?;
    m.add_function(wrap_pyfunction!(verify_certificate, m)?)?;
    Ok(())
}
