//! Python bindings: a thin layer over `klrw-core` exchanging plain strings,
//! integers and lists.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use klrw_core::error::Error;
use klrw_core::klrw::relations::relation_suite;
use klrw_core::klrw::{CrossingSign, Problem};
use klrw_core::ladder::ogz::{check_intertwiner as check, elementary_in_block, CFactor};
use klrw_core::multisegment::{enumerate_flavored, FlavoredMultisegment};
use klrw_core::quiver::{classify_with_invariants, orbit_dimension, QuiverRep};
use klrw_core::weights::{chi_minus_power, chi_plus_power, enumerate_gt_patterns, word_of_gt_weight, GTWeight};

fn py_err(e: Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// Text forms of the flavored multisegments of `(m, v, chi)`.
#[pyfunction]
fn multisegments(m: u32, v: Vec<usize>, chi: Vec<i64>) -> PyResult<Vec<String>> {
    let p = Problem::new(m, v, chi).map_err(py_err)?;
    Ok(enumerate_flavored(&p).iter().map(ToString::to_string).collect())
}

/// The good word of a multisegment such as `"{(1),(2,1)@0}"`.
#[pyfunction]
fn good_word(multisegment: &str, m: u32) -> PyResult<String> {
    let ms = FlavoredMultisegment::parse(multisegment, m).map_err(py_err)?;
    Ok(ms.good_word().to_string())
}

/// `(multisegment, orbit_dimension)` of a representation in the JSON schema.
#[pyfunction]
fn classify(rep_json: &str) -> PyResult<(String, usize)> {
    let rep = QuiverRep::from_json(rep_json).map_err(py_err)?;
    let (ms, _) = classify_with_invariants(&rep);
    Ok((ms.to_string(), orbit_dimension(&rep)))
}

#[pyfunction]
fn gt_word(rows: Vec<Vec<i64>>) -> PyResult<String> {
    let w = GTWeight::new(rows).map_err(py_err)?;
    Ok(word_of_gt_weight(&w).to_string())
}

#[pyfunction]
fn gt_pattern_count(chi: Vec<i64>) -> PyResult<usize> {
    Ok(enumerate_gt_patterns(&chi).map_err(py_err)?.len())
}

/// `chi^{+i^a}` when `raise`, else `chi^{-i^a}`; `None` if undefined.
#[pyfunction]
#[pyo3(signature = (chi, i, power = 1, raise = true))]
fn translate(chi: Vec<i64>, i: i64, power: usize, raise: bool) -> Option<Vec<i64>> {
    if raise {
        chi_plus_power(&chi, i, power)
    } else {
        chi_minus_power(&chi, i, power)
    }
}

/// `(checks, failures)` of the local relation suite.
#[pyfunction]
#[pyo3(signature = (max_m = 3, max_strands = 3))]
fn verify_relations(max_m: u32, max_strands: usize) -> (usize, usize) {
    let checks = relation_suite(max_m, max_strands, CrossingSign::Consistent);
    let failures = checks.iter().filter(|c| !c.holds).count();
    (checks.len(), failures)
}

/// Raises an entry `i` of the top row of `rows` and compares both sides
/// with `p = e_k` on the entries equal to `i` and `s` rung dots.
#[pyfunction]
#[pyo3(signature = (rows, i, k = 0, s = 0))]
fn check_intertwiner(rows: Vec<Vec<i64>>, i: i64, k: usize, s: u32) -> PyResult<bool> {
    let lambda = GTWeight::new(rows.clone()).map_err(py_err)?;
    let n = lambda.n();
    let top = chi_plus_power(lambda.row(n), i, 1)
        .ok_or_else(|| PyValueError::new_err(format!("the top row has no entry equal to {i}")))?;
    let mut raised = rows;
    raised[n - 1] = top.clone();
    let lambda_prime = GTWeight::new(raised).map_err(py_err)?;
    let p = elementary_in_block(n, &top, i, k);
    Ok(check(&lambda, &lambda_prime, i, &p, s, CFactor::Full).map_err(py_err)?.holds)
}

#[pymodule]
fn klrw(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(multisegments, m)?)?;
    m.add_function(wrap_pyfunction!(good_word, m)?)?;
    m.add_function(wrap_pyfunction!(classify, m)?)?;
    m.add_function(wrap_pyfunction!(gt_word, m)?)?;
    m.add_function(wrap_pyfunction!(gt_pattern_count, m)?)?;
    m.add_function(wrap_pyfunction!(translate, m)?)?;
    m.add_function(wrap_pyfunction!(verify_relations, m)?)?;
    m.add_function(wrap_pyfunction!(check_intertwiner, m)?)?;
    Ok(())
}
