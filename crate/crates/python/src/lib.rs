//! Python bindings: terms over the rationals and the main operations.

use std::collections::hash_map::DefaultHasher;
use std::hash::{Hash, Hasher};

use algcps::harness::{check_lemma, Budgets, GenConfig, LemmaId};
use algcps::rewrite::{self, Reachability, Trace};
use algcps::{canonicalize_linear, inverse, Calculus, Direction, Rational, Term};
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

fn value_error(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn calculus(s: &str) -> PyResult<Calculus> {
    s.parse().map_err(value_error)
}

fn direction(s: &str) -> PyResult<Direction> {
    s.parse().map_err(value_error)
}

/// A term with rational coefficients. Equality is alpha-equivalence.
#[pyclass(name = "Term", module = "algcps_py", frozen, skip_from_py_object)]
#[derive(Clone)]
pub struct PyTerm {
    inner: Term<Rational>,
}

impl From<Term<Rational>> for PyTerm {
    fn from(inner: Term<Rational>) -> Self {
        PyTerm { inner }
    }
}

#[pymethods]
impl PyTerm {
    #[new]
    fn new(text: &str) -> PyResult<Self> {
        algcps::parse(text).map(PyTerm::from).map_err(value_error)
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Term({:?})", self.inner.to_string())
    }

    fn __eq__(&self, other: &PyTerm) -> bool {
        self.inner.alpha_eq(&other.inner)
    }

    fn __hash__(&self) -> u64 {
        let mut h = DefaultHasher::new();
        self.inner.key().hash(&mut h);
        h.finish()
    }

    fn is_value(&self) -> bool {
        self.inner.is_value()
    }

    fn is_base_value(&self) -> bool {
        self.inner.is_base_value()
    }

    fn size(&self) -> usize {
        self.inner.size()
    }

    fn free_vars(&self) -> Vec<String> {
        self.inner
            .free_vars()
            .iter()
            .map(|v| v.to_string())
            .collect()
    }

    /// Normal form under the vector-space rules.
    fn canonical(&self) -> PyTerm {
        canonicalize_linear(&self.inner).into()
    }
}

type PyStep = (String, String, PyTerm);

fn steps(trace: &Trace<Rational>) -> Vec<PyStep> {
    trace
        .steps
        .iter()
        .map(|s| {
            (
                s.rule.to_string(),
                s.path.to_string(),
                s.target.clone().into(),
            )
        })
        .collect()
}

#[pyfunction]
fn parse(text: &str) -> PyResult<PyTerm> {
    PyTerm::new(text)
}

/// Returns `(outcome, result, steps)` with outcome one of value, stuck, timeout.
#[pyfunction]
#[pyo3(signature = (term, calculus_name, max_steps = rewrite::DEFAULT_MAX_STEPS))]
fn normalize(
    term: &PyTerm,
    calculus_name: &str,
    max_steps: usize,
) -> PyResult<(String, PyTerm, Vec<PyStep>)> {
    let n = rewrite::normalize(&term.inner, calculus(calculus_name)?, max_steps);
    let outcome = format!("{:?}", n.outcome).to_lowercase();
    Ok((outcome, n.result().clone().into(), steps(&n.trace)))
}

/// Returns the witness steps, or `None` if the target is not reachable.
/// Raises if the state budget runs out first.
#[pyfunction]
#[pyo3(signature = (source, target, calculus_name, max_states = rewrite::DEFAULT_MAX_STATES))]
fn reachable(
    source: &PyTerm,
    target: &PyTerm,
    calculus_name: &str,
    max_states: usize,
) -> PyResult<Option<Vec<PyStep>>> {
    match rewrite::reachable(
        &source.inner,
        &target.inner,
        calculus(calculus_name)?,
        max_states,
    ) {
        Reachability::Reached(t) => Ok(Some(steps(&t))),
        Reachability::Unreachable { .. } => Ok(None),
        Reachability::Exhausted { states } => Err(PyValueError::new_err(format!(
            "state budget exhausted after {states} states"
        ))),
    }
}

#[pyfunction]
#[pyo3(signature = (term, dir, apply_k = false))]
fn cps(term: &PyTerm, dir: &str, apply_k: bool) -> PyResult<PyTerm> {
    let dir = direction(dir)?;
    let r = if apply_k {
        algcps::cps::cps_applied(&term.inner, dir)
    } else {
        algcps::cps(&term.inner, dir)
    };
    r.map(PyTerm::from).map_err(value_error)
}

#[pyfunction]
fn colon(term: &PyTerm, cont: &PyTerm, dir: &str) -> PyResult<PyTerm> {
    algcps::colon(&term.inner, &cont.inner, direction(dir)?)
        .map(PyTerm::from)
        .map_err(value_error)
}

#[pyfunction]
fn classify(term: &PyTerm, dir: &str) -> PyResult<String> {
    Ok(inverse::classify(&term.inner, direction(dir)?).to_string())
}

#[pyfunction]
fn invert(term: &PyTerm, dir: &str) -> PyResult<PyTerm> {
    inverse::invert(&term.inner, direction(dir)?)
        .map(PyTerm::from)
        .map_err(value_error)
}

/// Outcome of one property check.
#[pyclass(name = "CheckReport", module = "algcps_py", frozen, get_all)]
pub struct PyCheckReport {
    check: String,
    direction: String,
    attempted: usize,
    passed: usize,
    inconclusive: usize,
    /// One `(shrunk input, detail)` pair per failure.
    failures: Vec<(Vec<String>, String)>,
    summary: String,
}

#[pyfunction]
#[pyo3(signature = (lemma, dir, seed = 0, instances = 100, depth = 5, max_states = rewrite::DEFAULT_MAX_STATES))]
fn check(
    lemma: &str,
    dir: &str,
    seed: u64,
    instances: usize,
    depth: u32,
    max_states: usize,
) -> PyResult<PyCheckReport> {
    let id: LemmaId = lemma.parse().map_err(value_error)?;
    let cfg = GenConfig::<Rational> {
        seed,
        max_depth: depth,
        ..GenConfig::default()
    };
    let budgets = Budgets {
        instances,
        max_states,
        ..Budgets::default()
    };
    let r = check_lemma(id, direction(dir)?, &cfg, &budgets);
    Ok(PyCheckReport {
        check: r.check.to_string(),
        direction: r.direction.to_string(),
        attempted: r.attempted,
        passed: r.passed,
        inconclusive: r.inconclusive,
        failures: r
            .failures
            .iter()
            .map(|f| (f.shrunk.clone(), f.detail.clone()))
            .collect(),
        summary: r.summary(),
    })
}

#[pymodule]
fn algcps_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyTerm>()?;
    m.add_class::<PyCheckReport>()?;
    m.add_function(wrap_pyfunction!(parse, m)?)?;
    m.add_function(wrap_pyfunction!(normalize, m)?)?;
    m.add_function(wrap_pyfunction!(reachable, m)?)?;
    m.add_function(wrap_pyfunction!(cps, m)?)?;
    m.add_function(wrap_pyfunction!(colon, m)?)?;
    m.add_function(wrap_pyfunction!(classify, m)?)?;
    m.add_function(wrap_pyfunction!(invert, m)?)?;
    m.add_function(wrap_pyfunction!(check, m)?)?;
    Ok(())
}
