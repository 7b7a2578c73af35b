//! Python bindings: fields, codes, decoding, bounds and trials.

use std::sync::Arc;

use pyo3::exceptions::{PyValueError, PyZeroDivisionError};
use pyo3::prelude::*;
use repcode::bounds;
use repcode::galois::FieldDescriptor;
use repcode::rscode::EvalPoints;
use repcode::simulator::{self, ErrorModel, MessageMode, TrialConfig};

fn err(e: repcode::Error) -> PyErr {
    match e {
        repcode::Error::Domain(_) => PyZeroDivisionError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn strategy(name: &str, b: Option<usize>) -> PyResult<repcode::AssignmentStrategy> {
    match (name, b) {
        ("count", None) => Ok(repcode::AssignmentStrategy::Count),
        ("count", Some(_)) => Err(PyValueError::new_err("b only applies to the threshold strategy")),
        ("threshold", Some(b)) => Ok(repcode::AssignmentStrategy::Threshold { b }),
        ("threshold", None) => Err(PyValueError::new_err("threshold strategy needs b")),
        (other, _) => Err(PyValueError::new_err(format!("unknown strategy '{other}'"))),
    }
}

fn field_descriptor(field: Option<&str>, n: usize) -> PyResult<FieldDescriptor> {
    match field {
        Some(s) => FieldDescriptor::parse(s).map_err(err),
        None => {
            let m = (1..=16).find(|&m| (1usize << m) > n).ok_or_else(|| PyValueError::new_err("n too large"))?;
            Ok(FieldDescriptor { p: 2, m, modulus: None })
        }
    }
}

#[pyclass(frozen, name = "Field")]
struct PyField {
    inner: Arc<repcode::Field>,
}

#[pymethods]
impl PyField {
    /// GF(p^m) with the built-in modulus; elements are canonical indices.
    #[new]
    fn new(p: u32, m: u32) -> PyResult<Self> {
        Ok(Self { inner: repcode::Field::new(p, m).map_err(err)?.shared() })
    }

    #[getter]
    fn order(&self) -> u32 {
        self.inner.order()
    }

    #[getter]
    fn characteristic(&self) -> u32 {
        self.inner.characteristic()
    }

    fn add(&self, a: u32, b: u32) -> PyResult<u32> {
        let f = &self.inner;
        Ok(f.add(f.elem(a).map_err(err)?, f.elem(b).map_err(err)?).index())
    }

    fn mul(&self, a: u32, b: u32) -> PyResult<u32> {
        let f = &self.inner;
        Ok(f.mul(f.elem(a).map_err(err)?, f.elem(b).map_err(err)?).index())
    }

    fn inv(&self, a: u32) -> PyResult<u32> {
        let f = &self.inner;
        Ok(f.inv(f.elem(a).map_err(err)?).map_err(err)?.index())
    }

    fn pow(&self, a: u32, e: u64) -> PyResult<u32> {
        let f = &self.inner;
        Ok(f.pow(f.elem(a).map_err(err)?, e).index())
    }

    fn __repr__(&self) -> String {
        format!("Field({})", self.inner)
    }
}

#[pyclass(frozen, get_all, name = "Candidate")]
struct PyCandidate {
    message: Vec<u32>,
    codeword: Vec<u32>,
    distance: usize,
    score: u64,
}

#[pymethods]
impl PyCandidate {
    fn __repr__(&self) -> String {
        format!("Candidate(message={:?}, distance={}, score={})", self.message, self.distance, self.score)
    }
}

/// An [n, k] Reed-Solomon code repeated l times.
#[pyclass(frozen, name = "RepeatedCode")]
struct PyRepeatedCode {
    inner: repcode::RepeatedCode,
}

#[pymethods]
impl PyRepeatedCode {
    #[new]
    #[pyo3(signature = (n, k, l, field=None, points=None))]
    fn new(n: usize, k: usize, l: usize, field: Option<&str>, points: Option<Vec<u32>>) -> PyResult<Self> {
        let descriptor = repcode::CodeDescriptor {
            field: field_descriptor(field, n)?,
            n,
            k,
            eval_points: points.map_or_else(EvalPoints::default, EvalPoints::Explicit),
        };
        let code = descriptor.build().map_err(err)?;
        Ok(Self { inner: repcode::RepeatedCode::new(code, l).map_err(err)? })
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.inner().n()
    }

    #[getter]
    fn k(&self) -> usize {
        self.inner.dimension()
    }

    #[getter]
    fn l(&self) -> usize {
        self.inner.repetitions()
    }

    #[getter]
    fn field(&self) -> PyField {
        PyField { inner: self.inner.inner().field().clone() }
    }

    /// Codeword of the constituent code for a message (coefficients, lowest first).
    fn encode_inner(&self, message: Vec<u32>) -> PyResult<Vec<u32>> {
        let f = self.inner.field();
        let msg = repcode::UniPoly::from_indices(f, &message).map_err(err)?;
        Ok(self.inner.inner().encode(&msg).map_err(err)?.symbols().iter().map(|e| e.index()).collect())
    }

    /// The repeated codeword as l rows of n symbols.
    fn encode(&self, message: Vec<u32>) -> PyResult<Vec<Vec<u32>>> {
        let row = self.encode_inner(message)?;
        Ok(vec![row; self.inner.repetitions()])
    }

    /// Nonzero multiplicities as (position, value, m), positions from 0.
    #[pyo3(signature = (rows, strategy="count", b=None))]
    fn assign(&self, rows: Vec<Vec<u32>>, strategy: &str, b: Option<usize>) -> PyResult<Vec<(usize, u32, u32)>> {
        let word = self.word(&rows)?;
        let m = repcode::assign_multiplicities(&word, self::strategy(strategy, b)?).map_err(err)?;
        Ok(m.entries().map(|(i, v, m)| (i, v.index(), m)).collect())
    }

    /// Candidate list, nearest first; empty on decoding failure.
    #[pyo3(signature = (rows, strategy="count", b=None))]
    fn decode(&self, rows: Vec<Vec<u32>>, strategy: &str, b: Option<usize>) -> PyResult<Vec<PyCandidate>> {
        let word = self.word(&rows)?;
        let out = repcode::decode(&self.inner, &word, self::strategy(strategy, b)?).map_err(err)?;
        Ok(out
            .candidates
            .into_iter()
            .map(|c| PyCandidate {
                message: (0..self.inner.dimension()).map(|i| c.message.coeff(i).index()).collect(),
                codeword: c.inner.symbols().iter().map(|e| e.index()).collect(),
                distance: c.distance,
                score: c.score,
            })
            .collect())
    }

    fn __repr__(&self) -> String {
        let c = self.inner.inner();
        format!("RepeatedCode(n={}, k={}, l={}, field={})", c.n(), c.k(), self.inner.repetitions(), c.field())
    }
}

impl PyRepeatedCode {
    fn word(&self, rows: &[Vec<u32>]) -> PyResult<repcode::ReceivedWord> {
        let f = self.inner.field();
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|&i| f.elem(i)).collect::<repcode::Result<Vec<_>>>())
            .collect::<repcode::Result<Vec<_>>>()
            .map_err(err)?;
        let word = repcode::ReceivedWord::from_rows(&rows).map_err(err)?;
        if word.blocks() != self.inner.repetitions() || word.positions() != self.inner.inner().n() {
            return Err(PyValueError::new_err(format!(
                "expected {} rows of {} symbols",
                self.inner.repetitions(),
                self.inner.inner().n()
            )));
        }
        Ok(word)
    }
}

type BoundRow = (String, Option<String>, bool, String);

/// Every closed-form bound as (name, value, applicable, condition).
#[pyfunction]
#[pyo3(signature = (n, k, l, b=None))]
fn bound_report(n: u64, k: u64, l: u64, b: Option<u64>) -> PyResult<Vec<BoundRow>> {
    Ok(bounds::report(n, k, l, b)
        .map_err(err)?
        .into_iter()
        .map(|r| (r.name, r.value, r.applicable, r.condition))
        .collect())
}

#[pyfunction]
fn bound_assignment2(n: u64, k: u64, l: u64, b: u64) -> PyResult<i64> {
    bounds::bound_assignment2(n, k, l, b).map_err(err)
}

/// Monte-Carlo trials; returns (successes, trials, mean list size, median decode seconds).
#[pyfunction]
#[pyo3(signature = (n, k, l, tau, trials, seed, strategy="count", b=None, field=None, threads=None))]
#[allow(clippy::too_many_arguments)]
fn run_trials(
    py: Python<'_>,
    n: usize,
    k: usize,
    l: usize,
    tau: usize,
    trials: usize,
    seed: u64,
    strategy: &str,
    b: Option<usize>,
    field: Option<&str>,
    threads: Option<usize>,
) -> PyResult<(usize, usize, f64, f64)> {
    let config = TrialConfig {
        code: repcode::CodeDescriptor { field: field_descriptor(field, n)?, n, k, eval_points: EvalPoints::default() },
        l,
        strategy: self::strategy(strategy, b)?,
        tau,
        trials,
        seed,
        errors: ErrorModel::default(),
        message: MessageMode::Zero,
    };
    let report =
        py.detach(|| simulator::with_threads(threads, || simulator::run_trials(&config))).map_err(err)?.map_err(err)?;
    Ok((report.successes, report.trials, report.mean_list, report.p50_decode.as_secs_f64()))
}

#[pymodule]
fn pyrepcode(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyField>()?;
    m.add_class::<PyRepeatedCode>()?;
    m.add_class::<PyCandidate>()?;
    m.add_function(wrap_pyfunction!(bound_report, m)?)?;
    m.add_function(wrap_pyfunction!(bound_assignment2, m)?)?;
    m.add_function(wrap_pyfunction!(run_trials, m)?)?;
    Ok(())
}
