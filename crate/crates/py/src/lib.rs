//! Python bindings: `pychartab`.

use std::collections::hash_map::DefaultHasher;
use std::hash::{Hash, Hasher};

use chartab::checks;
use chartab::cyclo::{self, CycloError};
use chartab::degrees::{self, FeasibilityOpts};
use chartab::fixtures;
use chartab::io::{self, Parsed};
use chartab::solve::{self, SolveError, SolveHints};
use chartab::table;
use pyo3::create_exception;
use pyo3::exceptions::{PyValueError, PyZeroDivisionError};
use pyo3::prelude::*;
use pyo3::types::PyComplex;
use serde::Serialize;

create_exception!(pychartab, ChartabError, PyValueError);
create_exception!(pychartab, NeedsHint, ChartabError);
create_exception!(pychartab, InsufficientData, ChartabError);

fn err(e: impl std::fmt::Display) -> PyErr {
    ChartabError::new_err(e.to_string())
}

fn cyclo_err(e: CycloError) -> PyErr {
    match e {
        CycloError::DivisionByZero => PyZeroDivisionError::new_err(e.to_string()),
        other => err(other),
    }
}

fn solve_err(py: Python<'_>, e: SolveError) -> PyErr {
    match &e {
        SolveError::NeedsHint { candidates } => match serde_json::to_string(candidates) {
            Ok(json) => {
                let py_err = NeedsHint::new_err(e.to_string());
                let attached = from_json(py, &json).and_then(|c| py_err.value(py).setattr("candidates", c));
                attached.map(|_| py_err).unwrap_or_else(|x| x)
            }
            Err(x) => err(x),
        },
        SolveError::InsufficientData(_) => InsufficientData::new_err(e.to_string()),
        _ => err(e),
    }
}

fn from_json<'py>(py: Python<'py>, json: &str) -> PyResult<Bound<'py, PyAny>> {
    py.import("json")?.call_method1("loads", (json,))
}

fn to_py<'py>(py: Python<'py>, value: &impl Serialize) -> PyResult<Bound<'py, PyAny>> {
    from_json(py, &serde_json::to_string(value).map_err(err)?)
}

/// An exact element of a cyclotomic field.
#[pyclass(name = "Cyclotomic", frozen, from_py_object, module = "pychartab")]
#[derive(Clone)]
struct Cyclotomic(cyclo::Cyclotomic);

#[derive(FromPyObject)]
enum Operand {
    Cyclo(Cyclotomic),
    Int(i64),
    Text(String),
}

impl Operand {
    fn value(self) -> PyResult<cyclo::Cyclotomic> {
        match self {
            Operand::Cyclo(c) => Ok(c.0),
            Operand::Int(i) => Ok(cyclo::Cyclotomic::from_integer(i)),
            Operand::Text(s) => s.parse().map_err(cyclo_err),
        }
    }
}

#[pymethods]
impl Cyclotomic {
    #[new]
    #[pyo3(signature = (value = Operand::Int(0)))]
    fn new(value: Operand) -> PyResult<Self> {
        value.value().map(Cyclotomic)
    }

    /// The primitive `n`-th root of unity `exp(2 pi i / n)`.
    #[staticmethod]
    #[pyo3(name = "E", signature = (n, k = 1))]
    fn root(n: u32, k: i64) -> PyResult<Self> {
        cyclo::Cyclotomic::root_of_unity(n, k).map(Cyclotomic).map_err(cyclo_err)
    }

    #[getter]
    fn conductor(&self) -> u32 {
        self.0.conductor()
    }

    fn conjugate(&self) -> Self {
        Cyclotomic(self.0.conjugate())
    }

    fn galois(&self, j: i64) -> PyResult<Self> {
        self.0.galois_apply(j).map(Cyclotomic).map_err(cyclo_err)
    }

    fn abs_squared(&self) -> Self {
        Cyclotomic(self.0.abs_squared())
    }

    /// The field norm down to the rationals, as `(numerator, denominator)`.
    fn norm(&self) -> (String, String) {
        let n = self.0.norm();
        (n.numer().to_string(), n.denom().to_string())
    }

    fn is_algebraic_integer(&self) -> bool {
        self.0.is_algebraic_integer()
    }

    fn is_rational(&self) -> bool {
        self.0.is_rational()
    }

    fn __complex__<'py>(&self, py: Python<'py>) -> Bound<'py, PyComplex> {
        let (re, im) = self.0.approx();
        PyComplex::from_doubles(py, re, im)
    }

    fn approx(&self) -> (f64, f64) {
        self.0.approx()
    }

    fn __add__(&self, other: Operand) -> PyResult<Self> {
        Ok(Cyclotomic(&self.0 + &other.value()?))
    }

    fn __radd__(&self, other: Operand) -> PyResult<Self> {
        self.__add__(other)
    }

    fn __sub__(&self, other: Operand) -> PyResult<Self> {
        Ok(Cyclotomic(&self.0 - &other.value()?))
    }

    fn __rsub__(&self, other: Operand) -> PyResult<Self> {
        Ok(Cyclotomic(&other.value()? - &self.0))
    }

    fn __mul__(&self, other: Operand) -> PyResult<Self> {
        Ok(Cyclotomic(&self.0 * &other.value()?))
    }

    fn __rmul__(&self, other: Operand) -> PyResult<Self> {
        self.__mul__(other)
    }

    fn __truediv__(&self, other: Operand) -> PyResult<Self> {
        self.0.div(&other.value()?).map(Cyclotomic).map_err(cyclo_err)
    }

    fn __rtruediv__(&self, other: Operand) -> PyResult<Self> {
        other.value()?.div(&self.0).map(Cyclotomic).map_err(cyclo_err)
    }

    fn __pow__(&self, exp: i64, modulo: Option<i64>) -> PyResult<Self> {
        if modulo.is_some() {
            return Err(PyValueError::new_err("modular powers are not defined"));
        }
        self.0.pow(exp).map(Cyclotomic).map_err(cyclo_err)
    }

    fn __neg__(&self) -> Self {
        Cyclotomic(-&self.0)
    }

    fn __eq__(&self, other: Operand) -> bool {
        other.value().is_ok_and(|v| v == self.0)
    }

    fn __hash__(&self) -> u64 {
        let mut h = DefaultHasher::new();
        self.0.hash(&mut h);
        h.finish()
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Cyclotomic('{}')", self.0)
    }
}

/// A complete character table.
#[pyclass(name = "CharacterTable", frozen, module = "pychartab")]
struct CharacterTable(table::CharacterTable);

#[pymethods]
impl CharacterTable {
    /// Parse a table file; partial tables are rejected.
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        io::parse(text).and_then(Parsed::into_full).map(CharacterTable).map_err(err)
    }

    #[staticmethod]
    fn corpus(name: &str) -> PyResult<Self> {
        let found = fixtures::CORPUS.iter().any(|(stem, _)| stem.eq_ignore_ascii_case(name))
            || fixtures::corpus().iter().any(|t| t.name.eq_ignore_ascii_case(name));
        if !found {
            return Err(err(format!("no corpus table {name}")));
        }
        Ok(CharacterTable(fixtures::corpus_table(name)))
    }

    #[getter]
    fn name(&self) -> String {
        self.0.name.clone()
    }

    #[getter]
    fn k(&self) -> usize {
        self.0.k()
    }

    fn group_order(&self) -> PyResult<u64> {
        self.0.group_order().map_err(err)
    }

    fn centralizer_orders(&self) -> PyResult<Vec<u64>> {
        self.0.centralizer_orders().map_err(err)
    }

    fn rows(&self) -> Vec<Vec<Cyclotomic>> {
        self.0.entries().iter().map(|r| r.iter().cloned().map(Cyclotomic).collect()).collect()
    }

    fn validate<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        to_py(py, &checks::validate(&self.0))
    }

    fn pseudo_check<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        to_py(py, &checks::pseudo_check(&self.0))
    }

    /// The table file of this table with row `i` (0-based) removed.
    fn delete_row(&self, i: usize) -> PyResult<String> {
        self.bounds(i).map(|_| io::serialize_partial(&self.0.delete_row(i)))
    }

    /// The table file of this table with column `j` (0-based) removed.
    fn delete_column(&self, j: usize) -> PyResult<String> {
        self.bounds(j).map(|_| io::serialize_partial(&self.0.delete_column(j)))
    }

    fn to_text(&self) -> String {
        io::serialize(&self.0)
    }

    fn __len__(&self) -> usize {
        self.0.k()
    }

    fn __repr__(&self) -> String {
        format!("CharacterTable('{}', k={})", self.0.name, self.0.k())
    }
}

impl CharacterTable {
    fn bounds(&self, i: usize) -> PyResult<()> {
        if i < self.0.k() {
            Ok(())
        } else {
            Err(pyo3::exceptions::PyIndexError::new_err(format!("index {i} out of range for k = {}", self.0.k())))
        }
    }
}

fn partial(text: &str) -> PyResult<table::PartialTable> {
    io::parse(text).and_then(Parsed::into_partial).map_err(err)
}

/// Complete a table file missing one row; returns the outcome as a dict.
#[pyfunction]
#[pyo3(signature = (text, sylow2_ab = None))]
fn solve_row<'py>(py: Python<'py>, text: &str, sylow2_ab: Option<u64>) -> PyResult<Bound<'py, PyAny>> {
    let hints = SolveHints { sylow2_abelianization: sylow2_ab };
    let out = solve::solve_missing_row(&partial(text)?, hints).map_err(|e| solve_err(py, e))?;
    to_py(py, &out)
}

/// Complete a table file missing one column; returns the outcome as a dict.
#[pyfunction]
fn solve_col<'py>(py: Python<'py>, text: &str) -> PyResult<Bound<'py, PyAny>> {
    let out = solve::solve_missing_column(&partial(text)?).map_err(|e| solve_err(py, e))?;
    to_py(py, &out)
}

#[pyfunction]
fn validate<'py>(py: Python<'py>, text: &str) -> PyResult<Bound<'py, PyAny>> {
    CharacterTable::parse(text)?.validate(py)
}

#[pyfunction]
fn pseudo_check<'py>(py: Python<'py>, text: &str) -> PyResult<Bound<'py, PyAny>> {
    CharacterTable::parse(text)?.pseudo_check(py)
}

#[pyfunction]
fn hls_max_order(e: u64) -> PyResult<u64> {
    degrees::hls_max_order(e).map_err(err)
}

/// Pairs `(d, |G|)` with `|G| = d(d+e)` up to the order bound.
#[pyfunction]
fn enumerate_pairs(e: u64) -> PyResult<Vec<(u64, u64)>> {
    Ok(degrees::enumerate_pairs(e).map_err(err)?.iter().map(|p| (p.d, p.n)).collect())
}

/// Triples `(k, e_ram, t)` allowed for a normal subgroup of order `m`.
#[pyfunction]
#[pyo3(signature = (n, d, m, abelian = false, central = false, coprime_extension = false))]
fn feasible_ramifications(
    n: u64,
    d: u64,
    m: u64,
    abelian: bool,
    central: bool,
    coprime_extension: bool,
) -> PyResult<Vec<(u64, u64, u64)>> {
    let opts = FeasibilityOpts { n_abelian: abelian, n_central: central, coprime_extension };
    let triples = degrees::feasible_ramifications(n, d, m, opts).map_err(err)?;
    Ok(triples.iter().map(|t| (t.k, t.e_ram, t.t)).collect())
}

#[pyfunction]
fn lemma_scenarios(py: Python<'_>) -> PyResult<Bound<'_, PyAny>> {
    to_py(py, &degrees::lemma_scenarios())
}

/// Contents of a shipped puzzle file.
#[pyfunction]
fn puzzle(stem: &str) -> PyResult<&'static str> {
    fixtures::PUZZLES
        .iter()
        .find(|(s, _)| *s == stem)
        .map(|(_, text)| *text)
        .ok_or_else(|| err(format!("no puzzle {stem}")))
}

#[pyfunction]
fn corpus_names() -> Vec<&'static str> {
    fixtures::CORPUS.iter().map(|(stem, _)| *stem).collect()
}

/// Run the command-line interface; returns `(exit code, stdout, stderr)`.
#[pyfunction]
fn run_cli(args: Vec<String>) -> (i32, String, String) {
    let out = chartab::cli::run_cli(std::iter::once("chartab".to_string()).chain(args));
    (out.code, out.stdout, out.stderr)
}

#[pymodule]
fn pychartab(m: &Bound<'_, PyModule>) -> PyResult<()> {
    let py = m.py();
    m.add_class::<Cyclotomic>()?;
    m.add_class::<CharacterTable>()?;
    m.add("ChartabError", py.get_type::<ChartabError>())?;
    m.add("NeedsHint", py.get_type::<NeedsHint>())?;
    m.add("InsufficientData", py.get_type::<InsufficientData>())?;
    m.add_function(wrap_pyfunction!(solve_row, m)?)?;
    m.add_function(wrap_pyfunction!(solve_col, m)?)?;
    m.add_function(wrap_pyfunction!(validate, m)?)?;
    m.add_function(wrap_pyfunction!(pseudo_check, m)?)?;
    m.add_function(wrap_pyfunction!(hls_max_order, m)?)?;
    m.add_function(wrap_pyfunction!(enumerate_pairs, m)?)?;
    m.add_function(wrap_pyfunction!(feasible_ramifications, m)?)?;
    m.add_function(wrap_pyfunction!(lemma_scenarios, m)?)?;
    m.add_function(wrap_pyfunction!(puzzle, m)?)?;
    m.add_function(wrap_pyfunction!(corpus_names, m)?)?;
    m.add_function(wrap_pyfunction!(run_cli, m)?)?;
    Ok(())
}
