//! Python bindings for `golay-zcz`.
//!
//! Correlation tables come back as nested lists of Python `complex`, rows
//! ordered by `t1` and columns by `t2`. Periodic tables cover shifts
//! `0..L`, aperiodic ones `-(L-1)..=L-1`.

use golay_zcz::construct::{self, SignQuadruple};
use golay_zcz::correlation::{self, CorrelationTable};
use golay_zcz::seeds::{self, SearchOptions, DEFAULT_SEARCH_GUARD};
use golay_zcz::verify::{self, ZczReport, Zone};
use golay_zcz::{ArrayPair, UnimodularArray, ZoneWidth};
use num_complex::Complex64;
use pyo3::create_exception;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

create_exception!(golay_zcz, GolayError, PyValueError);

fn err(e: golay_zcz::Error) -> PyErr {
    GolayError::new_err(e.to_string())
}

/// A rectangular array of `q`-th roots of unity, given by exponents.
#[pyclass(name = "Array", module = "golay_zcz", frozen, eq, from_py_object)]
#[derive(Clone, PartialEq)]
struct PyArray(UnimodularArray);

#[pymethods]
impl PyArray {
    /// `exponents` is a flat list (a sequence) or a list of rows.
    #[new]
    fn new(exponents: &Bound<'_, PyAny>, q: u32) -> PyResult<Self> {
        let array = if let Ok(rows) = exponents.extract::<Vec<Vec<u32>>>() {
            UnimodularArray::from_rows(q, &rows)
        } else {
            UnimodularArray::sequence(q, exponents.extract::<Vec<u32>>()?)
        };
        array.map(PyArray).map_err(err)
    }

    /// Parses `1`, `-1`, `i`, `-i` entries with rows separated by `;`.
    #[staticmethod]
    fn from_units(text: &str) -> PyResult<Self> {
        UnimodularArray::parse_units(text).map(PyArray).map_err(err)
    }

    #[getter]
    fn q(&self) -> u32 {
        self.0.q()
    }

    #[getter]
    fn shape(&self) -> (usize, usize) {
        self.0.shape()
    }

    #[getter]
    fn exponents(&self) -> Vec<Vec<u32>> {
        self.0.exponent_rows()
    }

    fn values(&self) -> Vec<Vec<Complex64>> {
        self.0
            .values()
            .chunks(self.0.cols())
            .map(<[Complex64]>::to_vec)
            .collect()
    }

    fn lift(&self, q: u32) -> PyResult<Self> {
        self.0.lift(q).map(PyArray).map_err(err)
    }

    fn negate(&self) -> PyResult<Self> {
        self.0.negate().map(PyArray).map_err(err)
    }

    fn conjugate(&self) -> Self {
        PyArray(self.0.conjugate())
    }

    fn reverse_all_dims(&self) -> Self {
        PyArray(self.0.reverse_all_dims())
    }

    fn __repr__(&self) -> String {
        format!(
            "Array(q={}, shape={:?}, [{}])",
            self.0.q(),
            self.0.shape(),
            self.0
        )
    }
}

/// Two arrays of the same shape and alphabet.
#[pyclass(name = "Pair", module = "golay_zcz", frozen, eq, from_py_object)]
#[derive(Clone, PartialEq)]
struct PyPair(ArrayPair);

#[pymethods]
impl PyPair {
    /// Members over different alphabets are lifted to a common one.
    #[new]
    fn new(first: &PyArray, second: &PyArray) -> PyResult<Self> {
        ArrayPair::lifted(first.0.clone(), second.0.clone())
            .map(PyPair)
            .map_err(err)
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        ArrayPair::from_json(text).map(PyPair).map_err(err)
    }

    fn to_json(&self) -> String {
        self.0.to_json()
    }

    #[getter]
    fn first(&self) -> PyArray {
        PyArray(self.0.first().clone())
    }

    #[getter]
    fn second(&self) -> PyArray {
        PyArray(self.0.second().clone())
    }

    #[getter]
    fn q(&self) -> u32 {
        self.0.q()
    }

    #[getter]
    fn shape(&self) -> (usize, usize) {
        self.0.shape()
    }

    fn __repr__(&self) -> String {
        format!(
            "Pair(q={}, shape={:?}, first=[{}], second=[{}])",
            self.0.q(),
            self.0.shape(),
            self.0.first(),
            self.0.second()
        )
    }
}

/// Measured periodic zones of a pair. Widths are `(rows, cols)` tuples.
#[pyclass(name = "ZoneReport", module = "golay_zcz", frozen)]
struct PyZoneReport(ZczReport);

fn width(w: ZoneWidth) -> (usize, usize) {
    (w.rows, w.cols)
}

fn zone_dict<'py>(py: Python<'py>, zone: &Zone) -> PyResult<Bound<'py, pyo3::types::PyDict>> {
    let d = pyo3::types::PyDict::new(py);
    d.set_item("width", width(zone.width))?;
    d.set_item("frontier", zone.frontier.clone())?;
    Ok(d)
}

#[pymethods]
impl PyZoneReport {
    #[getter]
    fn shape(&self) -> (usize, usize) {
        self.0.shape
    }

    #[getter]
    fn is_gcap(&self) -> bool {
        self.0.is_gcap
    }

    #[getter]
    fn z_min(&self) -> (usize, usize) {
        width(self.0.z_min)
    }

    #[getter]
    fn frontier(&self) -> Vec<usize> {
        self.0.combined_frontier.clone()
    }

    #[getter]
    fn zacz_first<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, pyo3::types::PyDict>> {
        zone_dict(py, &self.0.zacz_first)
    }

    #[getter]
    fn zacz_second<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, pyo3::types::PyDict>> {
        zone_dict(py, &self.0.zacz_second)
    }

    #[getter]
    fn zccz<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, pyo3::types::PyDict>> {
        zone_dict(py, &self.0.zccz)
    }

    /// Whether the `rows x cols` rectangle is clean for all three conditions.
    fn admits(&self, rows: usize, cols: usize) -> bool {
        self.0.admits(ZoneWidth::new(rows, cols))
    }

    fn to_json(&self) -> String {
        self.0.to_json()
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!(
            "ZoneReport(shape={:?}, is_gcap={}, z_min={})",
            self.0.shape, self.0.is_gcap, self.0.z_min
        )
    }
}

fn rows(table: CorrelationTable) -> Vec<Vec<Complex64>> {
    table
        .shifts1()
        .into_iter()
        .map(|t1| table.row(t1).iter().map(|v| v.to_complex64()).collect())
        .collect()
}

fn signs(values: (i64, i64, i64, i64)) -> PyResult<SignQuadruple> {
    SignQuadruple::from_ints([values.0, values.1, values.2, values.3]).map_err(err)
}

#[pyfunction]
#[pyo3(signature = (a, b, fft = false))]
fn periodic_xcorr(a: &PyArray, b: &PyArray, fft: bool) -> PyResult<Vec<Vec<Complex64>>> {
    let table = if fft {
        correlation::periodic_xcorr_fft(&a.0, &b.0)
    } else {
        correlation::periodic_xcorr(&a.0, &b.0)
    };
    table.map(rows).map_err(err)
}

#[pyfunction]
#[pyo3(signature = (a, b, fft = false))]
fn aperiodic_xcorr(a: &PyArray, b: &PyArray, fft: bool) -> PyResult<Vec<Vec<Complex64>>> {
    let table = if fft {
        correlation::aperiodic_xcorr_fft(&a.0, &b.0)
    } else {
        correlation::aperiodic_xcorr(&a.0, &b.0)
    };
    table.map(rows).map_err(err)
}

/// Aperiodic autocorrelation sum of both members.
#[pyfunction]
fn aacs(pair: &PyPair) -> Vec<Vec<Complex64>> {
    rows(correlation::aacs(&pair.0))
}

#[pyfunction]
fn golay_mate(pair: &PyPair) -> PyResult<PyPair> {
    construct::golay_mate(&pair.0).map(PyPair).map_err(err)
}

#[pyfunction]
fn valid_sign_quadruples() -> Vec<[i8; 4]> {
    construct::enumerate_valid_sign_quadruples()
        .iter()
        .map(SignQuadruple::values)
        .collect()
}

#[pyfunction]
fn construct_1d(seed: &PyPair, signs_: (i64, i64, i64, i64)) -> PyResult<PyPair> {
    construct::construct_1d(&seed.0, signs(signs_)?)
        .map(PyPair)
        .map_err(err)
}

#[pyfunction]
fn construct_2d_horizontal(seed: &PyPair, signs_: (i64, i64, i64, i64)) -> PyResult<PyPair> {
    construct::construct_2d_horizontal(&seed.0, signs(signs_)?)
        .map(PyPair)
        .map_err(err)
}

#[pyfunction]
fn construct_2d_full(seed: &PyPair) -> PyResult<PyPair> {
    construct::construct_2d_full(&seed.0)
        .map(PyPair)
        .map_err(err)
}

#[pyfunction]
#[pyo3(signature = (pair, tolerance = None))]
fn is_gcap(pair: &PyPair, tolerance: Option<f64>) -> bool {
    match tolerance {
        Some(t) => verify::is_gcap_with_tolerance(&pair.0, t).holds,
        None => verify::is_gcap(&pair.0).holds,
    }
}

#[pyfunction]
fn is_golay_mate(pair: &PyPair, mate: &PyPair) -> PyResult<bool> {
    verify::is_golay_mate(&pair.0, &mate.0)
        .map(|c| c.holds)
        .map_err(err)
}

#[pyfunction]
#[pyo3(signature = (pair, tolerance = None))]
fn measure_zones(pair: &PyPair, tolerance: Option<f64>) -> PyZoneReport {
    PyZoneReport(match tolerance {
        Some(t) => verify::measure_zones_with_tolerance(&pair.0, t),
        None => verify::measure_zones(&pair.0),
    })
}

/// Checks that the `rows x cols` zone holds and the pair is complementary.
#[pyfunction]
fn verify_claim(pair: &PyPair, rows: usize, cols: usize) -> (bool, PyZoneReport) {
    let (holds, report) = verify::verify_claim(&pair.0, ZoneWidth::new(rows, cols));
    (holds, PyZoneReport(report))
}

/// Catalog seed pairs keyed by id.
#[pyfunction]
fn catalog() -> Vec<(String, PyPair)> {
    seeds::catalog()
        .into_iter()
        .map(|r| (r.id, PyPair(r.pair)))
        .collect()
}

#[pyfunction]
fn catalog_entry(id: &str) -> PyResult<PyPair> {
    seeds::catalog_entry(id)
        .map(|r| PyPair(r.pair))
        .ok_or_else(|| GolayError::new_err(format!("no catalog entry {id:?}")))
}

/// Length doubling `(a|b, a|-b)`.
#[pyfunction]
fn golay_double(pair: &PyPair) -> PyResult<PyPair> {
    seeds::golay_double(&pair.0).map(PyPair).map_err(err)
}

#[pyfunction]
#[pyo3(signature = (length, q = 2, limit = None, guard = DEFAULT_SEARCH_GUARD))]
fn brute_force_search(
    py: Python<'_>,
    length: usize,
    q: u32,
    limit: Option<usize>,
    guard: u128,
) -> PyResult<Vec<PyPair>> {
    let options = SearchOptions { limit, guard };
    let found = py.detach(|| seeds::brute_force_search(length, q, options));
    found
        .map(|v| v.into_iter().map(PyPair).collect())
        .map_err(err)
}

#[pymodule(name = "golay_zcz")]
pub fn golay_zcz_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("GolayError", m.py().get_type::<GolayError>())?;
    m.add_class::<PyArray>()?;
    m.add_class::<PyPair>()?;
    m.add_class::<PyZoneReport>()?;
    m.add_function(wrap_pyfunction!(periodic_xcorr, m)?)?;
    m.add_function(wrap_pyfunction!(aperiodic_xcorr, m)?)?;
    m.add_function(wrap_pyfunction!(aacs, m)?)?;
    m.add_function(wrap_pyfunction!(golay_mate, m)?)?;
    m.add_function(wrap_pyfunction!(valid_sign_quadruples, m)?)?;
    m.add_function(wrap_pyfunction!(construct_1d, m)?)?;
    m.add_function(wrap_pyfunction!(construct_2d_horizontal, m)?)?;
    m.add_function(wrap_pyfunction!(construct_2d_full, m)?)?;
    m.add_function(wrap_pyfunction!(is_gcap, m)?)?;
    m.add_function(wrap_pyfunction!(is_golay_mate, m)?)?;
    m.add_function(wrap_pyfunction!(measure_zones, m)?)?;
    m.add_function(wrap_pyfunction!(verify_claim, m)?)?;
    m.add_function(wrap_pyfunction!(catalog, m)?)?;
    m.add_function(wrap_pyfunction!(catalog_entry, m)?)?;
    m.add_function(wrap_pyfunction!(golay_double, m)?)?;
    m.add_function(wrap_pyfunction!(brute_force_search, m)?)?;
    Ok(())
}
