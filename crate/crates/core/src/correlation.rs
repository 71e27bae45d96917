//! Periodic and aperiodic cross-correlation of unimodular arrays.
//!
//! For arrays `A`, `B` of size `L1 × L2` the periodic correlation at shift
//! `(t1, t2)` is `Σ A[i][j] · conj(B[(i+t1) mod L1][(j+t2) mod L2])`; the
//! aperiodic correlation sums the same products over the overlap only.
//!
//! The exact kernel counts exponent differences per shift and evaluates the
//! resulting cyclotomic sum once, so tables over `q | 4` are Gaussian
//! integers. The FFT kernel is a floating-point fast path.

use std::fmt::Write as _;

use num_complex::Complex64;
use rayon::prelude::*;
use rustfft::{FftDirection, FftPlanner};
use serde::Serialize;

use crate::array::{ArrayPair, UnimodularArray};
use crate::complex::{cyclotomic_sum, ComplexValue};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CorrelationKind {
    Periodic,
    Aperiodic,
}

/// All correlation values over the shift range of one kind.
///
/// Periodic tables cover `t1 ∈ [0, L1)`, `t2 ∈ [0, L2)`; aperiodic tables
/// cover `t1 ∈ (-L1, L1)`, `t2 ∈ (-L2, L2)`.
#[derive(Clone, Debug, PartialEq)]
pub struct CorrelationTable {
    kind: CorrelationKind,
    rows: usize,
    cols: usize,
    values: Vec<ComplexValue>,
}

impl CorrelationTable {
    fn new(kind: CorrelationKind, rows: usize, cols: usize, values: Vec<ComplexValue>) -> Self {
        let table = CorrelationTable {
            kind,
            rows,
            cols,
            values,
        };
        debug_assert_eq!(table.values.len(), table.height() * table.width());
        table
    }

    pub fn kind(&self) -> CorrelationKind {
        self.kind
    }

    /// Shape `(L1, L2)` of the correlated arrays.
    pub fn array_shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    /// Number of distinct `t1` values in the table.
    pub fn height(&self) -> usize {
        match self.kind {
            CorrelationKind::Periodic => self.rows,
            CorrelationKind::Aperiodic => 2 * self.rows - 1,
        }
    }

    /// Number of distinct `t2` values in the table.
    pub fn width(&self) -> usize {
        match self.kind {
            CorrelationKind::Periodic => self.cols,
            CorrelationKind::Aperiodic => 2 * self.cols - 1,
        }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn is_exact(&self) -> bool {
        self.values.iter().all(ComplexValue::is_exact)
    }

    pub fn shifts1(&self) -> Vec<isize> {
        shift_range(self.kind, self.rows)
    }

    pub fn shifts2(&self) -> Vec<isize> {
        shift_range(self.kind, self.cols)
    }

    /// Value at shift `(t1, t2)`.
    ///
    /// Periodic shifts are reduced modulo the array shape. Aperiodic shifts
    /// outside the support have no overlap and evaluate to zero.
    pub fn get(&self, t1: isize, t2: isize) -> ComplexValue {
        match self.kind {
            CorrelationKind::Periodic => {
                let r = t1.rem_euclid(self.rows as isize) as usize;
                let c = t2.rem_euclid(self.cols as isize) as usize;
                self.values[r * self.cols + c]
            }
            CorrelationKind::Aperiodic => {
                let (l1, l2) = (self.rows as isize, self.cols as isize);
                if t1.abs() >= l1 || t2.abs() >= l2 {
                    return ComplexValue::zero(self.is_exact());
                }
                let r = (t1 + l1 - 1) as usize;
                let c = (t2 + l2 - 1) as usize;
                self.values[r * self.width() + c]
            }
        }
    }

    /// `(t1, t2, value)` in table order.
    pub fn iter(&self) -> impl Iterator<Item = (isize, isize, ComplexValue)> + '_ {
        let s1 = self.shifts1();
        let s2 = self.shifts2();
        let width = self.width();
        self.values
            .iter()
            .enumerate()
            .map(move |(k, &v)| (s1[k / width], s2[k % width], v))
    }

    /// Values for one `t1`, ordered by `t2`.
    pub fn row(&self, t1: isize) -> Vec<ComplexValue> {
        self.shifts2()
            .into_iter()
            .map(|t2| self.get(t1, t2))
            .collect()
    }

    pub fn values(&self) -> &[ComplexValue] {
        &self.values
    }

    /// Exact tables keep exact entries; mixing in a floating entry makes it
    /// floating.
    pub fn try_add(&self, other: &CorrelationTable) -> Result<CorrelationTable> {
        if self.kind != other.kind || self.array_shape() != other.array_shape() {
            return Err(Error::ShapeMismatch {
                left: format!("{:?} table over {:?}", self.kind, self.array_shape()),
                right: format!("{:?} table over {:?}", other.kind, other.array_shape()),
            });
        }
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(&a, &b)| a + b)
            .collect();
        Ok(CorrelationTable::new(
            self.kind, self.rows, self.cols, values,
        ))
    }

    /// Checks `T(t1, t2) = conj(T(-t1, -t2))` over the whole table. Exact
    /// tables are compared exactly; otherwise within `tolerance`.
    pub fn is_conjugate_symmetric(&self, tolerance: f64) -> bool {
        self.iter().all(|(t1, t2, v)| {
            let mirror = self.get(-t1, -t2).conj();
            match (v, mirror) {
                (ComplexValue::Exact(a), ComplexValue::Exact(b)) => a == b,
                (a, b) => (a.to_complex64() - b.to_complex64()).norm() <= tolerance,
            }
        })
    }

    /// Largest entrywise distance to another table of the same layout.
    pub fn max_abs_diff(&self, other: &CorrelationTable) -> f64 {
        assert_eq!(self.kind, other.kind);
        assert_eq!(self.array_shape(), other.array_shape());
        self.values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| (a.to_complex64() - b.to_complex64()).norm())
            .fold(0.0, f64::max)
    }

    /// Plot-ready CSV: a header of `t2` values, then one line per `t1`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("tau1\\tau2");
        for t2 in self.shifts2() {
            write!(out, ",{t2}").unwrap();
        }
        out.push('\n');
        for t1 in self.shifts1() {
            write!(out, "{t1}").unwrap();
            for v in self.row(t1) {
                write!(out, ",{v}").unwrap();
            }
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> String {
        #[derive(Serialize)]
        struct TableRepr<'a> {
            kind: CorrelationKind,
            rows: usize,
            cols: usize,
            exact: bool,
            tau1: Vec<isize>,
            tau2: Vec<isize>,
            values: Vec<&'a [ComplexValue]>,
        }
        let repr = TableRepr {
            kind: self.kind,
            rows: self.rows,
            cols: self.cols,
            exact: self.is_exact(),
            tau1: self.shifts1(),
            tau2: self.shifts2(),
            values: self.values.chunks(self.width()).collect(),
        };
        serde_json::to_string_pretty(&repr).expect("table serialization is infallible")
    }
}

fn shift_range(kind: CorrelationKind, len: usize) -> Vec<isize> {
    let len = len as isize;
    match kind {
        CorrelationKind::Periodic => (0..len).collect(),
        CorrelationKind::Aperiodic => (1 - len..len).collect(),
    }
}

fn check_compatible(a: &UnimodularArray, b: &UnimodularArray) -> Result<()> {
    if a.q() != b.q() || a.shape() != b.shape() {
        return Err(Error::ShapeMismatch {
            left: a.describe(),
            right: b.describe(),
        });
    }
    Ok(())
}

/// Exact periodic cross-correlation `R_{A,B}`.
pub fn periodic_xcorr(a: &UnimodularArray, b: &UnimodularArray) -> Result<CorrelationTable> {
    check_compatible(a, b)?;
    let (l1, l2) = a.shape();
    let q = a.q();
    let values = (0..l1 * l2)
        .into_par_iter()
        .map(|k| {
            let (t1, t2) = (k / l2, k % l2);
            let mut counts = vec![0i64; q as usize];
            for i in 0..l1 {
                let bi = (i + t1) % l1;
                for j in 0..l2 {
                    let bj = (j + t2) % l2;
                    let d = (a.exponent(i, j) + q - b.exponent(bi, bj)) % q;
                    counts[d as usize] += 1;
                }
            }
            cyclotomic_sum(q, &counts)
        })
        .collect();
    Ok(CorrelationTable::new(
        CorrelationKind::Periodic,
        l1,
        l2,
        values,
    ))
}

/// Exact aperiodic cross-correlation `C_{A,B}` over all four shift quadrants.
pub fn aperiodic_xcorr(a: &UnimodularArray, b: &UnimodularArray) -> Result<CorrelationTable> {
    check_compatible(a, b)?;
    let (l1, l2) = a.shape();
    let (h, w) = (2 * l1 - 1, 2 * l2 - 1);
    let q = a.q();
    let values = (0..h * w)
        .into_par_iter()
        .map(|k| {
            let t1 = (k / w) as isize - (l1 as isize - 1);
            let t2 = (k % w) as isize - (l2 as isize - 1);
            let mut counts = vec![0i64; q as usize];
            // overlap: 0 <= i < L1 and 0 <= i + t1 < L1, likewise for j
            let rows = t1.min(0).unsigned_abs()..(l1 as isize - t1.max(0)) as usize;
            let cols = t2.min(0).unsigned_abs()..(l2 as isize - t2.max(0)) as usize;
            for i in rows {
                let bi = (i as isize + t1) as usize;
                for j in cols.clone() {
                    let bj = (j as isize + t2) as usize;
                    let d = (a.exponent(i, j) + q - b.exponent(bi, bj)) % q;
                    counts[d as usize] += 1;
                }
            }
            cyclotomic_sum(q, &counts)
        })
        .collect();
    Ok(CorrelationTable::new(
        CorrelationKind::Aperiodic,
        l1,
        l2,
        values,
    ))
}

pub fn periodic_autocorr(a: &UnimodularArray) -> CorrelationTable {
    periodic_xcorr(a, a).expect("an array is compatible with itself")
}

pub fn aperiodic_autocorr(a: &UnimodularArray) -> CorrelationTable {
    aperiodic_xcorr(a, a).expect("an array is compatible with itself")
}

/// Aperiodic autocorrelation sum `C_A + C_B` of a pair.
pub fn aacs(pair: &ArrayPair) -> CorrelationTable {
    aperiodic_autocorr(pair.first())
        .try_add(&aperiodic_autocorr(pair.second()))
        .expect("pair members share a shape")
}

/// Periodic cross-correlation by 2D FFT. Entries are floating.
pub fn periodic_xcorr_fft(a: &UnimodularArray, b: &UnimodularArray) -> Result<CorrelationTable> {
    check_compatible(a, b)?;
    let (l1, l2) = a.shape();
    let values = circular_xcorr(&a.values(), &b.values(), l1, l2)
        .into_iter()
        .map(ComplexValue::Approx)
        .collect();
    Ok(CorrelationTable::new(
        CorrelationKind::Periodic,
        l1,
        l2,
        values,
    ))
}

/// Aperiodic cross-correlation by FFT, zero-padding each dimension to
/// `2L - 1` so the circular correlation never wraps onto data.
pub fn aperiodic_xcorr_fft(a: &UnimodularArray, b: &UnimodularArray) -> Result<CorrelationTable> {
    check_compatible(a, b)?;
    let (l1, l2) = a.shape();
    let (h, w) = (2 * l1 - 1, 2 * l2 - 1);
    let pad = |x: &UnimodularArray| {
        let mut buf = vec![Complex64::new(0.0, 0.0); h * w];
        for (k, v) in x.values().into_iter().enumerate() {
            buf[(k / l2) * w + k % l2] = v;
        }
        buf
    };
    let circ = circular_xcorr(&pad(a), &pad(b), h, w);
    let mut values = Vec::with_capacity(h * w);
    for t1 in 1 - l1 as isize..l1 as isize {
        for t2 in 1 - l2 as isize..l2 as isize {
            let r = t1.rem_euclid(h as isize) as usize;
            let c = t2.rem_euclid(w as isize) as usize;
            values.push(ComplexValue::Approx(circ[r * w + c]));
        }
    }
    Ok(CorrelationTable::new(
        CorrelationKind::Aperiodic,
        l1,
        l2,
        values,
    ))
}

/// `out[t] = Σ_n a[n] · conj(b[n + t])` with indices modulo `(rows, cols)`.
fn circular_xcorr(a: &[Complex64], b: &[Complex64], rows: usize, cols: usize) -> Vec<Complex64> {
    let mut planner = FftPlanner::new();
    let mut fa = a.to_vec();
    let mut fb = b.to_vec();
    fft2(&mut planner, &mut fa, rows, cols, FftDirection::Forward);
    fft2(&mut planner, &mut fb, rows, cols, FftDirection::Forward);
    // IDFT(conj(FA)·FB)[t] = Σ conj(a[n]) b[n+t], the conjugate of what we want
    let mut prod: Vec<Complex64> = fa.iter().zip(&fb).map(|(x, y)| x.conj() * y).collect();
    fft2(&mut planner, &mut prod, rows, cols, FftDirection::Inverse);
    let scale = 1.0 / (rows * cols) as f64;
    prod.into_iter().map(|z| z.conj() * scale).collect()
}

fn fft2(
    planner: &mut FftPlanner<f64>,
    data: &mut [Complex64],
    rows: usize,
    cols: usize,
    direction: FftDirection,
) {
    let row_fft = planner.plan_fft(cols, direction);
    for row in data.chunks_exact_mut(cols) {
        row_fft.process(row);
    }
    if rows > 1 {
        let col_fft = planner.plan_fft(rows, direction);
        let mut column = vec![Complex64::new(0.0, 0.0); rows];
        for c in 0..cols {
            for r in 0..rows {
                column[r] = data[r * cols + c];
            }
            col_fft.process(&mut column);
            for r in 0..rows {
                data[r * cols + c] = column[r];
            }
        }
    }
}
