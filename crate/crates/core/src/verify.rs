//! Decision procedures for complementarity, mates and periodic
//! zero-correlation zones.
//!
//! Zone widths follow the open-interval convention: a width `Z` in one
//! dimension means every shift with `|t| < Z` is covered. Two-dimensional
//! zones are rectangles `|t1| < Z1, |t2| < Z2`. An autocorrelation zone
//! excludes the origin; the cross-correlation zone includes it.

use std::fmt;

use serde::Serialize;

use crate::array::ArrayPair;
use crate::complex::{ComplexValue, DEFAULT_TOLERANCE};
use crate::correlation::{
    aacs, aperiodic_xcorr, periodic_autocorr, periodic_xcorr, CorrelationTable,
};
use crate::error::Result;

/// A shift together with the nonzero value observed there.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Witness {
    pub shift: (isize, isize),
    pub value: ComplexValue,
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "value {} at shift ({}, {})",
            self.value, self.shift.0, self.shift.1
        )
    }
}

/// Outcome of a yes/no property check.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Check {
    pub holds: bool,
    pub witness: Option<Witness>,
}

impl Check {
    fn from_witness(witness: Option<Witness>) -> Self {
        Check {
            holds: witness.is_none(),
            witness,
        }
    }
}

/// Zero test for a table entry: exact values must vanish, floating values
/// must be within `tolerance · L1 · L2`.
fn zero_threshold(table: &CorrelationTable, tolerance: f64) -> f64 {
    let (l1, l2) = table.array_shape();
    tolerance * (l1 * l2) as f64
}

/// Whether the aperiodic autocorrelation sum vanishes at every nonzero
/// shift. The witness is the first violation in table order.
pub fn is_gcap(pair: &ArrayPair) -> Check {
    is_gcap_with_tolerance(pair, DEFAULT_TOLERANCE)
}

pub fn is_gcap_with_tolerance(pair: &ArrayPair, tolerance: f64) -> Check {
    let sum = aacs(pair);
    let eps = zero_threshold(&sum, tolerance);
    let witness = sum
        .iter()
        .find(|&(t1, t2, v)| (t1, t2) != (0, 0) && !v.is_zero(eps))
        .map(|(t1, t2, value)| Witness {
            shift: (t1, t2),
            value,
        });
    Check::from_witness(witness)
}

/// Whether `C_{A,C} + C_{B,D}` vanishes at every shift, origin included.
pub fn is_golay_mate(pair: &ArrayPair, mate: &ArrayPair) -> Result<Check> {
    let sum = aperiodic_xcorr(pair.first(), mate.first())?
        .try_add(&aperiodic_xcorr(pair.second(), mate.second())?)?;
    let eps = zero_threshold(&sum, DEFAULT_TOLERANCE);
    let witness = sum
        .iter()
        .find(|(_, _, v)| !v.is_zero(eps))
        .map(|(t1, t2, value)| Witness {
            shift: (t1, t2),
            value,
        });
    Ok(Check::from_witness(witness))
}

/// Per-dimension zone widths. For sequences `rows` is 1 whenever the zone
/// is nonempty.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct ZoneWidth {
    pub rows: usize,
    pub cols: usize,
}

impl ZoneWidth {
    pub const EMPTY: ZoneWidth = ZoneWidth { rows: 0, cols: 0 };

    pub fn new(rows: usize, cols: usize) -> Self {
        if rows == 0 || cols == 0 {
            Self::EMPTY
        } else {
            ZoneWidth { rows, cols }
        }
    }

    pub fn is_empty(&self) -> bool {
        self.rows == 0 || self.cols == 0
    }

    /// Both widths at least those of `other`.
    pub fn dominates(&self, other: &ZoneWidth) -> bool {
        other.is_empty() || (self.rows >= other.rows && self.cols >= other.cols)
    }

    pub fn meet(&self, other: &ZoneWidth) -> ZoneWidth {
        ZoneWidth::new(self.rows.min(other.rows), self.cols.min(other.cols))
    }
}

impl fmt::Display for ZoneWidth {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}x{}", self.rows, self.cols)
    }
}

/// A measured zone for one correlation function.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Zone {
    /// Shape `(L1, L2)` of the correlated arrays.
    pub shape: (usize, usize),
    /// The selected maximal rectangle.
    pub width: ZoneWidth,
    /// `frontier[k]` is the largest `Z2` such that the rectangle of height
    /// `Z1 = k + 1` is clean, for `Z1 = 1..=L1`.
    pub frontier: Vec<usize>,
    /// Nonzero shift just outside the zone in dimension 1, unless the zone
    /// already spans every row shift.
    pub row_witness: Option<Witness>,
    /// Nonzero shift just outside the zone in dimension 2, unless the zone
    /// already spans every column shift.
    pub col_witness: Option<Witness>,
}

impl Zone {
    /// Whether the rectangle `claim` lies inside the clean region.
    pub fn admits(&self, claim: ZoneWidth) -> bool {
        frontier_admits(&self.frontier, self.shape, claim)
    }
}

/// Periodic shifts wrap, so widths beyond the array shape add nothing.
fn frontier_admits(frontier: &[usize], shape: (usize, usize), claim: ZoneWidth) -> bool {
    if claim.is_empty() {
        return true;
    }
    let rows = claim.rows.min(shape.0);
    let cols = claim.cols.min(shape.1);
    frontier[rows - 1] >= cols
}

/// Measured periodic zones of a pair.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ZczReport {
    pub shape: (usize, usize),
    pub is_gcap: bool,
    pub gcap_witness: Option<Witness>,
    pub zacz_first: Zone,
    pub zacz_second: Zone,
    pub zccz: Zone,
    /// Per-dimension minimum over the three selected zones.
    pub z_min: ZoneWidth,
    /// Largest `Z2` per `Z1` satisfying all three zone conditions at once.
    pub combined_frontier: Vec<usize>,
    pub witnesses: Vec<Witness>,
}

impl ZczReport {
    pub fn is_sequence_pair(&self) -> bool {
        self.shape.0 == 1
    }

    /// Whether a rectangle of width `claim` satisfies both periodic zone
    /// conditions simultaneously.
    pub fn admits(&self, claim: ZoneWidth) -> bool {
        frontier_admits(&self.combined_frontier, self.shape, claim)
    }

    /// `z_min` in the notation used for the pair's dimension: a single
    /// number for sequences, `Z1xZ2` for arrays.
    pub fn z_min_label(&self) -> String {
        if self.is_sequence_pair() {
            self.z_min.cols.to_string()
        } else {
            self.z_min.to_string()
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization is infallible")
    }
}

impl fmt::Display for ZczReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let label = |w: ZoneWidth| {
            if self.is_sequence_pair() {
                w.cols.to_string()
            } else {
                w.to_string()
            }
        };
        writeln!(f, "pair shape      {}x{}", self.shape.0, self.shape.1)?;
        match &self.gcap_witness {
            None => writeln!(f, "complementary   yes")?,
            Some(w) => writeln!(f, "complementary   no ({w})")?,
        }
        for (name, zone) in [
            ("ZACZ first ", &self.zacz_first),
            ("ZACZ second", &self.zacz_second),
            ("ZCCZ       ", &self.zccz),
        ] {
            write!(f, "{name}     {}", label(zone.width))?;
            let boundary: Vec<String> = [&zone.row_witness, &zone.col_witness]
                .into_iter()
                .flatten()
                .map(Witness::to_string)
                .collect();
            if boundary.is_empty() {
                writeln!(f)?;
            } else {
                writeln!(f, "  (boundary: {})", boundary.join("; "))?;
            }
        }
        writeln!(f, "Z_min           {}", label(self.z_min))?;
        if !self.is_sequence_pair() {
            writeln!(f, "frontier        {:?}", self.combined_frontier)?;
        }
        Ok(())
    }
}

/// Measures the periodic autocorrelation zones of both members and the
/// cross-correlation zone, with the default floating tolerance.
pub fn measure_zones(pair: &ArrayPair) -> ZczReport {
    measure_zones_with_tolerance(pair, DEFAULT_TOLERANCE)
}

pub fn measure_zones_with_tolerance(pair: &ArrayPair, tolerance: f64) -> ZczReport {
    let gcap = is_gcap_with_tolerance(pair, tolerance);
    let r_first = periodic_autocorr(pair.first());
    let r_second = periodic_autocorr(pair.second());
    let r_cross = periodic_xcorr(pair.first(), pair.second()).expect("pair members share a shape");

    let zacz_first = measure_zone(&r_first, false, tolerance);
    let zacz_second = measure_zone(&r_second, false, tolerance);
    let zccz = measure_zone(&r_cross, true, tolerance);

    let z_min = zacz_first.width.meet(&zacz_second.width).meet(&zccz.width);
    let combined_frontier = zacz_first
        .frontier
        .iter()
        .zip(&zacz_second.frontier)
        .zip(&zccz.frontier)
        .map(|((&a, &b), &c)| a.min(b).min(c))
        .collect();
    let witnesses = [&zacz_first, &zacz_second, &zccz]
        .iter()
        .flat_map(|z| [z.row_witness, z.col_witness])
        .flatten()
        .collect();

    ZczReport {
        shape: pair.shape(),
        is_gcap: gcap.holds,
        gcap_witness: gcap.witness,
        zacz_first,
        zacz_second,
        zccz,
        z_min,
        combined_frontier,
        witnesses,
    }
}

/// Whether the measured zones cover `claim` in every dimension. Only the
/// periodic zone conditions are checked; complementarity is reported
/// separately in the returned report.
pub fn verify_claim(pair: &ArrayPair, claim: ZoneWidth) -> (bool, ZczReport) {
    let report = measure_zones(pair);
    (report.admits(claim), report)
}

/// First nonzero entry `(t1, ±m)` with the smallest `m`, or `None` if the
/// row `t1` is clean for every column shift.
fn first_dirty_col(
    table: &CorrelationTable,
    t1: isize,
    include_origin: bool,
    eps: f64,
) -> Option<Witness> {
    let l2 = table.array_shape().1 as isize;
    (0..l2).find_map(|m| {
        [m, -m].into_iter().find_map(|t2| {
            if !include_origin && (t1, t2) == (0, 0) {
                return None;
            }
            let value = table.get(t1, t2);
            (!value.is_zero(eps)).then_some(Witness {
                shift: (t1, t2),
                value,
            })
        })
    })
}

/// Frontier of clean rectangles in a periodic table, plus the selected
/// maximal rectangle and its boundary witnesses.
pub(crate) fn measure_zone(table: &CorrelationTable, include_origin: bool, tolerance: f64) -> Zone {
    let eps = zero_threshold(table, tolerance);
    let (l1, l2) = table.array_shape();

    // For each |t1| = k the closest dirty column shift across t1 = ±k.
    let band_limits: Vec<(usize, Option<Witness>)> = (0..l1 as isize)
        .map(|k| {
            let candidates = [
                first_dirty_col(table, k, include_origin, eps),
                first_dirty_col(table, -k, include_origin, eps),
            ];
            let w = candidates
                .into_iter()
                .flatten()
                .min_by_key(|w| w.shift.1.unsigned_abs());
            (w.map_or(l2, |w| w.shift.1.unsigned_abs()), w)
        })
        .collect();

    let mut frontier = Vec::with_capacity(l1);
    let mut running = l2;
    for &(limit, _) in &band_limits {
        running = running.min(limit);
        frontier.push(running);
    }

    let width = select_rectangle(&frontier);
    let (row_witness, col_witness) = if width.is_empty() {
        (None, band_limits[0].1)
    } else {
        let row_witness = band_limits
            .get(width.rows)
            .and_then(|&(limit, w)| (limit < width.cols).then_some(w).flatten());
        let col_witness = band_limits[..width.rows]
            .iter()
            .filter(|(limit, _)| *limit == width.cols)
            .find_map(|&(_, w)| w);
        (row_witness, col_witness)
    };

    Zone {
        shape: (l1, l2),
        width,
        frontier,
        row_witness,
        col_witness,
    }
}

/// Maximises dimension 1 first: the tallest clean rectangle, at its widest.
/// The frontier is nonincreasing, so this is its last nonzero entry.
fn select_rectangle(frontier: &[usize]) -> ZoneWidth {
    frontier
        .iter()
        .rposition(|&cols| cols > 0)
        .map_or(ZoneWidth::EMPTY, |k| ZoneWidth::new(k + 1, frontier[k]))
}
