//! Unimodular arrays over root-of-unity alphabets.
//!
//! An entry with exponent `e` stands for `exp(2πi·e/q)`. A sequence is an
//! array with a single row.

use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::complex::root_of_unity;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> i8 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn from_int(v: i64) -> Result<Self> {
        match v {
            1 => Ok(Sign::Plus),
            -1 => Ok(Sign::Minus),
            other => Err(Error::InvalidSign(other)),
        }
    }
}

impl std::ops::Mul for Sign {
    type Output = Sign;
    fn mul(self, rhs: Sign) -> Sign {
        if self == rhs {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }
}

/// An `rows × cols` array of `q`-th roots of unity, stored row-major as
/// exponents in `[0, q)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "ArrayRepr", into = "ArrayRepr")]
pub struct UnimodularArray {
    q: u32,
    rows: usize,
    cols: usize,
    exp: Vec<u32>,
}

/// Canonical JSON shape: `{"q", "rows", "cols", "exp": [[..], ..]}`.
#[derive(Serialize, Deserialize)]
struct ArrayRepr {
    q: u32,
    rows: usize,
    cols: usize,
    exp: Vec<Vec<u32>>,
}

impl TryFrom<ArrayRepr> for UnimodularArray {
    type Error = Error;

    fn try_from(repr: ArrayRepr) -> Result<Self> {
        if repr.exp.len() != repr.rows {
            return Err(Error::InvalidShape(format!(
                "declared {} rows, found {}",
                repr.rows,
                repr.exp.len()
            )));
        }
        if let Some(bad) = repr.exp.iter().find(|r| r.len() != repr.cols) {
            return Err(Error::InvalidShape(format!(
                "declared {} columns, found a row of length {}",
                repr.cols,
                bad.len()
            )));
        }
        UnimodularArray::new(repr.q, repr.rows, repr.cols, repr.exp.concat())
    }
}

impl From<UnimodularArray> for ArrayRepr {
    fn from(a: UnimodularArray) -> Self {
        let exp = a.exp.chunks(a.cols).map(<[u32]>::to_vec).collect();
        ArrayRepr {
            q: a.q,
            rows: a.rows,
            cols: a.cols,
            exp,
        }
    }
}

impl UnimodularArray {
    pub fn new(q: u32, rows: usize, cols: usize, exp: Vec<u32>) -> Result<Self> {
        if q == 0 {
            return Err(Error::InvalidShape(
                "alphabet order must be positive".into(),
            ));
        }
        if rows == 0 || cols == 0 {
            return Err(Error::InvalidShape(format!("{rows}x{cols} array is empty")));
        }
        if exp.len() != rows * cols {
            return Err(Error::InvalidShape(format!(
                "{rows}x{cols} array needs {} entries, got {}",
                rows * cols,
                exp.len()
            )));
        }
        if let Some(&exponent) = exp.iter().find(|&&e| e >= q) {
            return Err(Error::ExponentOutOfRange { exponent, q });
        }
        Ok(UnimodularArray { q, rows, cols, exp })
    }

    /// A single-row array.
    pub fn sequence(q: u32, exp: Vec<u32>) -> Result<Self> {
        let cols = exp.len();
        Self::new(q, 1, cols, exp)
    }

    pub fn from_rows(q: u32, rows: &[Vec<u32>]) -> Result<Self> {
        let repr = ArrayRepr {
            q,
            rows: rows.len(),
            cols: rows.first().map_or(0, Vec::len),
            exp: rows.to_vec(),
        };
        repr.try_into()
    }

    /// A binary (`q = 2`) sequence from `±1` values.
    pub fn binary(values: &[i8]) -> Result<Self> {
        let exp = values
            .iter()
            .map(|&v| Sign::from_int(v.into()).map(|s| u32::from(s == Sign::Minus)))
            .collect::<Result<Vec<_>>>()?;
        Self::sequence(2, exp)
    }

    /// Parses unit notation: entries `1`, `-1`, `i`, `-i` separated by
    /// whitespace or commas, rows separated by `;`. The alphabet is binary
    /// when no imaginary unit appears, quaternary otherwise.
    pub fn parse_units(text: &str) -> Result<Self> {
        let mut rows = Vec::new();
        for row in text.split(';') {
            let entries = row
                .split(|c: char| c == ',' || c.is_whitespace())
                .filter(|t| !t.is_empty())
                .map(|t| match t {
                    "1" | "+1" => Ok(0u32),
                    "i" | "+i" => Ok(1),
                    "-1" => Ok(2),
                    "-i" => Ok(3),
                    other => Err(Error::Parse(format!("unknown unit {other:?}"))),
                })
                .collect::<Result<Vec<_>>>()?;
            rows.push(entries);
        }
        let quaternary = rows.iter().flatten().any(|&e| e % 2 == 1);
        if quaternary {
            Self::from_rows(4, &rows)
        } else {
            let halved: Vec<Vec<u32>> = rows
                .iter()
                .map(|r| r.iter().map(|e| e / 2).collect())
                .collect();
            Self::from_rows(2, &halved)
        }
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn len(&self) -> usize {
        self.exp.len()
    }

    pub fn is_empty(&self) -> bool {
        self.exp.is_empty()
    }

    pub fn is_sequence(&self) -> bool {
        self.rows == 1
    }

    pub fn exponent(&self, row: usize, col: usize) -> u32 {
        self.exp[row * self.cols + col]
    }

    /// Row-major exponents.
    pub fn exponents(&self) -> &[u32] {
        &self.exp
    }

    pub fn exponent_rows(&self) -> Vec<Vec<u32>> {
        self.exp.chunks(self.cols).map(<[u32]>::to_vec).collect()
    }

    pub fn value(&self, row: usize, col: usize) -> Complex64 {
        root_of_unity(self.q, self.exponent(row, col))
    }

    /// Row-major complex entries.
    pub fn values(&self) -> Vec<Complex64> {
        self.exp.iter().map(|&e| root_of_unity(self.q, e)).collect()
    }

    fn with_exponents(&self, exp: Vec<u32>) -> Self {
        UnimodularArray {
            q: self.q,
            rows: self.rows,
            cols: self.cols,
            exp,
        }
    }

    /// Re-expresses the array over alphabet order `q`, which must be a
    /// multiple of the current order.
    pub fn lift(&self, q: u32) -> Result<Self> {
        if q == 0 || !q.is_multiple_of(self.q) {
            return Err(Error::InvalidShape(format!(
                "cannot lift alphabet order {} to {q}",
                self.q
            )));
        }
        let factor = q / self.q;
        Ok(UnimodularArray {
            q,
            rows: self.rows,
            cols: self.cols,
            exp: self.exp.iter().map(|e| e * factor).collect(),
        })
    }

    /// Entrywise multiplication by `-1`. The trivial alphabet `q = 1` is
    /// lifted to `q = 2`; other odd orders cannot represent `-1`.
    pub fn negate(&self) -> Result<Self> {
        if self.q == 1 {
            return self.lift(2)?.negate();
        }
        if !self.q.is_multiple_of(2) {
            return Err(Error::AlphabetClosure { q: self.q });
        }
        let half = self.q / 2;
        Ok(self.with_exponents(self.exp.iter().map(|e| (e + half) % self.q).collect()))
    }

    /// Reverses the array along both dimensions.
    pub fn reverse_all_dims(&self) -> Self {
        self.with_exponents(self.exp.iter().rev().copied().collect())
    }

    pub fn conjugate(&self) -> Self {
        self.with_exponents(self.exp.iter().map(|e| (self.q - e) % self.q).collect())
    }

    pub fn scaled(&self, sign: Sign) -> Result<Self> {
        match sign {
            Sign::Plus => Ok(self.clone()),
            Sign::Minus => self.negate(),
        }
    }

    /// Horizontal concatenation of sign-scaled blocks sharing `q` and row
    /// count.
    pub fn concat_cols(blocks: &[(Sign, &UnimodularArray)]) -> Result<Self> {
        let Some(&(_, first)) = blocks.first() else {
            return Err(Error::InvalidShape("no blocks to concatenate".into()));
        };
        for &(_, block) in blocks {
            if block.q != first.q || block.rows != first.rows {
                return Err(Error::ShapeMismatch {
                    left: first.describe(),
                    right: block.describe(),
                });
            }
        }
        let scaled = blocks
            .iter()
            .map(|&(sign, block)| block.scaled(sign))
            .collect::<Result<Vec<_>>>()?;
        let q = scaled.iter().map(|b| b.q).max().unwrap_or(first.q);
        let scaled = scaled
            .iter()
            .map(|b| b.lift(q))
            .collect::<Result<Vec<_>>>()?;
        let cols = scaled.iter().map(|b| b.cols).sum();
        let mut exp = Vec::with_capacity(first.rows * cols);
        for r in 0..first.rows {
            for b in &scaled {
                exp.extend_from_slice(&b.exp[r * b.cols..(r + 1) * b.cols]);
            }
        }
        Self::new(q, first.rows, cols, exp)
    }

    /// Lays out sign-scaled copies of `first`/`second` on a block grid.
    pub fn block_compose(
        grid: &BlockGrid,
        first: &UnimodularArray,
        second: &UnimodularArray,
    ) -> Result<Self> {
        if first.q != second.q || first.shape() != second.shape() {
            return Err(Error::ShapeMismatch {
                left: first.describe(),
                right: second.describe(),
            });
        }
        let mut band_rows = Vec::with_capacity(grid.rows());
        for r in 0..grid.rows() {
            let blocks: Vec<(Sign, &UnimodularArray)> = (0..grid.cols())
                .map(|c| {
                    let (sign, slot) = grid.cell(r, c);
                    let block = match slot {
                        Slot::First => first,
                        Slot::Second => second,
                    };
                    (sign, block)
                })
                .collect();
            band_rows.push(Self::concat_cols(&blocks)?);
        }
        Self::concat_rows(&band_rows)
    }

    fn concat_rows(bands: &[UnimodularArray]) -> Result<Self> {
        let q = bands.iter().map(|b| b.q).max().unwrap_or(1);
        let bands = bands
            .iter()
            .map(|b| b.lift(q))
            .collect::<Result<Vec<_>>>()?;
        let cols = bands[0].cols;
        let rows = bands.iter().map(|b| b.rows).sum();
        let exp = bands.iter().flat_map(|b| b.exp.iter().copied()).collect();
        Self::new(q, rows, cols, exp)
    }

    pub(crate) fn describe(&self) -> String {
        format!("{}x{} over q={}", self.rows, self.cols, self.q)
    }
}

impl fmt::Display for UnimodularArray {
    /// Renders entries in unit notation when the alphabet is binary or
    /// quaternary, and as `w^e` otherwise.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (r, row) in self.exp.chunks(self.cols).enumerate() {
            if r > 0 {
                f.write_str("; ")?;
            }
            for (c, &e) in row.iter().enumerate() {
                if c > 0 {
                    f.write_str(" ")?;
                }
                let unit = match (self.q, e) {
                    (_, 0) => "1".to_string(),
                    (2, 1) | (4, 2) => "-1".to_string(),
                    (4, 1) => "i".to_string(),
                    (4, 3) => "-i".to_string(),
                    (_, e) => format!("w^{e}"),
                };
                f.write_str(&unit)?;
            }
        }
        Ok(())
    }
}

/// Which member of a pair fills a block.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Slot {
    First,
    Second,
}

/// An `R × C` grid of `(sign, slot)` cells describing a block composition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockGrid {
    rows: usize,
    cols: usize,
    cells: Vec<(Sign, Slot)>,
}

impl BlockGrid {
    pub fn new(rows: usize, cols: usize, cells: Vec<(Sign, Slot)>) -> Result<Self> {
        if rows == 0 || cols == 0 || cells.len() != rows * cols {
            return Err(Error::InvalidShape(format!(
                "{rows}x{cols} block grid with {} cells",
                cells.len()
            )));
        }
        Ok(BlockGrid { rows, cols, cells })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn cell(&self, row: usize, col: usize) -> (Sign, Slot) {
        self.cells[row * self.cols + col]
    }
}

/// An ordered pair of arrays sharing alphabet and shape.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "PairRepr", into = "PairRepr")]
pub struct ArrayPair {
    first: UnimodularArray,
    second: UnimodularArray,
}

#[derive(Serialize, Deserialize)]
struct PairRepr {
    first: UnimodularArray,
    second: UnimodularArray,
}

impl TryFrom<PairRepr> for ArrayPair {
    type Error = Error;
    fn try_from(repr: PairRepr) -> Result<Self> {
        ArrayPair::new(repr.first, repr.second)
    }
}

impl From<ArrayPair> for PairRepr {
    fn from(p: ArrayPair) -> Self {
        PairRepr {
            first: p.first,
            second: p.second,
        }
    }
}

impl ArrayPair {
    pub fn new(first: UnimodularArray, second: UnimodularArray) -> Result<Self> {
        if first.q != second.q || first.shape() != second.shape() {
            return Err(Error::ShapeMismatch {
                left: first.describe(),
                right: second.describe(),
            });
        }
        Ok(ArrayPair { first, second })
    }

    /// Like [`ArrayPair::new`], but first lifts both members to the least
    /// common multiple of their alphabet orders.
    pub fn lifted(first: UnimodularArray, second: UnimodularArray) -> Result<Self> {
        let q = lcm(first.q, second.q);
        ArrayPair::new(first.lift(q)?, second.lift(q)?)
    }

    pub fn first(&self) -> &UnimodularArray {
        &self.first
    }

    pub fn second(&self) -> &UnimodularArray {
        &self.second
    }

    pub fn q(&self) -> u32 {
        self.first.q
    }

    pub fn shape(&self) -> (usize, usize) {
        self.first.shape()
    }

    pub fn is_sequence_pair(&self) -> bool {
        self.first.is_sequence()
    }

    pub fn into_parts(self) -> (UnimodularArray, UnimodularArray) {
        (self.first, self.second)
    }

    pub fn lift(&self, q: u32) -> Result<Self> {
        ArrayPair::new(self.first.lift(q)?, self.second.lift(q)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("pair serialization is infallible")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }
}

fn lcm(a: u32, b: u32) -> u32 {
    fn gcd(a: u32, b: u32) -> u32 {
        if b == 0 {
            a
        } else {
            gcd(b, a % b)
        }
    }
    a / gcd(a, b) * b
}

#[cfg(test)]
mod tests {
    use super::*;

    fn units(s: &str) -> UnimodularArray {
        UnimodularArray::parse_units(s).unwrap()
    }

    #[test]
    fn negate_binary_and_quaternary() {
        assert_eq!(units("1 1 -1").negate().unwrap(), units("-1 -1 1"));
        assert_eq!(units("1 i 1").negate().unwrap(), units("-1 -i -1"));
    }

    #[test]
    fn negate_rejects_odd_alphabet() {
        let a = UnimodularArray::sequence(3, vec![0, 1, 2]).unwrap();
        assert!(matches!(a.negate(), Err(Error::AlphabetClosure { q: 3 })));
    }

    #[test]
    fn negate_trivial_alphabet_lifts_to_binary() {
        let a = UnimodularArray::sequence(1, vec![0, 0]).unwrap();
        let n = a.negate().unwrap();
        assert_eq!(n.q(), 2);
        assert_eq!(n.exponents(), &[1, 1]);
    }

    #[test]
    fn reverse_examples() {
        assert_eq!(units("1 1 -1").reverse_all_dims(), units("-1 1 1"));
        assert_eq!(
            units("1 1 -1; -1 -i -1").reverse_all_dims(),
            units("-1 -i -1; -1 1 1")
        );
        let single = units("i");
        assert_eq!(single.reverse_all_dims(), single);
    }

    #[test]
    fn conjugate_examples() {
        assert_eq!(units("1 i 1").conjugate(), units("1 -i 1"));
        let b = units("1 -1; -1 -1");
        assert_eq!(b.conjugate(), b);
    }

    #[test]
    fn concat_examples() {
        let a = units("1 1");
        let b = units("1 -1");
        let out = UnimodularArray::concat_cols(&[(Sign::Plus, &a), (Sign::Minus, &b)]).unwrap();
        assert_eq!(out, units("1 1 -1 1"));

        let tall = units("1 1; 1 1");
        assert!(matches!(
            UnimodularArray::concat_cols(&[(Sign::Plus, &a), (Sign::Plus, &tall)]),
            Err(Error::ShapeMismatch { .. })
        ));

        let ternary = UnimodularArray::sequence(3, vec![1]).unwrap();
        assert!(matches!(
            UnimodularArray::concat_cols(&[(Sign::Minus, &ternary)]),
            Err(Error::AlphabetClosure { q: 3 })
        ));
    }

    #[test]
    fn block_compose_reduces_to_concat() {
        let a = units("1 i -1");
        let b = units("-i 1 1");
        let grid = BlockGrid::new(
            1,
            4,
            vec![
                (Sign::Plus, Slot::First),
                (Sign::Plus, Slot::Second),
                (Sign::Plus, Slot::First),
                (Sign::Minus, Slot::Second),
            ],
        )
        .unwrap();
        let composed = UnimodularArray::block_compose(&grid, &a, &b).unwrap();
        let concat = UnimodularArray::concat_cols(&[
            (Sign::Plus, &a),
            (Sign::Plus, &b),
            (Sign::Plus, &a),
            (Sign::Minus, &b),
        ])
        .unwrap();
        assert_eq!(composed, concat);

        let identity = BlockGrid::new(1, 1, vec![(Sign::Plus, Slot::First)]).unwrap();
        assert_eq!(
            UnimodularArray::block_compose(&identity, &a, &b).unwrap(),
            a
        );
    }

    #[test]
    fn json_round_trip_and_validation() {
        let pair = ArrayPair::new(units("1 1 -1; -1 -i -1"), units("1 1 -1; 1 i 1")).unwrap();
        let text = pair.to_json();
        assert_eq!(ArrayPair::from_json(&text).unwrap(), pair);

        let bad = r#"{"q": 2, "rows": 1, "cols": 2, "exp": [[0, 2]]}"#;
        assert!(serde_json::from_str::<UnimodularArray>(bad).is_err());
        let ragged = r#"{"q": 2, "rows": 2, "cols": 2, "exp": [[0, 1], [0]]}"#;
        assert!(serde_json::from_str::<UnimodularArray>(ragged).is_err());
    }

    #[test]
    fn pair_requires_matching_shape() {
        assert!(ArrayPair::new(units("1 1"), units("1 1 1")).is_err());
        assert!(ArrayPair::new(units("1 1"), units("1 i")).is_err());
        let lifted = ArrayPair::lifted(units("1 -1"), units("1 i")).unwrap();
        assert_eq!(lifted.q(), 4);
        assert_eq!(lifted.first().exponents(), &[0, 2]);
    }

    #[test]
    fn display_uses_unit_notation() {
        assert_eq!(units("1 i; -1 -i").to_string(), "1 i; -1 -i");
    }
}
