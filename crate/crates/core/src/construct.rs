//! Golay mates and the length-quadrupling constructions.
//!
//! Given a complementary seed `(A, B)` with mate `(C, D)`, the horizontal
//! construction lays out `[x1·A  x2·B  x3·A  x4·B]` and the same pattern over
//! `(C, D)`. With `x1·x2 + x3·x4 = 0` the result is again complementary, and
//! its periodic correlations vanish in a zone around the origin whose width
//! grows with the seed. The full construction tiles a fixed 4×4 sign pattern
//! and widens the zone in both dimensions.

use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::array::{ArrayPair, BlockGrid, Sign, Slot, UnimodularArray};
use crate::error::{Error, Result};
use crate::verify::{is_gcap, is_golay_mate};

/// Block signs `(x1, x2, x3, x4)`, valid when `x1·x2 + x3·x4 = 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct SignQuadruple([Sign; 4]);

impl SignQuadruple {
    pub fn new(signs: [Sign; 4]) -> Result<Self> {
        let q = SignQuadruple(signs);
        if q.is_valid() {
            Ok(q)
        } else {
            let [a, b, c, d] = q.values();
            Err(Error::InvalidSigns(a, b, c, d))
        }
    }

    pub fn from_ints(values: [i64; 4]) -> Result<Self> {
        let mut signs = [Sign::Plus; 4];
        for (s, v) in signs.iter_mut().zip(values) {
            *s = Sign::from_int(v)?;
        }
        Self::new(signs)
    }

    pub fn signs(&self) -> [Sign; 4] {
        self.0
    }

    pub fn values(&self) -> [i8; 4] {
        self.0.map(Sign::value)
    }

    fn is_valid(&self) -> bool {
        let [a, b, c, d] = self.values();
        a * b + c * d == 0
    }
}

impl fmt::Display for SignQuadruple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = self.values();
        write!(f, "{a},{b},{c},{d}")
    }
}

/// All sign quadruples satisfying `x1·x2 + x3·x4 = 0`, in lexicographic
/// order with `+1 < -1`.
pub fn enumerate_valid_sign_quadruples() -> Vec<SignQuadruple> {
    let both = [Sign::Plus, Sign::Minus];
    let mut out = Vec::new();
    for a in both {
        for b in both {
            for c in both {
                for d in both {
                    if let Ok(q) = SignQuadruple::new([a, b, c, d]) {
                        out.push(q);
                    }
                }
            }
        }
    }
    out
}

/// Alphabet closed under negation; the trivial alphabet is lifted to `q = 2`.
fn negation_closed(pair: &ArrayPair) -> Result<ArrayPair> {
    match pair.q() {
        1 => pair.lift(2),
        q if q % 2 == 1 => Err(Error::AlphabetClosure { q }),
        _ => Ok(pair.clone()),
    }
}

/// The mate `(rev(conj B), -rev(conj A))`, reversal taken along every
/// dimension.
pub fn golay_mate(pair: &ArrayPair) -> Result<ArrayPair> {
    let pair = negation_closed(pair)?;
    let c = pair.second().conjugate().reverse_all_dims();
    let d = pair.first().conjugate().reverse_all_dims().negate()?;
    ArrayPair::new(c, d)
}

fn require_gcap(pair: &ArrayPair) -> Result<()> {
    match is_gcap(pair).witness {
        None => Ok(()),
        Some(w) => Err(Error::NotComplementary(w)),
    }
}

/// The horizontal construction over a seed and an explicitly supplied mate.
/// Both the seed and the mate condition are verified first.
pub fn construct_2d_horizontal_with_mate(
    seed: &ArrayPair,
    mate: &ArrayPair,
    signs: SignQuadruple,
) -> Result<ArrayPair> {
    require_gcap(seed)?;
    let seed = negation_closed(seed)?;
    let mate = negation_closed(mate)?;
    if let Some(w) = is_golay_mate(&seed, &mate)?.witness {
        return Err(Error::NotMate(w));
    }
    horizontal(&seed, &mate, signs)
}

fn horizontal(seed: &ArrayPair, mate: &ArrayPair, signs: SignQuadruple) -> Result<ArrayPair> {
    let [x1, x2, x3, x4] = signs.signs();
    let layout = |a: &UnimodularArray, b: &UnimodularArray| {
        UnimodularArray::concat_cols(&[(x1, a), (x2, b), (x3, a), (x4, b)])
    };
    ArrayPair::new(
        layout(seed.first(), seed.second())?,
        layout(mate.first(), mate.second())?,
    )
}

/// `[x1·A x2·B x3·A x4·B]` paired with the same layout over the mate.
/// An `s1 × s2` seed gives an `s1 × 4s2` complementary pair.
pub fn construct_2d_horizontal(seed: &ArrayPair, signs: SignQuadruple) -> Result<ArrayPair> {
    require_gcap(seed)?;
    let seed = negation_closed(seed)?;
    let mate = golay_mate(&seed)?;
    horizontal(&seed, &mate, signs)
}

/// The sequence case of [`construct_2d_horizontal`]: a length-`N` seed gives
/// a length-`4N` complementary pair.
pub fn construct_1d(seed: &ArrayPair, signs: SignQuadruple) -> Result<ArrayPair> {
    if !seed.is_sequence_pair() {
        let (rows, cols) = seed.shape();
        return Err(Error::InvalidShape(format!(
            "expected a sequence pair, got {rows}x{cols} arrays"
        )));
    }
    construct_2d_horizontal(seed, signs)
}

/// Sign pattern of the 4×4 block construction; `true` marks the second
/// member of the pair.
const FULL_PATTERN: [[(i8, bool); 4]; 4] = [
    [(1, false), (1, true), (1, false), (-1, true)],
    [(1, false), (1, true), (-1, false), (1, true)],
    [(1, false), (1, true), (1, false), (-1, true)],
    [(-1, false), (-1, true), (1, false), (-1, true)],
];

/// The fixed block grid used by [`construct_2d_full`].
pub fn full_construction_grid() -> BlockGrid {
    let cells = FULL_PATTERN
        .iter()
        .flatten()
        .map(|&(s, second)| {
            let sign = if s > 0 { Sign::Plus } else { Sign::Minus };
            let slot = if second { Slot::Second } else { Slot::First };
            (sign, slot)
        })
        .collect();
    BlockGrid::new(4, 4, cells).expect("pattern is 4x4")
}

/// Tiles the seed and its mate on the fixed 4×4 sign pattern. An
/// `s1 × s2` seed gives a `4s1 × 4s2` complementary pair.
pub fn construct_2d_full(seed: &ArrayPair) -> Result<ArrayPair> {
    require_gcap(seed)?;
    let seed = negation_closed(seed)?;
    let mate = golay_mate(&seed)?;
    let grid = full_construction_grid();
    ArrayPair::new(
        UnimodularArray::block_compose(&grid, seed.first(), seed.second())?,
        UnimodularArray::block_compose(&grid, mate.first(), mate.second())?,
    )
}

/// Runs the horizontal construction for every valid sign quadruple.
pub fn construct_all_horizontal(seed: &ArrayPair) -> Result<Vec<(SignQuadruple, ArrayPair)>> {
    require_gcap(seed)?;
    enumerate_valid_sign_quadruples()
        .into_par_iter()
        .map(|signs| construct_2d_horizontal(seed, signs).map(|p| (signs, p)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn units(s: &str) -> UnimodularArray {
        UnimodularArray::parse_units(s).unwrap()
    }

    fn pair(a: &str, b: &str) -> ArrayPair {
        ArrayPair::lifted(units(a), units(b)).unwrap()
    }

    #[test]
    fn eight_valid_quadruples() {
        let all = enumerate_valid_sign_quadruples();
        assert_eq!(all.len(), 8);
        let example = SignQuadruple::from_ints([1, 1, 1, -1]).unwrap();
        assert!(all.contains(&example));
        assert!(matches!(
            SignQuadruple::from_ints([1, 1, 1, 1]),
            Err(Error::InvalidSigns(1, 1, 1, 1))
        ));
        assert!(matches!(
            SignQuadruple::from_ints([1, 0, 1, 1]),
            Err(Error::InvalidSign(0))
        ));
    }

    #[test]
    fn mate_of_short_quadriphase_pair() {
        let mate = golay_mate(&pair("1 1 -1", "1 i 1")).unwrap();
        assert_eq!(mate.first(), &units("1 -i 1"));
        assert_eq!(mate.second(), &units("1 -1 -1").lift(4).unwrap());
    }

    #[test]
    fn mate_rejects_odd_alphabet() {
        let a = UnimodularArray::sequence(3, vec![0]).unwrap();
        let p = ArrayPair::new(a.clone(), a).unwrap();
        assert!(matches!(
            golay_mate(&p),
            Err(Error::AlphabetClosure { q: 3 })
        ));
    }

    #[test]
    fn construct_rejects_non_complementary_seed() {
        let signs = SignQuadruple::from_ints([1, 1, 1, -1]).unwrap();
        assert!(matches!(
            construct_1d(&pair("1 1", "1 1"), signs),
            Err(Error::NotComplementary(_))
        ));
        assert!(matches!(
            construct_2d_full(&pair("1 1", "1 1")),
            Err(Error::NotComplementary(_))
        ));
    }

    #[test]
    fn construct_1d_rejects_arrays() {
        let signs = SignQuadruple::from_ints([1, 1, 1, -1]).unwrap();
        let seed = pair("1 1 -1; -1 -i -1", "1 1 -1; 1 i 1");
        assert!(matches!(
            construct_1d(&seed, signs),
            Err(Error::InvalidShape(_))
        ));
    }

    #[test]
    fn supplied_mate_is_checked() {
        let seed = pair("1 1", "1 -1");
        let signs = SignQuadruple::from_ints([1, -1, 1, 1]).unwrap();
        let good = golay_mate(&seed).unwrap();
        let built = construct_2d_horizontal_with_mate(&seed, &good, signs).unwrap();
        assert_eq!(built, construct_1d(&seed, signs).unwrap());
        assert!(matches!(
            construct_2d_horizontal_with_mate(&seed, &seed, signs),
            Err(Error::NotMate(_))
        ));
    }

    #[test]
    fn trivial_alphabet_seed_is_lifted() {
        let one = UnimodularArray::sequence(1, vec![0]).unwrap();
        let seed = ArrayPair::new(one.clone(), one).unwrap();
        let out = construct_2d_full(&seed).unwrap();
        assert_eq!(out.q(), 2);
        assert_eq!(out.shape(), (4, 4));
    }

    #[test]
    fn full_grid_matches_pattern() {
        let g = full_construction_grid();
        assert_eq!(g.cell(1, 2), (Sign::Minus, Slot::First));
        assert_eq!(g.cell(3, 1), (Sign::Minus, Slot::Second));
        assert_eq!(g.cell(0, 3), (Sign::Minus, Slot::Second));
        assert_eq!(g.cell(2, 0), (Sign::Plus, Slot::First));
    }
}
