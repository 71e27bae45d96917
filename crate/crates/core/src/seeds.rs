//! Seed pairs for the constructions and an exhaustive search for small
//! complementary sequence pairs.
//!
//! The search evaluates aperiodic autocorrelations with its own direct
//! loop, so it doubles as an independent check on the correlation kernels.

use std::collections::HashMap;
use std::fmt;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::array::{ArrayPair, Sign, UnimodularArray};
use crate::complex::{
    gaussian_root, is_gaussian_alphabet, root_of_unity, Gaussian, DEFAULT_TOLERANCE,
};
use crate::error::{Error, Result};
use crate::verify::is_gcap;

/// Largest number of candidate pairs `q^(2N)` searched by default.
pub const DEFAULT_SEARCH_GUARD: u128 = 1 << 32;

const CATALOG_JSON: &str = include_str!("../data/catalog.json");

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    CatalogPublished,
    CatalogDoubling,
    Search,
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Provenance::CatalogPublished => "catalog-published",
            Provenance::CatalogDoubling => "catalog-doubling",
            Provenance::Search => "search",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SeedRecord {
    pub id: String,
    pub provenance: Provenance,
    #[serde(default)]
    pub notes: String,
    pub pair: ArrayPair,
}

/// The built-in seed catalog. Every entry is checked for complementarity.
pub fn catalog() -> Vec<SeedRecord> {
    let records: Vec<SeedRecord> =
        serde_json::from_str(CATALOG_JSON).expect("bundled catalog is valid JSON");
    for r in &records {
        assert!(
            is_gcap(&r.pair).holds,
            "catalog entry {} is not complementary",
            r.id
        );
    }
    records
}

pub fn catalog_entry(id: &str) -> Option<SeedRecord> {
    catalog().into_iter().find(|r| r.id == id)
}

pub fn catalog_ids() -> Vec<String> {
    catalog().into_iter().map(|r| r.id).collect()
}

/// Classical length doubling `(a‖b, a‖-b)`.
pub fn golay_double(pair: &ArrayPair) -> Result<ArrayPair> {
    if let Some(w) = is_gcap(pair).witness {
        return Err(Error::NotComplementary(w));
    }
    let pair = match pair.q() {
        1 => pair.lift(2)?,
        q if q % 2 == 1 => return Err(Error::AlphabetClosure { q }),
        _ => pair.clone(),
    };
    let (a, b) = (pair.first(), pair.second());
    ArrayPair::new(
        UnimodularArray::concat_cols(&[(Sign::Plus, a), (Sign::Plus, b)])?,
        UnimodularArray::concat_cols(&[(Sign::Plus, a), (Sign::Minus, b)])?,
    )
}

/// Options for [`brute_force_search`].
#[derive(Clone, Copy, Debug)]
pub struct SearchOptions {
    pub limit: Option<usize>,
    pub guard: u128,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            limit: None,
            guard: DEFAULT_SEARCH_GUARD,
        }
    }
}

/// All complementary sequence pairs of `length` over `q`-th roots of
/// unity, in lexicographic order of `(first, second)` exponent vectors.
pub fn brute_force_search(length: usize, q: u32, options: SearchOptions) -> Result<Vec<ArrayPair>> {
    if length == 0 || q == 0 {
        return Err(Error::InvalidShape(format!(
            "search over length {length}, q = {q}"
        )));
    }
    let singles = u128::from(q)
        .checked_pow(length as u32)
        .filter(|&n| n <= u128::from(u32::MAX));
    let candidates = singles.and_then(|n| n.checked_mul(n));
    if !candidates.is_some_and(|c| c <= options.guard) {
        return Err(Error::GuardExceeded {
            length,
            q,
            guard: options.guard,
        });
    }
    let count = singles.unwrap() as usize;
    let index_pairs = if is_gaussian_alphabet(q) {
        search_exact(length, q, count)
    } else {
        search_floating(length, q, count)
    };
    let take = options.limit.unwrap_or(usize::MAX);
    index_pairs
        .into_iter()
        .take(take)
        .map(|(a, b)| {
            ArrayPair::new(
                UnimodularArray::sequence(q, digits(a, length, q))?,
                UnimodularArray::sequence(q, digits(b, length, q))?,
            )
        })
        .collect()
}

/// Base-`q` digits of `index`, most significant first.
fn digits(mut index: usize, length: usize, q: u32) -> Vec<u32> {
    let mut out = vec![0; length];
    for d in out.iter_mut().rev() {
        *d = (index % q as usize) as u32;
        index /= q as usize;
    }
    out
}

/// Off-peak aperiodic autocorrelation `(C(1), .., C(N-1))`, computed
/// directly from the definition.
fn sidelobes_exact(seq: &[u32], q: u32) -> Vec<Gaussian> {
    let n = seq.len();
    (1..n)
        .map(|shift| {
            (0..n - shift).fold(Gaussian::ZERO, |acc, k| {
                acc + gaussian_root(q, seq[k]) * gaussian_root(q, seq[k + shift]).conj()
            })
        })
        .collect()
}

fn sidelobes_floating(seq: &[u32], q: u32) -> Vec<Complex64> {
    let n = seq.len();
    (1..n)
        .map(|shift| {
            (0..n - shift)
                .map(|k| root_of_unity(q, seq[k]) * root_of_unity(q, seq[k + shift]).conj())
                .sum()
        })
        .collect()
}

/// Pairs up sequences whose sidelobes cancel exactly. Negative shifts are
/// conjugates of positive ones and need no separate check.
fn search_exact(length: usize, q: u32, count: usize) -> Vec<(usize, usize)> {
    let sidelobes: Vec<Vec<Gaussian>> = (0..count)
        .into_par_iter()
        .map(|k| sidelobes_exact(&digits(k, length, q), q))
        .collect();
    let mut by_sidelobes: HashMap<&[Gaussian], Vec<usize>> = HashMap::new();
    for (k, s) in sidelobes.iter().enumerate() {
        by_sidelobes.entry(s.as_slice()).or_default().push(k);
    }
    let mut out = Vec::new();
    for (a, s) in sidelobes.iter().enumerate() {
        let wanted: Vec<Gaussian> = s.iter().map(|&g| -g).collect();
        if let Some(bs) = by_sidelobes.get(wanted.as_slice()) {
            out.extend(bs.iter().map(|&b| (a, b)));
        }
    }
    out
}

fn search_floating(length: usize, q: u32, count: usize) -> Vec<(usize, usize)> {
    let sidelobes: Vec<Vec<Complex64>> = (0..count)
        .into_par_iter()
        .map(|k| sidelobes_floating(&digits(k, length, q), q))
        .collect();
    let eps = DEFAULT_TOLERANCE * length as f64;
    (0..count)
        .into_par_iter()
        .flat_map_iter(|a| {
            let sa = &sidelobes[a];
            let sidelobes = &sidelobes;
            (0..count).filter_map(move |b| {
                let clean = sa
                    .iter()
                    .zip(&sidelobes[b])
                    .all(|(x, y)| (x + y).norm() <= eps);
                clean.then_some((a, b))
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_has_the_required_seeds() {
        let ids = catalog_ids();
        for id in [
            "binary-2",
            "binary-4",
            "binary-8",
            "binary-10",
            "quadriphase-3",
            "quaternary-2x3",
        ] {
            assert!(ids.iter().any(|i| i == id), "missing {id}");
        }
    }

    #[test]
    fn published_seed_values() {
        let s = catalog_entry("binary-10").unwrap().pair;
        assert_eq!(
            s.first(),
            &UnimodularArray::binary(&[1, 1, -1, 1, 1, 1, 1, 1, -1, -1]).unwrap()
        );
        assert_eq!(
            s.second(),
            &UnimodularArray::binary(&[1, 1, -1, 1, -1, 1, -1, -1, 1, 1]).unwrap()
        );
        let s = catalog_entry("quaternary-2x3").unwrap().pair;
        assert_eq!(
            s.first(),
            &UnimodularArray::parse_units("1 1 -1; -1 -i -1").unwrap()
        );
        assert_eq!(
            s.second(),
            &UnimodularArray::parse_units("1 1 -1; 1 i 1").unwrap()
        );
    }

    #[test]
    fn doubling_trivial_pair() {
        let one = UnimodularArray::sequence(1, vec![0]).unwrap();
        let d = golay_double(&ArrayPair::new(one.clone(), one).unwrap()).unwrap();
        assert_eq!(d.first(), &UnimodularArray::binary(&[1, 1]).unwrap());
        assert_eq!(d.second(), &UnimodularArray::binary(&[1, -1]).unwrap());
    }

    #[test]
    fn doubling_twice_from_length_two() {
        let p = catalog_entry("binary-2").unwrap().pair;
        let p8 = golay_double(&golay_double(&p).unwrap()).unwrap();
        assert_eq!(p8.shape(), (1, 8));
        assert!(is_gcap(&p8).holds);
    }

    #[test]
    fn doubling_rejects_non_complementary() {
        let ones = UnimodularArray::binary(&[1, 1]).unwrap();
        let p = ArrayPair::new(ones.clone(), ones).unwrap();
        assert!(matches!(golay_double(&p), Err(Error::NotComplementary(_))));
    }

    #[test]
    fn search_small_binary_lengths() {
        let two = brute_force_search(2, 2, SearchOptions::default()).unwrap();
        let expected = ArrayPair::new(
            UnimodularArray::binary(&[1, 1]).unwrap(),
            UnimodularArray::binary(&[1, -1]).unwrap(),
        )
        .unwrap();
        assert!(two.contains(&expected));
        assert!(brute_force_search(3, 2, SearchOptions::default())
            .unwrap()
            .is_empty());
    }

    #[test]
    fn search_limit_and_guard() {
        let opts = SearchOptions {
            limit: Some(3),
            ..Default::default()
        };
        assert_eq!(brute_force_search(4, 2, opts).unwrap().len(), 3);
        let tight = SearchOptions {
            limit: None,
            guard: 100,
        };
        assert!(matches!(
            brute_force_search(4, 2, tight),
            Err(Error::GuardExceeded {
                length: 4,
                q: 2,
                guard: 100
            })
        ));
        assert!(matches!(
            brute_force_search(40, 2, SearchOptions::default()),
            Err(Error::GuardExceeded { .. })
        ));
    }

    #[test]
    fn floating_search_finds_ternary_pairs() {
        // every length-1 pair is complementary
        let all = brute_force_search(1, 3, SearchOptions::default()).unwrap();
        assert_eq!(all.len(), 9);
        // w^x = -w^y has no solution over cube roots of unity
        assert!(brute_force_search(2, 3, SearchOptions::default())
            .unwrap()
            .is_empty());
    }
}
