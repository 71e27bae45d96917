//! Reference correlations written straight from the definitions, plus
//! helpers shared by the integration tests.
#![allow(dead_code)]

use golay_zcz::{ArrayPair, UnimodularArray};
use num_complex::Complex64;
use rand::Rng;

/// A Gaussian integer as `(re, im)`.
pub type Exact = (i64, i64);

/// `i^e` for quaternary exponents, `(-1)^e` for binary ones.
pub fn unit(q: u32, e: u32) -> Exact {
    match (q, e) {
        (1, _) => (1, 0),
        (2, 0) | (4, 0) => (1, 0),
        (2, 1) | (4, 2) => (-1, 0),
        (4, 1) => (0, 1),
        (4, 3) => (0, -1),
        _ => panic!("not a Gaussian alphabet: q = {q}"),
    }
}

fn mul_conj(x: Exact, y: Exact) -> Exact {
    (x.0 * y.0 + x.1 * y.1, x.1 * y.0 - x.0 * y.1)
}

fn entry(a: &UnimodularArray, i: usize, j: usize) -> Exact {
    unit(a.q(), a.exponent(i, j))
}

/// `R(t1, t2) = Σ a[i][j] · conj(b[(i+t1) mod L1][(j+t2) mod L2])` for
/// `t` in `[0, L1) × [0, L2)`, row-major.
pub fn periodic(a: &UnimodularArray, b: &UnimodularArray) -> Vec<Vec<Exact>> {
    let (l1, l2) = a.shape();
    let mut out = vec![vec![(0, 0); l2]; l1];
    for (t1, row) in out.iter_mut().enumerate() {
        for (t2, cell) in row.iter_mut().enumerate() {
            for i in 0..l1 {
                for j in 0..l2 {
                    let p = mul_conj(entry(a, i, j), entry(b, (i + t1) % l1, (j + t2) % l2));
                    cell.0 += p.0;
                    cell.1 += p.1;
                }
            }
        }
    }
    out
}

/// The four sign cases of the aperiodic correlation, each with its own
/// index ranges. Rows are `t1 = -(L1-1) ..= L1-1`, columns likewise.
pub fn aperiodic(a: &UnimodularArray, b: &UnimodularArray) -> Vec<Vec<Exact>> {
    let (l1, l2) = a.shape();
    let (n1, n2) = (l1 as isize, l2 as isize);
    let mut out = Vec::new();
    for t1 in -(n1 - 1)..n1 {
        let mut row = Vec::new();
        for t2 in -(n2 - 1)..n2 {
            let (i_range, j_range) = match (t1 >= 0, t2 >= 0) {
                (true, true) => (0..n1 - t1, 0..n2 - t2),
                (true, false) => (0..n1 - t1, -t2..n2),
                (false, true) => (-t1..n1, 0..n2 - t2),
                (false, false) => (-t1..n1, -t2..n2),
            };
            let mut acc = (0, 0);
            for i in i_range {
                for j in j_range.clone() {
                    let x = entry(a, i as usize, j as usize);
                    let y = entry(b, (i + t1) as usize, (j + t2) as usize);
                    let p = mul_conj(x, y);
                    acc.0 += p.0;
                    acc.1 += p.1;
                }
            }
            row.push(acc);
        }
        out.push(row);
    }
    out
}

pub fn to_complex(x: Exact) -> Complex64 {
    Complex64::new(x.0 as f64, x.1 as f64)
}

pub fn random_array(rng: &mut impl Rng, q: u32, rows: usize, cols: usize) -> UnimodularArray {
    let exp = (0..rows * cols).map(|_| rng.random_range(0..q)).collect();
    UnimodularArray::new(q, rows, cols, exp).unwrap()
}

pub fn units(text: &str) -> UnimodularArray {
    UnimodularArray::parse_units(text).unwrap()
}

pub fn pair(a: &str, b: &str) -> ArrayPair {
    ArrayPair::lifted(units(a), units(b)).unwrap()
}

/// Gaussian integers from a compact list like `"12 0 4-4i 4i -4"`.
pub fn gaussians(text: &str) -> Vec<Exact> {
    text.split_whitespace()
        .map(|t| {
            let Some(body) = t.strip_suffix('i') else {
                return (t.parse().unwrap(), 0);
            };
            let split = body.rfind(['+', '-']).filter(|&k| k > 0);
            match split {
                Some(k) => {
                    let im = &body[k..];
                    let im = if im.len() == 1 {
                        format!("{im}1")
                    } else {
                        im.to_string()
                    };
                    (body[..k].parse().unwrap(), im.parse().unwrap())
                }
                None => {
                    let im = match body {
                        "" | "+" => 1,
                        "-" => -1,
                        s => s.parse().unwrap(),
                    };
                    (0, im)
                }
            }
        })
        .collect()
}

/// Expands `"0x10"` run-length tokens before parsing.
pub fn expand(text: &str) -> Vec<Exact> {
    let mut tokens = Vec::new();
    for t in text.split_whitespace() {
        match t.split_once('x') {
            Some((v, n)) => tokens.extend(std::iter::repeat_n(v.to_string(), n.parse().unwrap())),
            None => tokens.push(t.to_string()),
        }
    }
    gaussians(&tokens.join(" "))
}
