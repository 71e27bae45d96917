//! Complex values produced by correlation sums.
//!
//! Over alphabets whose order divides 4 every root of unity is a Gaussian
//! integer, so correlations are carried exactly. Other orders fall back to
//! `f64` complex arithmetic.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use serde::{Serialize, Serializer};

/// Default zero-test tolerance for floating values, scaled by the array size.
pub const DEFAULT_TOLERANCE: f64 = 1e-9;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Gaussian {
    pub re: i64,
    pub im: i64,
}

impl Gaussian {
    pub const ZERO: Gaussian = Gaussian { re: 0, im: 0 };
    pub const ONE: Gaussian = Gaussian { re: 1, im: 0 };

    pub const fn new(re: i64, im: i64) -> Self {
        Gaussian { re, im }
    }

    pub fn conj(self) -> Self {
        Gaussian::new(self.re, -self.im)
    }

    pub fn is_zero(self) -> bool {
        self.re == 0 && self.im == 0
    }

    pub fn norm_sqr(self) -> i64 {
        self.re * self.re + self.im * self.im
    }

    pub fn to_complex64(self) -> Complex64 {
        Complex64::new(self.re as f64, self.im as f64)
    }
}

impl Add for Gaussian {
    type Output = Gaussian;
    fn add(self, rhs: Gaussian) -> Gaussian {
        Gaussian::new(self.re + rhs.re, self.im + rhs.im)
    }
}

impl Sub for Gaussian {
    type Output = Gaussian;
    fn sub(self, rhs: Gaussian) -> Gaussian {
        Gaussian::new(self.re - rhs.re, self.im - rhs.im)
    }
}

impl Mul for Gaussian {
    type Output = Gaussian;
    fn mul(self, rhs: Gaussian) -> Gaussian {
        Gaussian::new(
            self.re * rhs.re - self.im * rhs.im,
            self.re * rhs.im + self.im * rhs.re,
        )
    }
}

impl Neg for Gaussian {
    type Output = Gaussian;
    fn neg(self) -> Gaussian {
        Gaussian::new(-self.re, -self.im)
    }
}

impl fmt::Display for Gaussian {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{:+}i", self.re, self.im)
    }
}

/// A correlation value, either exact or floating.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ComplexValue {
    Exact(Gaussian),
    Approx(Complex64),
}

impl ComplexValue {
    pub fn zero(exact: bool) -> Self {
        if exact {
            ComplexValue::Exact(Gaussian::ZERO)
        } else {
            ComplexValue::Approx(Complex64::new(0.0, 0.0))
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, ComplexValue::Exact(_))
    }

    pub fn exact(&self) -> Option<Gaussian> {
        match *self {
            ComplexValue::Exact(g) => Some(g),
            ComplexValue::Approx(_) => None,
        }
    }

    pub fn to_complex64(&self) -> Complex64 {
        match *self {
            ComplexValue::Exact(g) => g.to_complex64(),
            ComplexValue::Approx(c) => c,
        }
    }

    pub fn conj(&self) -> Self {
        match *self {
            ComplexValue::Exact(g) => ComplexValue::Exact(g.conj()),
            ComplexValue::Approx(c) => ComplexValue::Approx(c.conj()),
        }
    }

    pub fn abs(&self) -> f64 {
        self.to_complex64().norm()
    }

    /// Exact values are zero only when both parts are 0; floating values are
    /// zero when their modulus is at most `tolerance`.
    pub fn is_zero(&self, tolerance: f64) -> bool {
        match *self {
            ComplexValue::Exact(g) => g.is_zero(),
            ComplexValue::Approx(c) => c.norm() <= tolerance,
        }
    }
}

impl Add for ComplexValue {
    type Output = ComplexValue;
    fn add(self, rhs: ComplexValue) -> ComplexValue {
        match (self, rhs) {
            (ComplexValue::Exact(a), ComplexValue::Exact(b)) => ComplexValue::Exact(a + b),
            (a, b) => ComplexValue::Approx(a.to_complex64() + b.to_complex64()),
        }
    }
}

impl Mul for ComplexValue {
    type Output = ComplexValue;
    fn mul(self, rhs: ComplexValue) -> ComplexValue {
        match (self, rhs) {
            (ComplexValue::Exact(a), ComplexValue::Exact(b)) => ComplexValue::Exact(a * b),
            (a, b) => ComplexValue::Approx(a.to_complex64() * b.to_complex64()),
        }
    }
}

impl Neg for ComplexValue {
    type Output = ComplexValue;
    fn neg(self) -> ComplexValue {
        match self {
            ComplexValue::Exact(g) => ComplexValue::Exact(-g),
            ComplexValue::Approx(c) => ComplexValue::Approx(-c),
        }
    }
}

impl From<Gaussian> for ComplexValue {
    fn from(g: Gaussian) -> Self {
        ComplexValue::Exact(g)
    }
}

impl fmt::Display for ComplexValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            ComplexValue::Exact(g) => g.fmt(f),
            ComplexValue::Approx(c) => {
                let im = format_sig(c.im);
                if im.starts_with('-') {
                    write!(f, "{}{}i", format_sig(c.re), im)
                } else {
                    write!(f, "{}+{}i", format_sig(c.re), im)
                }
            }
        }
    }
}

impl Serialize for ComplexValue {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// Fixed-point rendering with 12 significant digits.
fn format_sig(x: f64) -> String {
    const DIGITS: i32 = 12;
    if x == 0.0 || !x.is_finite() {
        // normalise -0.0
        return format!("{:.*}", (DIGITS - 1) as usize, 0.0);
    }
    let magnitude = x.abs().log10().floor() as i32;
    let decimals = (DIGITS - 1 - magnitude).max(0) as usize;
    format!("{:.*}", decimals, x)
}

/// Whether every `q`-th root of unity is a Gaussian integer.
pub fn is_gaussian_alphabet(q: u32) -> bool {
    q != 0 && 4 % q == 0
}

/// `exp(2πi·k/q)` as a floating complex number.
pub fn root_of_unity(q: u32, k: u32) -> Complex64 {
    if is_gaussian_alphabet(q) {
        return gaussian_root(q, k).to_complex64();
    }
    Complex64::from_polar(1.0, std::f64::consts::TAU * f64::from(k % q) / f64::from(q))
}

/// `exp(2πi·k/q)` for `q` dividing 4.
pub(crate) fn gaussian_root(q: u32, k: u32) -> Gaussian {
    debug_assert!(is_gaussian_alphabet(q));
    match (k % q) * (4 / q) {
        0 => Gaussian::new(1, 0),
        1 => Gaussian::new(0, 1),
        2 => Gaussian::new(-1, 0),
        _ => Gaussian::new(0, -1),
    }
}

/// Evaluates `Σ_k counts[k] · ζ_q^k`.
pub(crate) fn cyclotomic_sum(q: u32, counts: &[i64]) -> ComplexValue {
    if is_gaussian_alphabet(q) {
        let g = counts
            .iter()
            .enumerate()
            .fold(Gaussian::ZERO, |acc, (k, &n)| {
                let r = gaussian_root(q, k as u32);
                acc + Gaussian::new(r.re * n, r.im * n)
            });
        ComplexValue::Exact(g)
    } else {
        let c = counts
            .iter()
            .enumerate()
            .filter(|(_, &n)| n != 0)
            .map(|(k, &n)| root_of_unity(q, k as u32) * n as f64)
            .sum();
        ComplexValue::Approx(c)
    }
}
