use thiserror::Error;

use crate::verify::Witness;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("exponent {exponent} out of range for alphabet order {q}")]
    ExponentOutOfRange { exponent: u32, q: u32 },

    #[error("invalid array shape: {0}")]
    InvalidShape(String),

    #[error("alphabet order {q} is not closed under negation")]
    AlphabetClosure { q: u32 },

    #[error("shape mismatch: {left} vs {right}")]
    ShapeMismatch { left: String, right: String },

    #[error("sign quadruple ({0}, {1}, {2}, {3}) violates x1*x2 + x3*x4 = 0")]
    InvalidSigns(i8, i8, i8, i8),

    #[error("sign must be +1 or -1, got {0}")]
    InvalidSign(i64),

    #[error("seed is not a complementary pair: {0}")]
    NotComplementary(Witness),

    #[error("supplied mate fails the mate condition: {0}")]
    NotMate(Witness),

    #[error("search over {q}^{exponent} candidate pairs exceeds guard {guard}", exponent = 2 * length)]
    GuardExceeded { length: usize, q: u32, guard: u128 },

    #[error("parse error: {0}")]
    Parse(String),
}
