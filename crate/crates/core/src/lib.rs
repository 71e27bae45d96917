//! Golay complementary pairs and array pairs with large periodic
//! zero-correlation zones.
//!
//! A complementary pair `(A, B)` has aperiodic autocorrelations that cancel
//! at every nonzero shift. Starting from such a seed of length `N` (or size
//! `s1 × s2`) and its mate `(rev(conj B), -rev(conj A))`, the constructions
//! in [`construct`] build pairs of length `4N` (sizes `s1 × 4s2` and
//! `4s1 × 4s2`) whose individual periodic autocorrelations and periodic
//! cross-correlation vanish in a zone around the origin.
//!
//! ```
//! use golay_zcz::construct::{construct_1d, SignQuadruple};
//! use golay_zcz::seeds::catalog_entry;
//! use golay_zcz::verify::measure_zones;
//!
//! let seed = catalog_entry("binary-10").unwrap().pair;
//! let signs = SignQuadruple::from_ints([1, 1, 1, -1]).unwrap();
//! let pair = construct_1d(&seed, signs).unwrap();
//! let report = measure_zones(&pair);
//! assert!(report.is_gcap);
//! assert_eq!(report.z_min.cols, 11);
//! ```

pub mod array;
pub mod cli;
pub mod complex;
pub mod construct;
pub mod correlation;
pub mod error;
pub mod seeds;
pub mod verify;

pub use array::{ArrayPair, BlockGrid, Sign, Slot, UnimodularArray};
pub use complex::{ComplexValue, Gaussian};
pub use correlation::{CorrelationKind, CorrelationTable};
pub use error::{Error, Result};
pub use verify::{ZczReport, ZoneWidth};
