//! charkit: an exact-arithmetic q-series engine for formal characters of
//! weight modules over affine sl2 and the N=2 superconformal algebra.
//!
//! The crate is organized around a small number of layers:
//!
//! * [`series`] — truncated multivariate Laurent series with exact
//!   rational coefficients and explicit validity rectangles;
//! * [`charlib`] — constructors for the characters of Verma-type,
//!   relaxed, Fock and lattice modules, plus the theta and eta series;
//! * [`flow`] — spectral-flow and coset transforms on characters, and
//!   the three-variable branching verifier;
//! * [`admissible`] — admissible-level data, Verma-type resolutions with
//!   q-order cutoffs, irreducible characters as alternating sums, and the
//!   closed double-sum character formula with its cross-checks;
//! * [`numeric`] — demonstrative floating evaluation of truncated
//!   characters at complex points.
//!
//! Everything upstream of [`numeric`] is exact: no floating-point value
//! appears anywhere in the series layers.

pub mod admissible;
pub mod charlib;
pub mod error;
pub mod flow;
pub mod numeric;
pub mod rat;
pub mod series;
pub mod suites;

pub use error::Error;
pub use rat::{rat, Rat};
pub use series::{Comparison, MSeries, Monomial, Rect, Window};
