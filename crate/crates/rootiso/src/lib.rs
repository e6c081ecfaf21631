//! Exact real-root isolation for univariate integer polynomials.
//!
//! The crate provides two classical subdivision solvers over arbitrary
//! precision integer arithmetic, together with the analysis toolkit needed to
//! study their behaviour on random inputs:
//!
//! - [`poly`] — dense integer polynomials and the exact transformations
//!   (Taylor shift, homothety, reciprocal) that subdivision solvers are
//!   built from, plus sign-variation counting and square-free parts.
//! - [`descartes`] — the Descartes subdivision solver on `(-1, 1)`,
//!   instrumented to expose its full subdivision tree.
//! - [`sturm`] — Sturm sequences with integer-only pseudo-remainders,
//!   exact root counting, and the matching subdivision solver.
//! - [`analysis`] — condition numbers, root separation, a certified
//!   Aberth-style numeric root oracle, the hyperbolic disk family with its
//!   root-count bound, and Obreshkoff disc geometry.
//! - [`randmodels`] — deterministic generators for five random
//!   bit-polynomial models with exact model parameters (bitsize, weight,
//!   uniformity).
//! - [`io`] — the plain-text polynomial format and JSON model configs.
//!
//! Everything the solvers report is exact: isolating intervals have dyadic
//! endpoints, rational roots found along the way are returned as exact
//! rationals, and sign-variation counts are computed in integer arithmetic.
//!
//! ```
//! use rootiso::poly::IntPolynomial;
//! use rootiso::descartes::isolate_in_unit_interval;
//!
//! // 8x^2 - 6x + 1 = (2x - 1)(4x - 1) has roots 1/4 and 1/2.
//! let f = IntPolynomial::from_i64_coeffs(&[1, -6, 8]);
//! let (result, stats) = isolate_in_unit_interval(&f).unwrap();
//! assert_eq!(result.root_count(), 2);
//! assert!(stats.node_count >= 3);
//! ```

pub mod analysis;
pub mod descartes;
pub mod io;
pub mod poly;
pub mod randmodels;
pub mod sturm;

pub use poly::{DyadicInterval, DyadicRational, IntPolynomial, PolyError, Rational};
