//! Exact polynomial arithmetic and the dyadic scaffolding under the solvers.
//!
//! The central type is [`IntPolynomial`], a dense vector of arbitrary
//! precision integer coefficients. All solver-facing transformations
//! (reciprocal, homothety by powers of two, Taylor shift) stay inside
//! integer arithmetic; subdivision endpoints are [`DyadicRational`]s,
//! and exact evaluation points are [`Rational`]s.

mod dyadic;
mod gcd;
mod int_poly;
mod var;

pub use dyadic::{log2_rational, rational_to_f64, DyadicInterval, DyadicRational};
pub use gcd::{gcd_with_derivative_degree, integer_gcd, is_squarefree, squarefree_part};
pub use int_poly::IntPolynomial;
pub use var::{sign_variations, var_on_interval};

/// Exact rational numbers; always stored reduced with a positive denominator.
pub type Rational = num_rational::BigRational;

/// Errors from polynomial-level operations.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PolyError {
    #[error("zero polynomial has no meaningful norm for condition formulas")]
    ZeroPolynomial,
    #[error("Taylor coefficient index {k} out of range for degree {degree}")]
    TaylorIndexOutOfRange { k: usize, degree: usize },
    #[error("interval is empty: lower endpoint must be strictly below upper")]
    EmptyInterval,
    #[error("operation requires a nonconstant polynomial")]
    ConstantPolynomial,
    #[error("input is not square-free: gcd(f, f') has degree {gcd_degree}; take the square-free part first")]
    NotSquareFree { gcd_degree: usize },
    #[error("endpoint {0} is a root of the polynomial; perturb it or handle the endpoint separately")]
    EndpointIsRoot(String),
}
