//! Sign-variation counting and the interval variation bound behind the
//! Descartes solver.
//!
//! `var_on_interval(f, (a, b))` counts the sign variations of the Möbius
//! transform of `f` that sends `(0, ∞)` onto `(a, b)`; the count bounds the
//! number of roots of `f` in the open interval and is exact when it is 0
//! or 1.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::dyadic::DyadicInterval;
use super::int_poly::IntPolynomial;
use super::PolyError;

/// Number of adjacent sign changes in a coefficient list, zeros skipped.
pub fn sign_variations(coeffs: &[BigInt]) -> usize {
    let mut count = 0;
    let mut last: Option<bool> = None;
    for c in coeffs {
        if c.is_zero() {
            continue;
        }
        let neg = c.is_negative();
        if let Some(prev) = last {
            if prev != neg {
                count += 1;
            }
        }
        last = Some(neg);
    }
    count
}

/// Sign variations of `(X + 1)^d f((aX + b)/(X + 1))` for `J = (a, b)`,
/// computed in integer arithmetic.
///
/// Composition order (all scalings positive, so the sign sequence matches
/// the definition up to a positive factor): shift the lower endpoint to the
/// origin, rescale the width to one, reverse, then Taylor-shift by one.
pub fn var_on_interval(f: &IntPolynomial, interval: &DyadicInterval) -> Result<usize, PolyError> {
    if interval.low >= interval.high {
        return Err(PolyError::EmptyInterval);
    }
    let d = match f.degree() {
        None | Some(0) => return Ok(0),
        Some(d) => d,
    };
    let g = interval_polynomial(f, interval);
    let m = g.reciprocal_at(d).taylor_shift(&BigInt::from(1));
    Ok(sign_variations(m.coeffs()))
}

/// A positive multiple of `f(a + w X)` with integer coefficients, where
/// `a = low` and `w = high - low`: roots of `f` in `(a, b)` correspond to
/// roots of the result in `(0, 1)`.
pub(crate) fn interval_polynomial(f: &IntPolynomial, interval: &DyadicInterval) -> IntPolynomial {
    let ka = interval.low.exponent();
    let ma = interval.low.mantissa().clone();
    // 2^(d ka) f((X + ma)/2^ka) : shifts a to the origin.
    let shifted = f.homothety(ka).taylor_shift(&ma);
    // Substitute X -> (2^ka w) X, written as u / 2^v in lowest terms.
    let w = interval.width();
    let (u, v) = {
        let kw = w.exponent();
        if kw >= ka {
            (w.mantissa().clone(), kw - ka)
        } else {
            (w.mantissa() << (ka - kw), 0)
        }
    };
    scale_arg_rational_cleared(&shifted, &u, v).remove_pow2_content().0
}

/// `2^(v d) p((u / 2^v) X)`: coefficient `i` scaled by `u^i 2^(v (d - i))`.
fn scale_arg_rational_cleared(p: &IntPolynomial, u: &BigInt, v: u32) -> IntPolynomial {
    let d = match p.degree() {
        None => return IntPolynomial::zero(),
        Some(d) => d,
    };
    let mut upow = BigInt::from(1);
    let coeffs = (0..=d)
        .map(|i| {
            let c = (p.coeff(i) * &upow) << (v as usize * (d - i));
            upow *= u;
            c
        })
        .collect();
    IntPolynomial::new(coeffs)
}
