//! Dyadic rationals `m / 2^k` and open intervals with dyadic endpoints.
//!
//! Every endpoint produced by bisecting `(-1, 1)` is dyadic, so the solvers
//! never need general rational arithmetic on the subdivision side.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::Rational;

/// A rational of the form `mantissa / 2^exponent`.
///
/// Canonical form: the mantissa is odd, or the exponent is zero.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DyadicRational {
    mantissa: BigInt,
    exponent: u32,
}

impl DyadicRational {
    /// Builds `mantissa / 2^exponent`, reducing to canonical form.
    pub fn new(mantissa: BigInt, exponent: u32) -> Self {
        let mut d = DyadicRational { mantissa, exponent };
        d.normalize();
        d
    }

    pub fn zero() -> Self {
        DyadicRational { mantissa: BigInt::zero(), exponent: 0 }
    }

    pub fn one() -> Self {
        DyadicRational { mantissa: BigInt::one(), exponent: 0 }
    }

    pub fn from_int(n: i64) -> Self {
        DyadicRational { mantissa: BigInt::from(n), exponent: 0 }
    }

    fn normalize(&mut self) {
        if self.mantissa.is_zero() {
            self.exponent = 0;
            return;
        }
        while self.exponent > 0 && !self.mantissa.bit(0) {
            self.mantissa >>= 1;
            self.exponent -= 1;
        }
    }

    pub fn mantissa(&self) -> &BigInt {
        &self.mantissa
    }

    pub fn exponent(&self) -> u32 {
        self.exponent
    }

    pub fn is_zero(&self) -> bool {
        self.mantissa.is_zero()
    }

    pub fn to_rational(&self) -> Rational {
        Rational::new(self.mantissa.clone(), BigInt::one() << self.exponent)
    }

    pub fn to_f64(&self) -> f64 {
        let r = self.to_rational();
        rational_to_f64(&r)
    }

    pub fn neg(&self) -> Self {
        DyadicRational { mantissa: -&self.mantissa, exponent: self.exponent }
    }

    /// Exact midpoint `(a + b) / 2`.
    pub fn midpoint(a: &Self, b: &Self) -> Self {
        let e = a.exponent.max(b.exponent);
        let ma = &a.mantissa << (e - a.exponent);
        let mb = &b.mantissa << (e - b.exponent);
        DyadicRational::new(ma + mb, e + 1)
    }

    /// Exact difference `self - other`.
    pub fn sub(&self, other: &Self) -> Self {
        let e = self.exponent.max(other.exponent);
        let ma = &self.mantissa << (e - self.exponent);
        let mb = &other.mantissa << (e - other.exponent);
        DyadicRational::new(ma - mb, e)
    }
}

impl PartialOrd for DyadicRational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for DyadicRational {
    fn cmp(&self, other: &Self) -> Ordering {
        let e = self.exponent.max(other.exponent);
        let ma = &self.mantissa << (e - self.exponent);
        let mb = &other.mantissa << (e - other.exponent);
        ma.cmp(&mb)
    }
}

impl fmt::Display for DyadicRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exponent == 0 {
            write!(f, "{}", self.mantissa)
        } else {
            write!(f, "{}/{}", self.mantissa, BigInt::one() << self.exponent)
        }
    }
}

/// An open interval `(low, high)` with dyadic endpoints, `low < high`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DyadicInterval {
    pub low: DyadicRational,
    pub high: DyadicRational,
}

impl DyadicInterval {
    /// Builds `(low, high)`. Panics if `low >= high`; use
    /// [`DyadicInterval::try_new`] for fallible construction.
    pub fn new(low: DyadicRational, high: DyadicRational) -> Self {
        assert!(low < high, "interval endpoints out of order");
        DyadicInterval { low, high }
    }

    pub fn try_new(low: DyadicRational, high: DyadicRational) -> Option<Self> {
        (low < high).then_some(DyadicInterval { low, high })
    }

    /// The initial interval `(-1, 1)` of the subdivision solvers.
    pub fn unit() -> Self {
        DyadicInterval::new(DyadicRational::from_int(-1), DyadicRational::from_int(1))
    }

    pub fn midpoint(&self) -> DyadicRational {
        DyadicRational::midpoint(&self.low, &self.high)
    }

    pub fn width(&self) -> DyadicRational {
        self.high.sub(&self.low)
    }

    /// Splits into the open halves `(low, mid)` and `(mid, high)`.
    pub fn bisect(&self) -> (DyadicInterval, DyadicInterval) {
        let m = self.midpoint();
        (
            DyadicInterval::new(self.low.clone(), m.clone()),
            DyadicInterval::new(m, self.high.clone()),
        )
    }

    pub fn contains(&self, x: &Rational) -> bool {
        let lo = self.low.to_rational();
        let hi = self.high.to_rational();
        lo < *x && *x < hi
    }

    pub fn overlaps(&self, other: &DyadicInterval) -> bool {
        self.low < other.high && other.low < self.high
    }
}

impl fmt::Display for DyadicInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.low, self.high)
    }
}

/// Rounds an exact rational to the nearest `f64`, saturating on overflow.
pub fn rational_to_f64(r: &Rational) -> f64 {
    if r.numer().is_zero() {
        return 0.0;
    }
    // Scale so the quotient fits comfortably in f64, then correct by powers
    // of two; exact for anything with |log2| < ~900.
    let nbits = r.numer().bits() as i64;
    let dbits = r.denom().bits() as i64;
    let shift = nbits - dbits;
    let (num, den) = if shift > 0 {
        (r.numer().clone(), r.denom().clone() << shift as u64)
    } else {
        (r.numer().clone() << (-shift) as u64, r.denom().clone())
    };
    // now num/den in [1/2, 2): extract 80 bits of quotient
    let q = (num << 80u32) / den;
    let q_f64 = big_to_f64(&q);
    let e = shift - 80;
    q_f64 * 2f64.powi(e.clamp(-2000, 2000) as i32)
}

fn big_to_f64(n: &BigInt) -> f64 {
    let bits = n.bits();
    if bits <= 52 {
        let (sign, digits) = n.to_u64_digits();
        let v = digits.first().copied().unwrap_or(0) as f64;
        if sign == num_bigint::Sign::Minus {
            -v
        } else {
            v
        }
    } else {
        let excess = bits - 52;
        let top = n.abs() >> excess;
        let (_, digits) = top.to_u64_digits();
        let v = digits.first().copied().unwrap_or(0) as f64 * 2f64.powi(excess.min(2000) as i32);
        if n.is_negative() {
            -v
        } else {
            v
        }
    }
}

/// `log2` of a positive rational, accurate to f64 precision even when the
/// value itself overflows f64.
pub fn log2_rational(r: &Rational) -> f64 {
    assert!(r.numer().is_positive(), "log2 of a non-positive rational");
    log2_big(r.numer()) - log2_big(r.denom())
}

fn log2_big(n: &BigInt) -> f64 {
    let bits = n.bits();
    if bits <= 52 {
        return big_to_f64(n).log2();
    }
    let excess = bits - 52;
    let top = n.abs() >> excess;
    big_to_f64(&top).log2() + excess as f64
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_form() {
        let d = DyadicRational::new(BigInt::from(4), 3); // 4/8 = 1/2
        assert_eq!(d.mantissa(), &BigInt::from(1));
        assert_eq!(d.exponent(), 1);
        assert_eq!(d.to_string(), "1/2");

        let z = DyadicRational::new(BigInt::zero(), 7);
        assert!(z.is_zero());
        assert_eq!(z.exponent(), 0);
    }

    #[test]
    fn midpoint_and_order() {
        let a = DyadicRational::from_int(-1);
        let b = DyadicRational::from_int(1);
        let m = DyadicRational::midpoint(&a, &b);
        assert!(m.is_zero());
        let m2 = DyadicRational::midpoint(&m, &b); // 1/2
        assert_eq!(m2, DyadicRational::new(BigInt::from(1), 1));
        assert!(a < m && m < m2 && m2 < b);
    }

    #[test]
    fn interval_bisection() {
        let j = DyadicInterval::unit();
        let (l, r) = j.bisect();
        assert_eq!(l.to_string(), "(-1, 0)");
        assert_eq!(r.to_string(), "(0, 1)");
        assert_eq!(j.width(), DyadicRational::from_int(2));
        assert!(l.overlaps(&j) && !l.overlaps(&r));
    }

    #[test]
    fn f64_conversion() {
        let d = DyadicRational::new(BigInt::from(3), 2);
        assert_eq!(d.to_f64(), 0.75);
        let r = Rational::new(BigInt::from(-5), BigInt::from(4));
        assert_eq!(rational_to_f64(&r), -1.25);
    }

    #[test]
    fn log2_of_large_values() {
        let r = Rational::new(BigInt::one() << 200u32, BigInt::from(1));
        assert!((log2_rational(&r) - 200.0).abs() < 1e-9);
        let r = Rational::new(BigInt::from(3), BigInt::one() << 100u32);
        assert!((log2_rational(&r) - (3f64.log2() - 100.0)).abs() < 1e-9);
    }
}
