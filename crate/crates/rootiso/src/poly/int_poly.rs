//! Dense integer polynomials and the transformations used by the solvers.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{PolyError, Rational};

/// A univariate polynomial with arbitrary-precision integer coefficients,
/// stored densely: index `i` holds the coefficient of `X^i`.
///
/// Invariant: the highest stored coefficient is nonzero; the zero polynomial
/// stores no coefficients and has undefined degree ([`IntPolynomial::degree`]
/// returns `None`).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    /// Builds a polynomial from low-to-high coefficients, trimming trailing
    /// zeros.
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    pub fn from_i64_coeffs(coeffs: &[i64]) -> Self {
        IntPolynomial::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPolynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        IntPolynomial { coeffs: vec![BigInt::one()] }
    }

    pub fn constant(c: BigInt) -> Self {
        IntPolynomial::new(vec![c])
    }

    /// `c * X^n`.
    pub fn monomial(c: BigInt, n: usize) -> Self {
        if c.is_zero() {
            return IntPolynomial::zero();
        }
        let mut coeffs = vec![BigInt::zero(); n + 1];
        coeffs[n] = c;
        IntPolynomial { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Coefficient of `X^i` (zero beyond the degree).
    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn leading_coeff(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    /// Maximum bit length over `|c_i|`; 0 for the zero polynomial.
    pub fn bitsize(&self) -> u64 {
        self.coeffs.iter().map(|c| c.bits()).max().unwrap_or(0)
    }

    /// Sum of the bit lengths of all stored coefficients.
    pub fn total_coeff_bits(&self) -> u64 {
        self.coeffs.iter().map(|c| c.bits()).sum()
    }

    /// `sum_i |c_i|`. Errors on the zero polynomial, whose norm is
    /// meaningless in the condition-number formulas.
    pub fn one_norm(&self) -> Result<BigInt, PolyError> {
        if self.is_zero() {
            return Err(PolyError::ZeroPolynomial);
        }
        Ok(self.coeffs.iter().map(|c| c.abs()).sum())
    }

    /// Exact evaluation at a rational point by Horner's scheme.
    pub fn evaluate(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + Rational::from(c.clone());
        }
        acc
    }

    pub fn evaluate_int(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// `f(p/q) * q^degree` for `q > 0`: an integer sharing the sign of
    /// `f(p/q)`. The workhorse of exact sign queries.
    pub fn scaled_eval(&self, p: &BigInt, q: &BigInt) -> BigInt {
        if self.is_zero() {
            return BigInt::zero();
        }
        let mut acc = self.coeffs.last().unwrap().clone();
        let mut qpow = BigInt::one();
        for c in self.coeffs.iter().rev().skip(1) {
            acc *= p;
            qpow *= q;
            acc += c * &qpow;
        }
        acc
    }

    /// `f(m / 2^k) * 2^(degree * k)`: scaled dyadic evaluation with the
    /// denominator handled by shifts.
    pub fn scaled_eval_dyadic(&self, m: &BigInt, k: u32) -> BigInt {
        if self.is_zero() {
            return BigInt::zero();
        }
        let mut acc = self.coeffs.last().unwrap().clone();
        let mut shift = 0u64;
        for c in self.coeffs.iter().rev().skip(1) {
            acc *= m;
            shift += k as u64;
            acc += c << shift;
        }
        acc
    }

    /// Sign of `f(x)` at a rational point, as -1/0/1.
    pub fn sign_at(&self, x: &Rational) -> i32 {
        let v = self.scaled_eval(x.numer(), x.denom());
        match v.sign() {
            num_bigint::Sign::Minus => -1,
            num_bigint::Sign::NoSign => 0,
            num_bigint::Sign::Plus => 1,
        }
    }

    /// Sign of `f(t)` for `t` just above `x`: the sign of the first nonzero
    /// derivative value `f^(j)(x)`. Panics on the zero polynomial.
    pub fn sign_above(&self, x: &Rational) -> i32 {
        assert!(!self.is_zero(), "limit sign of the zero polynomial");
        let mut g = self.clone();
        loop {
            let s = g.sign_at(x);
            if s != 0 {
                return s;
            }
            g = g.derivative();
        }
    }

    /// Sign of `f(t)` for `t` just below `x`: `(-1)^j` times the sign of the
    /// first nonzero derivative value `f^(j)(x)`.
    pub fn sign_below(&self, x: &Rational) -> i32 {
        assert!(!self.is_zero(), "limit sign of the zero polynomial");
        let mut g = self.clone();
        let mut flip = 1;
        loop {
            let s = g.sign_at(x);
            if s != 0 {
                return s * flip;
            }
            g = g.derivative();
            flip = -flip;
        }
    }

    pub fn derivative(&self) -> IntPolynomial {
        if self.coeffs.len() <= 1 {
            return IntPolynomial::zero();
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * BigInt::from(i))
            .collect();
        IntPolynomial::new(coeffs)
    }

    /// `f^(k)(x) / k!` — the `k`-th coefficient of `f` re-expanded at `x`.
    pub fn kth_taylor_coefficient(&self, k: usize, x: &Rational) -> Result<Rational, PolyError> {
        let degree = self.degree().unwrap_or(0);
        if k > degree {
            return Err(PolyError::TaylorIndexOutOfRange { k, degree });
        }
        let mut g = self.clone();
        for _ in 0..k {
            g = g.derivative();
        }
        let mut fact = BigInt::one();
        for i in 2..=k {
            fact *= BigInt::from(i);
        }
        Ok(g.evaluate(x) / Rational::from(fact))
    }

    /// Reversal against the polynomial's own degree:
    /// `R(f) = X^d f(1/X)`, coefficient `k` of the output is `f_{d-k}`.
    pub fn reciprocal(&self) -> IntPolynomial {
        match self.degree() {
            None => IntPolynomial::zero(),
            Some(d) => self.reciprocal_at(d),
        }
    }

    /// Reversal against a nominal degree `d >= degree(f)`; needed when the
    /// intended degree exceeds the stored one (trailing zero coefficients of
    /// the reversed polynomial).
    pub fn reciprocal_at(&self, d: usize) -> IntPolynomial {
        assert!(self.degree().map_or(true, |deg| deg <= d));
        let coeffs = (0..=d).map(|k| self.coeff(d - k)).collect();
        IntPolynomial::new(coeffs)
    }

    /// Homothety by `2^k`: `H_k(f) = 2^{dk} f(X / 2^k)`, i.e. coefficient
    /// `i` scaled by `2^{k(d-i)}`. Output bitsize grows by at most `d*k`.
    pub fn homothety(&self, k: u32) -> IntPolynomial {
        match self.degree() {
            None => IntPolynomial::zero(),
            Some(d) => {
                let coeffs = self
                    .coeffs
                    .iter()
                    .enumerate()
                    .map(|(i, c)| c << (k as usize * (d - i)))
                    .collect();
                IntPolynomial { coeffs }
            }
        }
    }

    /// `f(2^k X)`: coefficient `i` scaled by `2^{ki}`.
    pub fn scale_arg_pow2(&self, k: u32) -> IntPolynomial {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| c << (k as usize * i))
            .collect();
        IntPolynomial { coeffs }
    }

    /// Taylor shift `T_c(f) = f(X + c)` by the classical O(d^2) scheme
    /// (repeated synthetic Horner passes over the coefficient vector).
    pub fn taylor_shift(&self, c: &BigInt) -> IntPolynomial {
        if self.coeffs.len() <= 1 || c.is_zero() {
            return self.clone();
        }
        let d = self.coeffs.len() - 1;
        let mut a = self.coeffs.clone();
        let one = c.magnitude() == &num_bigint::BigUint::from(1u32);
        let neg = c.is_negative();
        for i in 0..d {
            for j in (i..d).rev() {
                if one {
                    if neg {
                        let t = a[j + 1].clone();
                        a[j] -= t;
                    } else {
                        let t = a[j + 1].clone();
                        a[j] += t;
                    }
                } else {
                    let t = &a[j + 1] * c;
                    a[j] += t;
                }
            }
        }
        IntPolynomial::new(a)
    }

    /// Positive gcd of all coefficients; zero for the zero polynomial.
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Divides out the content and fixes the sign of the leading coefficient
    /// to be positive.
    pub fn primitive_part(&self) -> IntPolynomial {
        if self.is_zero() {
            return IntPolynomial::zero();
        }
        let mut g = self.content();
        if self.leading_coeff().unwrap().is_negative() {
            g = -g;
        }
        IntPolynomial { coeffs: self.coeffs.iter().map(|c| c / &g).collect() }
    }

    /// Divides out the largest common power of two, returning the reduced
    /// polynomial and the number of bits removed.
    pub fn remove_pow2_content(&self) -> (IntPolynomial, u64) {
        if self.is_zero() {
            return (IntPolynomial::zero(), 0);
        }
        let s = self
            .coeffs
            .iter()
            .filter(|c| !c.is_zero())
            .map(|c| c.trailing_zeros().unwrap_or(0))
            .min()
            .unwrap_or(0);
        if s == 0 {
            return (self.clone(), 0);
        }
        let coeffs = self.coeffs.iter().map(|c| c >> s).collect();
        (IntPolynomial { coeffs }, s)
    }

    pub fn neg(&self) -> IntPolynomial {
        IntPolynomial { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn add(&self, other: &IntPolynomial) -> IntPolynomial {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i) + other.coeff(i)).collect();
        IntPolynomial::new(coeffs)
    }

    pub fn sub(&self, other: &IntPolynomial) -> IntPolynomial {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i) - other.coeff(i)).collect();
        IntPolynomial::new(coeffs)
    }

    /// Schoolbook product; degrees at desk scale never justify FFT here.
    pub fn mul(&self, other: &IntPolynomial) -> IntPolynomial {
        if self.is_zero() || other.is_zero() {
            return IntPolynomial::zero();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        IntPolynomial::new(coeffs)
    }

    pub fn scale(&self, c: &BigInt) -> IntPolynomial {
        if c.is_zero() {
            return IntPolynomial::zero();
        }
        IntPolynomial { coeffs: self.coeffs.iter().map(|x| x * c).collect() }
    }

    /// Pseudo-remainder: `prem(self, g) = rem(lc(g)^(δ+1) * self, g)` where
    /// `δ = deg(self) - deg(g)`, computed entirely in integer arithmetic.
    pub fn pseudo_rem(&self, g: &IntPolynomial) -> IntPolynomial {
        let dg = g.degree().expect("pseudo_rem by zero polynomial");
        let mut r = self.clone();
        let lc_g = g.leading_coeff().unwrap().clone();
        let df = match r.degree() {
            Some(df) if df >= dg => df,
            _ => {
                // Degenerate call: scale by the full lc power for consistency.
                let delta_plus_1 = self.degree().map_or(1, |df| df.saturating_sub(dg) + 1);
                let mut scaled = r;
                for _ in 0..delta_plus_1 {
                    scaled = scaled.scale(&lc_g);
                }
                return scaled;
            }
        };
        let mut steps_left = df - dg + 1;
        while let Some(dr) = r.degree() {
            if dr < dg {
                break;
            }
            let lead = r.leading_coeff().unwrap().clone();
            // r = lc_g * r - lead * X^(dr-dg) * g
            let mut coeffs: Vec<BigInt> = r.coeffs.iter().map(|c| c * &lc_g).collect();
            let shift = dr - dg;
            for (j, gc) in g.coeffs.iter().enumerate() {
                coeffs[j + shift] -= gc * &lead;
            }
            r = IntPolynomial::new(coeffs);
            steps_left -= 1;
        }
        // Pad with remaining lc powers so the result is exactly
        // lc^(δ+1) * rem regardless of degree drops along the way.
        for _ in 0..steps_left {
            r = r.scale(&lc_g);
        }
        r
    }

    /// Exact division over the rationals, returning `None` when `other`
    /// does not divide `self` in `Q[X]`.
    pub fn div_exact_rational(&self, other: &IntPolynomial) -> Option<Vec<Rational>> {
        let dg = other.degree()?;
        if self.is_zero() {
            return Some(Vec::new());
        }
        let df = self.degree().unwrap();
        if df < dg {
            return None;
        }
        let mut rem: Vec<Rational> =
            self.coeffs.iter().map(|c| Rational::from(c.clone())).collect();
        let lc = Rational::from(other.leading_coeff().unwrap().clone());
        let mut quot = vec![Rational::zero(); df - dg + 1];
        for k in (0..=df - dg).rev() {
            let q = &rem[k + dg] / &lc;
            quot[k] = q.clone();
            for (j, gc) in other.coeffs.iter().enumerate() {
                let t = &q * Rational::from(gc.clone());
                rem[k + j] -= t;
            }
        }
        if rem.iter().all(|c| c.is_zero()) {
            Some(quot)
        } else {
            None
        }
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let a = c.abs();
            match i {
                0 => write!(f, "{a}")?,
                _ => {
                    if !a.is_one() {
                        write!(f, "{a}*")?;
                    }
                    if i == 1 {
                        write!(f, "x")?;
                    } else {
                        write!(f, "x^{i}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(coeffs: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64_coeffs(coeffs)
    }

    fn rat(n: i64, d: i64) -> Rational {
        Rational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn one_norm_examples() {
        assert_eq!(p(&[2, -3, 1]).one_norm().unwrap(), BigInt::from(6));
        assert_eq!(p(&[1]).one_norm().unwrap(), BigInt::from(1));
        assert_eq!(p(&[-1, 0, 2]).one_norm().unwrap(), BigInt::from(3));
        assert_eq!(IntPolynomial::zero().one_norm(), Err(PolyError::ZeroPolynomial));
    }

    #[test]
    fn evaluate_examples() {
        assert_eq!(p(&[1, 0, 1]).evaluate(&rat(1, 2)), rat(5, 4));
        assert_eq!(p(&[1, -6, 8]).evaluate(&rat(1, 4)), Rational::zero());
        assert_eq!(p(&[0, 0, 0, 1]).evaluate(&rat(-2, 3)), rat(-8, 27));
    }

    #[test]
    fn derivative_examples() {
        assert_eq!(p(&[-2, 0, 1]).derivative(), p(&[0, 2]));
        assert_eq!(p(&[5]).derivative(), IntPolynomial::zero());
        assert_eq!(p(&[0, 1, 0, 1]).derivative(), p(&[1, 0, 3]));
    }

    #[test]
    fn taylor_coefficient_examples() {
        let x2 = p(&[0, 0, 1]);
        assert_eq!(x2.kth_taylor_coefficient(2, &rat(0, 1)).unwrap(), rat(1, 1));
        assert_eq!(x2.kth_taylor_coefficient(1, &rat(1, 1)).unwrap(), rat(2, 1));
        let f = p(&[1, -6, 8]);
        assert_eq!(f.kth_taylor_coefficient(0, &rat(1, 4)).unwrap(), Rational::zero());
        assert!(x2.kth_taylor_coefficient(3, &rat(0, 1)).is_err());
    }

    #[test]
    fn reciprocal_examples() {
        assert_eq!(p(&[5, 3, 2]).reciprocal(), p(&[2, 3, 5]));
        // X^2 reversed at nominal degree 2 drops to the constant 1.
        assert_eq!(p(&[0, 0, 1]).reciprocal_at(2), p(&[1]));
        let f = p(&[2, 3, 5]);
        assert_eq!(f.reciprocal().reciprocal(), f);
    }

    #[test]
    fn homothety_examples() {
        assert_eq!(p(&[1, 1]).homothety(1), p(&[2, 1]));
        assert_eq!(p(&[0, 0, 1]).homothety(1), p(&[0, 0, 1]));
        assert_eq!(p(&[1]).homothety(3), p(&[1]));
        // bitsize growth bound tau + d*k
        let f = p(&[3, -7, 5]);
        assert!(f.homothety(4).bitsize() <= f.bitsize() + 2 * 4);
    }

    #[test]
    fn taylor_shift_examples() {
        assert_eq!(p(&[0, 0, 1]).taylor_shift(&BigInt::one()), p(&[1, 2, 1]));
        assert_eq!(p(&[-1, 0, 1]).taylor_shift(&BigInt::zero()), p(&[-1, 0, 1]));
        assert_eq!(p(&[0, 2]).taylor_shift(&BigInt::from(-3)), p(&[-6, 2]));
        // group law
        let f = p(&[4, -2, 0, 1]);
        let a = BigInt::from(5);
        let b = BigInt::from(-9);
        assert_eq!(
            f.taylor_shift(&b).taylor_shift(&a),
            f.taylor_shift(&(a + b))
        );
    }

    #[test]
    fn scaled_eval_matches_rational() {
        let f = p(&[3, 0, -2, 7]);
        let x = rat(-5, 3);
        let scaled = f.scaled_eval(&BigInt::from(-5), &BigInt::from(3));
        let direct = f.evaluate(&x) * rat(27, 1);
        assert_eq!(Rational::from(scaled), direct);
        assert_eq!(f.sign_at(&x), -1);
    }

    #[test]
    fn pseudo_rem_matches_rational_remainder() {
        // prem(f, g) = lc(g)^(δ+1) rem(f, g)
        let f = p(&[-1, 0, 2]); // 2x^2 - 1
        let g = p(&[0, 4]); // 4x
        let r = f.pseudo_rem(&g);
        // rem = -1, lc^2 = 16 -> prem = -16
        assert_eq!(r, p(&[-16]));
    }

    #[test]
    fn content_and_pow2() {
        let f = p(&[-12, 8, 4]);
        assert_eq!(f.content(), BigInt::from(4));
        let (g, s) = f.remove_pow2_content();
        assert_eq!(s, 2);
        assert_eq!(g, p(&[-3, 2, 1]));
        let h = p(&[-4, -8]);
        assert_eq!(h.primitive_part(), p(&[1, 2]));
    }

    #[test]
    fn div_exact() {
        let f = p(&[1, -6, 8]);
        let g = p(&[-1, 2]);
        let q = f.div_exact_rational(&g).unwrap();
        assert_eq!(q, vec![rat(-1, 1), rat(4, 1)]);
        assert!(f.div_exact_rational(&p(&[1, 1])).is_none());
    }

    #[test]
    fn display_format() {
        assert_eq!(p(&[1, -6, 8]).to_string(), "8*x^2 - 6*x + 1");
        assert_eq!(p(&[0, 1]).to_string(), "x");
        assert_eq!(IntPolynomial::zero().to_string(), "0");
    }
}
