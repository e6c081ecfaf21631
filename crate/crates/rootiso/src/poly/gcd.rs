//! Integer polynomial gcd via primitive pseudo-remainder sequences, and the
//! square-free machinery built on it.
//!
//! The primitive PRS keeps every intermediate value in `Z[X]`, trading the
//! coefficient blowup of the naive Euclidean remainders for one content
//! computation per step. A modular probe makes the common "already
//! square-free" case cheap: a degree-zero gcd modulo a single large prime
//! certifies a degree-zero gcd over the rationals.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use super::int_poly::IntPolynomial;
use super::PolyError;

/// Gcd of two integer polynomials as a primitive polynomial with positive
/// leading coefficient, computed with the primitive PRS.
pub fn integer_gcd(f: &IntPolynomial, g: &IntPolynomial) -> IntPolynomial {
    if f.is_zero() {
        return g.primitive_part();
    }
    if g.is_zero() {
        return f.primitive_part();
    }
    let (mut a, mut b) = if f.degree() >= g.degree() {
        (f.primitive_part(), g.primitive_part())
    } else {
        (g.primitive_part(), f.primitive_part())
    };
    loop {
        let r = a.pseudo_rem(&b);
        if r.is_zero() {
            return b;
        }
        a = b;
        b = r.primitive_part();
    }
}

/// Primitive part of `f / gcd(f, f')`: same distinct roots as `f`, all
/// simple, leading coefficient positive.
pub fn squarefree_part(f: &IntPolynomial) -> Result<IntPolynomial, PolyError> {
    if f.is_zero() {
        return Err(PolyError::ZeroPolynomial);
    }
    if f.degree() == Some(0) {
        return Ok(IntPolynomial::one());
    }
    let g = integer_gcd(f, &f.derivative());
    if g.degree() == Some(0) {
        return Ok(f.primitive_part());
    }
    let q = f
        .div_exact_rational(&g)
        .expect("gcd(f, f') divides f");
    // Clear denominators and normalize.
    let mut den = BigInt::from(1);
    for c in &q {
        den = num_integer::lcm(den, c.denom().clone());
    }
    let coeffs: Vec<BigInt> = q
        .iter()
        .map(|c| c.numer() * (&den / c.denom()))
        .collect();
    Ok(IntPolynomial::new(coeffs).primitive_part())
}

/// Degree of `gcd(f, f')`, i.e. 0 exactly when `f` is square-free.
pub fn gcd_with_derivative_degree(f: &IntPolynomial) -> usize {
    integer_gcd(f, &f.derivative()).degree().unwrap_or(0)
}

/// Square-freeness test with a modular fast path.
///
/// A degree-zero `gcd(f mod p, f' mod p)` for a prime `p` not dividing the
/// leading coefficient implies a degree-zero gcd over `Q`, so the expensive
/// integer PRS only runs on (rare) inputs where the modular gcd is
/// nonconstant for every probe prime.
pub fn is_squarefree(f: &IntPolynomial) -> bool {
    match f.degree() {
        None => false,
        Some(0) | Some(1) => true,
        Some(_) => {
            for &p in &PROBE_PRIMES {
                if f.leading_coeff().unwrap() % BigInt::from(p) == BigInt::zero() {
                    continue;
                }
                if modular_gcd_degree(f, p) == Some(0) {
                    return true;
                }
            }
            gcd_with_derivative_degree(f) == 0
        }
    }
}

// 2^61 - 1, 2^62 - 57, and 2^63 - 25 are prime.
const PROBE_PRIMES: [u64; 3] = [
    2305843009213693951,
    4611686018427387847,
    9223372036854775783,
];

fn modular_gcd_degree(f: &IntPolynomial, p: u64) -> Option<usize> {
    let fp = reduce_mod(f, p);
    let dfp = derivative_mod(&fp, p);
    if dfp.is_empty() {
        // f' vanishes mod p; probe is useless here.
        return None;
    }
    Some(gcd_mod(fp, dfp, p).len() - 1)
}

fn reduce_mod(f: &IntPolynomial, p: u64) -> Vec<u64> {
    let bp = BigInt::from(p);
    let mut v: Vec<u64> = f
        .coeffs()
        .iter()
        .map(|c| {
            let mut r = c % &bp;
            if r.is_negative() {
                r += &bp;
            }
            r.to_u64().unwrap()
        })
        .collect();
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

fn derivative_mod(f: &[u64], p: u64) -> Vec<u64> {
    let mut v: Vec<u64> = f
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, &c)| mulmod(c, (i as u64) % p, p))
        .collect();
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

fn gcd_mod(mut a: Vec<u64>, mut b: Vec<u64>, p: u64) -> Vec<u64> {
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
    }
    while !b.is_empty() {
        let r = rem_mod(&a, &b, p);
        a = b;
        b = r;
    }
    a
}

fn rem_mod(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut r = a.to_vec();
    let lb = *b.last().unwrap();
    let lb_inv = powmod(lb, p - 2, p);
    while r.len() >= b.len() {
        let lead = *r.last().unwrap();
        let q = mulmod(lead, lb_inv, p);
        let shift = r.len() - b.len();
        for (j, &bc) in b.iter().enumerate() {
            let t = mulmod(q, bc, p);
            let idx = j + shift;
            r[idx] = (r[idx] + p - t) % p;
        }
        while r.last() == Some(&0) {
            r.pop();
        }
    }
    r
}

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn powmod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc: u64 = 1;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mulmod(acc, base, p);
        }
        base = mulmod(base, base, p);
        exp >>= 1;
    }
    acc
}
