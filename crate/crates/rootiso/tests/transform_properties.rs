//! Randomized algebra checks for the polynomial transforms, with an
//! independent brute-force oracle for the interval variation count.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;

use rootiso::poly::{
    sign_variations, var_on_interval, DyadicInterval, DyadicRational, IntPolynomial, Rational,
};

// -- brute-force oracle ------------------------------------------------------
// var(f, (a,b)) from the definition: expand sum_i f_i (aX+b)^i (X+1)^(d-i)
// in exact rational arithmetic (no Taylor shift / homothety / reciprocal).

fn poly_mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            let t = x * y;
            out[i + j] += t;
        }
    }
    out
}

fn poly_pow(base: &[Rational], n: usize) -> Vec<Rational> {
    let mut acc = vec![Rational::one()];
    for _ in 0..n {
        acc = poly_mul(&acc, base);
    }
    acc
}

fn var_brute(f: &IntPolynomial, low: &Rational, high: &Rational) -> usize {
    let d = match f.degree() {
        None | Some(0) => return 0,
        Some(d) => d,
    };
    // x -> (a x + b) / (x + 1) maps (0, inf) onto (a, b)
    let lin_num = vec![high.clone(), low.clone()]; // b + a X
    let lin_den = vec![Rational::one(), Rational::one()]; // 1 + X
    let mut total = vec![Rational::zero()];
    for (i, c) in f.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let term = poly_mul(&poly_pow(&lin_num, i), &poly_pow(&lin_den, d - i));
        let scaled: Vec<Rational> =
            term.iter().map(|t| t * Rational::from(c.clone())).collect();
        let n = total.len().max(scaled.len());
        let mut merged = vec![Rational::zero(); n];
        for (k, slot) in merged.iter_mut().enumerate() {
            if k < total.len() {
                *slot += &total[k];
            }
            if k < scaled.len() {
                *slot += &scaled[k];
            }
        }
        total = merged;
    }
    let mut count = 0;
    let mut last = 0i32;
    for c in &total {
        let s = if c.is_zero() {
            0
        } else if c.numer().is_negative() {
            -1
        } else {
            1
        };
        if s == 0 {
            continue;
        }
        if last != 0 && s != last {
            count += 1;
        }
        last = s;
    }
    count
}

fn dyadic(m: i64, k: u32) -> DyadicRational {
    DyadicRational::new(BigInt::from(m), k)
}

// -- proptest strategies -----------------------------------------------------

fn small_poly() -> impl Strategy<Value = IntPolynomial> {
    prop::collection::vec(-50i64..=50, 1..=9)
        .prop_map(|c| IntPolynomial::from_i64_coeffs(&c))
        .prop_filter("nonzero", |f| !f.is_zero())
}

fn small_interval() -> impl Strategy<Value = DyadicInterval> {
    (-16i64..=14, 0u32..=3).prop_flat_map(|(m, k)| {
        (1i64..=8).prop_map(move |w| {
            let low = dyadic(m, k + 2);
            let high = dyadic(m + w, k + 2);
            DyadicInterval::new(low, high)
        })
    })
}

proptest! {
    #[test]
    fn reciprocal_is_involution(f in small_poly()) {
        prop_assume!(!f.coeff(0).is_zero());
        prop_assert_eq!(f.reciprocal().reciprocal(), f);
    }

    #[test]
    fn shift_group_law(f in small_poly(), a in -20i64..=20, b in -20i64..=20) {
        let lhs = f.taylor_shift(&BigInt::from(b)).taylor_shift(&BigInt::from(a));
        let rhs = f.taylor_shift(&BigInt::from(a + b));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn homothety_composition(f in small_poly(), j in 0u32..=4, k in 0u32..=4) {
        // H_j(H_k(f)) equals H_(j+k)(f) up to the power-of-two content the
        // formula predicts: 2^(k * j * ...) cancels after normalization
        let lhs = f.homothety(k).homothety(j).remove_pow2_content().0;
        let rhs = f.homothety(j + k).remove_pow2_content().0;
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn taylor_coefficient_bound(f in small_poly(), k in 0usize..=8, xi in 0usize..=4) {
        // |f^(k)(x)/k!| <= C(d,k) ||f||_1 on [-1, 1]
        let d = f.degree().unwrap();
        prop_assume!(k <= d);
        let points = [
            Rational::from(BigInt::from(-1)),
            Rational::new(BigInt::from(-1), BigInt::from(2)),
            Rational::zero(),
            Rational::new(BigInt::from(1), BigInt::from(2)),
            Rational::from(BigInt::from(1)),
        ];
        let x = &points[xi];
        let coeff = f.kth_taylor_coefficient(k, x).unwrap();
        let binom = (0..k).fold(BigInt::one(), |acc, i| {
            acc * BigInt::from((d - i) as i64) / BigInt::from((i + 1) as i64)
        });
        let bound = Rational::from(binom * f.one_norm().unwrap());
        prop_assert!(coeff.abs() <= bound);
    }

    #[test]
    fn var_matches_brute_force(f in small_poly(), j in small_interval()) {
        let fast = var_on_interval(&f, &j).unwrap();
        let brute = var_brute(&f, &j.low.to_rational(), &j.high.to_rational());
        prop_assert_eq!(fast, brute);
    }

    #[test]
    fn var_subadditive_under_bisection(f in small_poly(), j in small_interval()) {
        let (l, r) = j.bisect();
        let vl = var_on_interval(&f, &l).unwrap();
        let vr = var_on_interval(&f, &r).unwrap();
        let v = var_on_interval(&f, &j).unwrap();
        prop_assert!(vl + vr <= v);
    }
}

#[test]
fn var_bounds_root_count_with_matching_parity() {
    // var(f, J) >= #roots in J and has the same parity, checked against
    // factored polynomials with known rational roots.
    let mut rng = ChaCha12Rng::seed_from_u64(99);
    for _ in 0..200 {
        let n_roots = rng.gen_range(0..4usize);
        let mut f = IntPolynomial::from_i64_coeffs(&[rng.gen_range(1..5i64)]);
        let mut roots = Vec::new();
        for _ in 0..n_roots {
            let num = rng.gen_range(-12i64..=12);
            let den = rng.gen_range(1i64..=8);
            f = f.mul(&IntPolynomial::from_i64_coeffs(&[-num, den]));
            roots.push(Rational::new(BigInt::from(num), BigInt::from(den)));
        }
        // one extra irreducible quadratic factor to add complex roots
        let b = rng.gen_range(-4i64..=4);
        let c = rng.gen_range(1i64..=9) + b * b / 4 + 1;
        f = f.mul(&IntPolynomial::from_i64_coeffs(&[c, b, 1]));
        if !rootiso::poly::is_squarefree(&f) {
            continue;
        }

        let j = DyadicInterval::new(dyadic(-3, 1), dyadic(5, 2));
        let inside = roots
            .iter()
            .filter(|r| j.contains(r))
            .count();
        let on_boundary = roots
            .iter()
            .any(|r| *r == j.low.to_rational() || *r == j.high.to_rational());
        if on_boundary {
            continue;
        }
        let v = var_on_interval(&f, &j).unwrap();
        assert!(v >= inside, "var {v} < roots {inside} for {f}");
        assert_eq!(v % 2, inside % 2, "parity mismatch for {f}");
    }
}

#[test]
fn sign_variation_rule_of_signs() {
    // r <= var and r ≡ var (mod 2) on the raw coefficient list for
    // polynomials with known positive roots
    let f = IntPolynomial::from_i64_coeffs(&[2, -3, 1]); // roots 1, 2
    assert_eq!(sign_variations(f.coeffs()), 2);
    let g = IntPolynomial::from_i64_coeffs(&[-6, 11, -6, 1]); // roots 1, 2, 3
    assert_eq!(sign_variations(g.coeffs()), 3);
}
