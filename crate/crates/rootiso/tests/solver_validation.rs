//! Cross-validation of the two exact solvers against the certified
//! numeric oracle on random ensembles, plus the tree-depth bound.

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;

use rootiso::analysis::oracle::{certified_real_count_in_unit, numeric_roots, NumericRootSet};
use rootiso::analysis::{global_cond_certified, separation};
use rootiso::descartes::{isolate_in_unit_interval, IsolationResult};
use rootiso::poly::{is_squarefree, squarefree_part, IntPolynomial, Rational};
use rootiso::randmodels::{sample_nth, RandomModelConfig};
use rootiso::sturm::{isolate_sturm, SturmSequence};

fn random_poly(rng: &mut ChaCha12Rng, max_d: usize, tau: u32, seed_base: u64) -> IntPolynomial {
    let d = rng.gen_range(2..=max_d);
    let cfg = RandomModelConfig::uniform(d, tau, seed_base ^ (d as u64));
    let idx = rng.gen::<u32>() as u64;
    sample_nth(&cfg, idx).unwrap()
}

/// Exact count of certified real oracle roots in the open rational
/// interval `(a, b)`; `None` when a disk straddles an endpoint.
fn oracle_count_in(set: &NumericRootSet, a: &Rational, b: &Rational) -> Option<usize> {
    let mut count = 0;
    for i in 0..set.len() {
        if !set.is_real(i) {
            continue;
        }
        let re = set.re_rational(i);
        let u = set.radius_rational(i);
        let lo = &re - &u;
        let hi = &re + &u;
        if &lo > a && &hi < b {
            count += 1;
        } else if &hi <= a || &lo >= b {
            // certainly outside the open interval
        } else {
            return None;
        }
    }
    Some(count)
}

/// Each certified real oracle root in `(-1,1)` must land in exactly one
/// isolating interval or match one exact root.
fn matches_one_to_one(set: &NumericRootSet, res: &IsolationResult) -> bool {
    let mut used_intervals = vec![0usize; res.intervals.len()];
    let mut used_exact = vec![0usize; res.exact_roots.len()];
    for i in 0..set.len() {
        if !set.is_real(i) {
            continue;
        }
        let re = set.re_rational(i);
        let u = set.radius_rational(i);
        let lo = &re - &u;
        let hi = &re + &u;
        let one = Rational::from(BigInt::from(1));
        if hi <= -&one || lo >= one {
            continue;
        }
        let mut hits = 0;
        for (k, j) in res.intervals.iter().enumerate() {
            if lo > j.low.to_rational() && hi < j.high.to_rational() {
                used_intervals[k] += 1;
                hits += 1;
            }
        }
        for (k, r) in res.exact_roots.iter().enumerate() {
            if &lo <= r && r <= &hi {
                used_exact[k] += 1;
                hits += 1;
            }
        }
        if hits != 1 {
            return false;
        }
    }
    used_intervals.iter().all(|&c| c == 1) && used_exact.iter().all(|&c| c == 1)
}

#[test]
fn solvers_and_oracle_agree_on_random_ensemble() {
    let mut rng = ChaCha12Rng::seed_from_u64(2024);
    let mut nontrivial = 0;
    for trial in 0..120 {
        let f = random_poly(&mut rng, 24, 12, 10_000 + trial);
        if f.degree().map_or(true, |d| d < 2) {
            continue;
        }
        let sf = if is_squarefree(&f) { f.clone() } else { squarefree_part(&f).unwrap() };

        let (desc, _) = isolate_in_unit_interval(&sf).unwrap();
        let (sturm, _) = isolate_sturm(&f).unwrap();
        let (count, set) = certified_real_count_in_unit(&sf, 128).unwrap();

        assert_eq!(desc.root_count(), count, "descartes vs oracle on {f}");
        assert_eq!(sturm.root_count(), count, "sturm vs oracle on {f}");
        assert!(matches_one_to_one(&set, &desc), "descartes matching on {f}");
        assert!(matches_one_to_one(&set, &sturm), "sturm matching on {f}");
        if count > 0 {
            nontrivial += 1;
        }
    }
    assert!(nontrivial >= 20, "ensemble too degenerate: {nontrivial}");
}

#[test]
fn sturm_counts_match_oracle_on_random_intervals() {
    let mut rng = ChaCha12Rng::seed_from_u64(77);
    let mut checked = 0;
    'outer: for trial in 0..40 {
        let f = random_poly(&mut rng, 16, 10, 20_000 + trial);
        if f.degree().map_or(true, |d| d < 2) || !is_squarefree(&f) {
            continue;
        }
        let seq = SturmSequence::new(&f).unwrap();
        let set = numeric_roots(&f, 128).unwrap();
        for _ in 0..3 {
            let an = rng.gen_range(-40i64..=38);
            let ad = rng.gen_range(1i64..=12);
            let w = rng.gen_range(1i64..=30);
            let a = Rational::new(BigInt::from(an), BigInt::from(ad * 8));
            let b = &a + Rational::new(BigInt::from(w), BigInt::from(8));
            if f.sign_at(&a) == 0 || f.sign_at(&b) == 0 {
                continue;
            }
            let exact = seq.count_roots_in(&a, &b).unwrap();
            match oracle_count_in(&set, &a, &b) {
                Some(numeric) => assert_eq!(exact, numeric, "interval ({a}, {b}) of {f}"),
                None => continue 'outer,
            }
            checked += 1;
        }
    }
    assert!(checked >= 60, "too few comparisons ran: {checked}");
}

#[test]
fn subdivision_depth_respects_separation_bound() {
    // With ε = 1/(e d C_R), the tree depth is at most
    // log2(4 / min{Δ_ε, ε}) + O(1); checked with slack factor 2 and the
    // pessimistic (lower) end of the separation bracket.
    let mut rng = ChaCha12Rng::seed_from_u64(31337);
    let mut checked = 0;
    for trial in 0..50 {
        let f = random_poly(&mut rng, 16, 10, 30_000 + trial);
        if f.degree().map_or(true, |d| d < 2) || !is_squarefree(&f) {
            continue;
        }
        let cond = global_cond_certified(&f, 4.0).unwrap();
        if !cond.converged || cond.infinite || !cond.upper.is_finite() {
            continue;
        }
        let d = f.degree().unwrap() as f64;
        let eps = 1.0 / (std::f64::consts::E * d * cond.upper);
        let delta = separation(&f, eps).unwrap();
        let floor = delta.lower.min(eps);
        if !floor.is_finite() || floor <= 0.0 {
            continue;
        }
        let (_, stats) = isolate_in_unit_interval(&f).unwrap();
        let bound = 2.0 * ((4.0 / floor).log2() + 2.0);
        assert!(
            (stats.max_depth as f64) <= bound,
            "depth {} > bound {bound:.2} for {f}",
            stats.max_depth
        );
        checked += 1;
    }
    assert!(checked >= 25, "too few instances checked: {checked}");
}

#[test]
fn planted_degenerate_instances() {
    // x(x-1)^2: sturm isolates the distinct root 0; descartes needs the
    // square-free part first and then agrees.
    let f = IntPolynomial::from_i64_coeffs(&[0, 1, -2, 1]);
    let (sturm, _) = isolate_sturm(&f).unwrap();
    assert_eq!(sturm.root_count(), 1);
    let sf = squarefree_part(&f).unwrap();
    let (desc, _) = isolate_in_unit_interval(&sf).unwrap();
    assert_eq!(desc.root_count(), 1);
    let zero = Rational::from(BigInt::from(0));
    assert!(sturm.covers(&zero) && desc.covers(&zero));
}
