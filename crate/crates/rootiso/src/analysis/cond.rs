//! The local condition number `C(f, x)` and a certified bracket for its
//! maximum over `I = [-1, 1]`.
//!
//! `C(f, x) = ||f||_1 / max{|f(x)|, |f'(x)|/d}` blows up near points where
//! `f` and `f'` vanish together. Its reciprocal `x -> 1/C(f, x)` is
//! `d`-Lipschitz on the unit disk, which turns a uniform grid minimum of
//! the denominator into a certified two-sided bracket: the sampled maximum
//! is a lower bound for `max_x C(f, x)` and `1/(min_grid - d h)` an upper
//! bound. The grid is refined (step halved) until the bracket meets the
//! requested relative error, a singular sample is found, or the point
//! budget runs out.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::AnalysisError;
use crate::poly::{
    integer_gcd, is_squarefree, rational_to_f64, IntPolynomial, PolyError, Rational,
};
use crate::sturm::SturmSequence;

/// Certified bracket `lower <= C_R(f) <= upper`.
#[derive(Debug, Clone)]
pub struct ConditionEstimate {
    /// Maximum of the sampled local condition values (a true lower bound).
    pub lower: f64,
    /// Lipschitz-certified upper bound; `f64::INFINITY` when the bracket
    /// did not close (singular input or point budget exhausted).
    pub upper: f64,
    /// Final grid step.
    pub grid_step: f64,
    /// A singular real point (f = f' = 0) exists in `[-1, 1]`.
    pub infinite: bool,
    /// The bracket reached the requested relative error.
    pub converged: bool,
}

/// `C(f, x) = ||f||_1 / max{|f(x)|, |f'(x)|/d}` as an exact rational;
/// `None` at singular points where both values vanish.
pub fn local_cond_rational(f: &IntPolynomial, x: &Rational) -> Result<Option<Rational>, PolyError> {
    let norm = f.one_norm()?;
    let d = f.degree().unwrap();
    if d == 0 {
        // constant: |f(x)| = ||f||_1, condition is exactly 1
        return Ok(Some(Rational::one()));
    }
    let fx = f.evaluate(x);
    let dfx = f.derivative().evaluate(x);
    let denom = fx.abs().max(dfx.abs() / Rational::from(BigInt::from(d as i64)));
    if denom.is_zero() {
        return Ok(None);
    }
    Ok(Some(Rational::from(norm) / denom))
}

/// Local condition number as `f64`; `f64::INFINITY` at singular points.
pub fn local_cond(f: &IntPolynomial, x: &Rational) -> Result<f64, PolyError> {
    Ok(match local_cond_rational(f, x)? {
        Some(c) => rational_to_f64(&c),
        None => f64::INFINITY,
    })
}

/// Largest local condition value over a fixed dyadic grid of `2^(k+1) + 1`
/// points on `[-1, 1]` — a certified lower bound for `C_R(f)`, with
/// `f64::INFINITY` if a singular grid point is hit.
pub fn cond_lower_on_grid(f: &IntPolynomial, grid_log2: u32) -> Result<f64, PolyError> {
    let norm = f.one_norm()?;
    let d = match f.degree() {
        Some(0) | None => return Ok(1.0),
        Some(d) => d,
    };
    let df = f.derivative();
    let k = grid_log2;
    let mut min_q: Option<BigInt> = None;
    let top = BigInt::one() << (k + 1);
    let mut j = BigInt::zero();
    let dd = BigInt::from(d);
    while j <= top {
        let m = &j - (BigInt::one() << k);
        let q = grid_denominator(f, &df, &m, k, &dd);
        if q.is_zero() {
            return Ok(f64::INFINITY);
        }
        min_q = Some(match min_q {
            None => q,
            Some(old) => old.min(q),
        });
        j += 1;
    }
    // C = ||f||_1 d 2^(d k) / min_q
    let num = Rational::from(&norm * &dd * (BigInt::one() << (d as u64 * k as u64)));
    Ok(rational_to_f64(&(num / Rational::from(min_q.unwrap()))))
}

/// `max{d |f(x)|, 2^k |f'(x)|}` scaled by `d 2^(dk)` at `x = m/2^k`; zero
/// exactly at singular points.
fn grid_denominator(f: &IntPolynomial, df: &IntPolynomial, m: &BigInt, k: u32, d: &BigInt) -> BigInt {
    let a = f.scaled_eval_dyadic(m, k).abs() * d;
    let b = df.scaled_eval_dyadic(m, k).abs() << k;
    a.max(b)
}

const DEFAULT_POINT_BUDGET: usize = 1 << 22;

/// Certified bracket for `C_R(f) = max_{x in [-1,1]} C(f, x)` by uniform
/// grid refinement.
pub fn global_cond_certified(
    f: &IntPolynomial,
    target_rel_err: f64,
) -> Result<ConditionEstimate, AnalysisError> {
    global_cond_certified_with_budget(f, target_rel_err, DEFAULT_POINT_BUDGET)
}

/// [`global_cond_certified`] with an explicit bound on the number of grid
/// points (the bracket simply stops closing when the budget is exhausted).
pub fn global_cond_certified_with_budget(
    f: &IntPolynomial,
    target_rel_err: f64,
    point_budget: usize,
) -> Result<ConditionEstimate, AnalysisError> {
    let norm = f.one_norm().map_err(AnalysisError::from)?;
    let d = match f.degree() {
        Some(0) | None => {
            return Ok(ConditionEstimate {
                lower: 1.0,
                upper: 1.0,
                grid_step: 2.0,
                infinite: false,
                converged: true,
            })
        }
        Some(d) => d,
    };

    // A multiple real factor inside [-1, 1] makes C_R infinite; detect it
    // exactly up front so the refinement loop is guaranteed to terminate.
    if !is_squarefree(f) && gcd_has_root_in_closed_unit(f) {
        return Ok(ConditionEstimate {
            lower: f64::INFINITY,
            upper: f64::INFINITY,
            grid_step: 0.0,
            infinite: true,
            converged: true,
        });
    }

    let df = f.derivative();
    let dd = BigInt::from(d);

    // Running exact minimum of max{|f|, |f'|/d} over the grid, stored as
    // min over points of max{d |f|, 2^k |f'|} / (d 2^(dk)).
    let mut k: u32 = 3;
    let mut min_q: Option<Rational> = None;
    let mut points_used = 0usize;

    let scan = |k: u32, odd_only: bool, min_q: &mut Option<Rational>, used: &mut usize| -> bool {
        let top = BigInt::one() << (k + 1);
        let den = Rational::from(&dd * (BigInt::one() << (d as u64 * k as u64)));
        let mut j = BigInt::zero();
        while j <= top {
            if !odd_only || j.bit(0) {
                let m = &j - (BigInt::one() << k);
                let q_int = grid_denominator(f, &df, &m, k, &dd);
                if q_int.is_zero() {
                    return true; // singular point hit
                }
                let q = Rational::from(q_int) / den.clone();
                if min_q.as_ref().map_or(true, |old| q < *old) {
                    *min_q = Some(q);
                }
                *used += 1;
            }
            j += 1;
        }
        false
    };

    if scan(k, false, &mut min_q, &mut points_used) {
        return Ok(singular_estimate(k));
    }

    loop {
        let mq = min_q.clone().unwrap();
        let h = Rational::new(BigInt::one(), BigInt::one() << k);
        let norm_r = Rational::from(norm.clone());
        let lower_r = &norm_r / &mq;
        let slack = &mq - &norm_r * Rational::from(dd.clone()) * &h;
        let lower = rational_to_f64(&lower_r) * (1.0 - 1e-12);
        if slack.is_positive() {
            let upper_r = &norm_r / &slack;
            let upper = rational_to_f64(&upper_r) * (1.0 + 1e-12);
            // bracket closed?
            if &upper_r <= &(lower_r * Rational::from_float(1.0 + target_rel_err).unwrap()) {
                return Ok(ConditionEstimate {
                    lower,
                    upper,
                    grid_step: rational_to_f64(&h),
                    infinite: false,
                    converged: true,
                });
            }
            if points_used * 2 > point_budget {
                return Ok(ConditionEstimate {
                    lower,
                    upper,
                    grid_step: rational_to_f64(&h),
                    infinite: false,
                    converged: false,
                });
            }
        } else if points_used * 2 > point_budget {
            return Ok(ConditionEstimate {
                lower,
                upper: f64::INFINITY,
                grid_step: rational_to_f64(&h),
                infinite: false,
                converged: false,
            });
        }
        k += 1;
        if scan(k, true, &mut min_q, &mut points_used) {
            return Ok(singular_estimate(k));
        }
    }
}

fn singular_estimate(k: u32) -> ConditionEstimate {
    ConditionEstimate {
        lower: f64::INFINITY,
        upper: f64::INFINITY,
        grid_step: 2f64.powi(-(k as i32)),
        infinite: true,
        converged: true,
    }
}

/// Whether `gcd(f, f')` has a real root in the closed interval `[-1, 1]`
/// (decided exactly via Sturm counts on the gcd).
fn gcd_has_root_in_closed_unit(f: &IntPolynomial) -> bool {
    let g = integer_gcd(f, &f.derivative());
    match g.degree() {
        None | Some(0) => false,
        Some(_) => {
            if g.evaluate_int(&BigInt::one()).is_zero()
                || g.evaluate_int(&(-BigInt::one())).is_zero()
            {
                return true;
            }
            let seq = SturmSequence::new(&g).expect("nonconstant gcd");
            let a = Rational::from(BigInt::from(-1));
            let b = Rational::from(BigInt::from(1));
            seq.count_roots_open(&a, &b).expect("valid interval") > 0
        }
    }
}
