//! ε-real separation and the separation/condition inequality.
//!
//! The ε-real separation is the minimum pairwise distance among the roots
//! lying within distance ε of `I = [-1, 1]`, zero if a multiple root lies
//! in that region, and (by convention — the minimum over fewer than two
//! roots is undefined) `+∞` when the region holds at most one root.
//!
//! Everything is computed from certified root disks, so the result is a
//! two-sided bracket: membership and distances are pushed to the
//! pessimistic ends of the error radii.


use super::cond::{global_cond_certified, ConditionEstimate};
use super::oracle::{numeric_roots, NumericRootSet};
use super::AnalysisError;
use crate::poly::{integer_gcd, squarefree_part, IntPolynomial};

/// Two-sided bracket for the ε-real separation.
#[derive(Debug, Clone, Copy)]
pub struct SeparationEstimate {
    pub lower: f64,
    pub upper: f64,
    /// Certified and potential numbers of roots in the ε-region.
    pub roots_definite: usize,
    pub roots_possible: usize,
}

impl SeparationEstimate {
    fn infinite(definite: usize, possible: usize) -> Self {
        SeparationEstimate {
            lower: f64::INFINITY,
            upper: f64::INFINITY,
            roots_definite: definite,
            roots_possible: possible,
        }
    }
}

/// distance from `z` to the segment `[-1, 1]`
fn dist_to_unit_segment(re: f64, im: f64) -> f64 {
    let dx = (re.abs() - 1.0).max(0.0);
    (dx * dx + im * im).sqrt()
}

/// Certified membership of root `i` in the ε-region, as
/// `(definitely_in, possibly_in)`. Roots certified real use the exact
/// knowledge that their imaginary part is zero.
fn region_membership(set: &NumericRootSet, i: usize, epsilon: f64) -> (bool, bool) {
    let z = set.approx(i);
    let u = set.radius_f64(i) + 1e-12 * (1.0 + z.norm());
    if set.is_real(i) {
        // true root is real in [re - u, re + u]
        let hi = (z.re.abs() + u - 1.0).max(0.0);
        let lo = ((z.re.abs() - u).max(0.0) - 1.0).max(0.0);
        (hi <= epsilon, lo <= epsilon)
    } else {
        let dist = dist_to_unit_segment(z.re, z.im);
        (dist + u <= epsilon, dist - u <= epsilon)
    }
}

/// Bracket for the ε-real separation of `f`, from certified roots.
pub fn separation(f: &IntPolynomial, epsilon: f64) -> Result<SeparationEstimate, AnalysisError> {
    let sf = squarefree_part(f)?;
    let had_multiple = sf.degree() != f.degree();

    if sf.degree().map_or(true, |d| d == 0) {
        // constants (and powers of constants): no roots at all
        return Ok(SeparationEstimate::infinite(0, 0));
    }

    let set = numeric_roots(&sf, 128)?;
    let mut est = separation_from_set(&set, epsilon);

    if had_multiple {
        // multiple roots of f are the roots of gcd(f, f'); a multiple root
        // inside the region forces separation zero
        let g = integer_gcd(f, &f.derivative());
        let gsf = squarefree_part(&g)?;
        if gsf.degree().map_or(false, |d| d >= 1) {
            let gset = numeric_roots(&gsf, 128)?;
            let (def, poss) = region_membership_counts(&gset, epsilon);
            if def > 0 {
                return Ok(SeparationEstimate {
                    lower: 0.0,
                    upper: 0.0,
                    roots_definite: est.roots_definite,
                    roots_possible: est.roots_possible,
                });
            }
            if poss > 0 {
                est.lower = 0.0;
            }
        }
    }
    Ok(est)
}

fn region_membership_counts(set: &NumericRootSet, epsilon: f64) -> (usize, usize) {
    let mut definite = 0;
    let mut possible = 0;
    for i in 0..set.len() {
        let (def, poss) = region_membership(set, i, epsilon);
        definite += def as usize;
        possible += poss as usize;
    }
    (definite, possible)
}

/// Separation bracket from an already-certified root set (of a square-free
/// polynomial).
pub fn separation_from_set(set: &NumericRootSet, epsilon: f64) -> SeparationEstimate {
    let mut definite = Vec::new();
    let mut possible = Vec::new();
    for i in 0..set.len() {
        let (def, poss) = region_membership(set, i, epsilon);
        if def {
            definite.push(i);
        }
        if poss {
            possible.push(i);
        }
    }

    if possible.len() < 2 {
        return SeparationEstimate::infinite(definite.len(), possible.len());
    }

    let pair_min = |idx: &[usize], widen: f64| -> f64 {
        let mut best = f64::INFINITY;
        for (a, &i) in idx.iter().enumerate() {
            for &j in &idx[a + 1..] {
                let zi = set.approx(i);
                let zj = set.approx(j);
                let gap = (zi - zj).norm();
                let u = set.radius_f64(i) + set.radius_f64(j);
                let slop = 1e-12 * (1.0 + zi.norm() + zj.norm());
                best = best.min((gap + widen * (u + slop)).max(0.0));
            }
        }
        best
    };

    let lower = pair_min(&possible, -1.0);
    let upper = if definite.len() >= 2 { pair_min(&definite, 1.0) } else { f64::INFINITY };
    SeparationEstimate {
        lower,
        upper,
        roots_definite: definite.len(),
        roots_possible: possible.len(),
    }
}

/// Outcome of the separation/condition inequality check.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Holds,
    Violated,
    Inconclusive,
}

/// Report for `Δ_ε >= 1/(12 d C_R)` with `ε = 1/(2 e d upper(C_R))`.
#[derive(Debug, Clone)]
pub struct SeparationReport {
    pub verdict: Verdict,
    pub epsilon: f64,
    pub threshold_low: f64,
    pub threshold_high: f64,
    pub cond: ConditionEstimate,
    pub delta: Option<SeparationEstimate>,
    /// `Δ_lower - max threshold`; positive exactly when the verdict holds.
    pub margin: f64,
}

/// Checks the separation/condition inequality on `f` with every quantity
/// pushed to the pessimistic end of its uncertainty interval.
pub fn check_separation_condition_inequality(
    f: &IntPolynomial,
) -> Result<SeparationReport, AnalysisError> {
    let cond = global_cond_certified(f, 4.0)?;
    if cond.infinite || !cond.upper.is_finite() {
        return Ok(SeparationReport {
            verdict: Verdict::Inconclusive,
            epsilon: 0.0,
            threshold_low: 0.0,
            threshold_high: f64::INFINITY,
            cond,
            delta: None,
            margin: f64::NEG_INFINITY,
        });
    }
    let d = f.degree().unwrap_or(0).max(1) as f64;
    // strictly inside the theorem's validity range [0, 1/(e d C_R))
    let epsilon = 1.0 / (2.0 * std::f64::consts::E * d * cond.upper);
    let delta = separation(f, epsilon)?;

    // true threshold 1/(12 d C) lies in [1/(12 d upper), 1/(12 d lower)]
    let threshold_high = 1.0 / (12.0 * d * cond.lower);
    let threshold_low = 1.0 / (12.0 * d * cond.upper);
    let verdict = if delta.lower >= threshold_high {
        Verdict::Holds
    } else if delta.upper < threshold_low {
        Verdict::Violated
    } else {
        Verdict::Inconclusive
    };
    Ok(SeparationReport {
        verdict,
        epsilon,
        threshold_low,
        threshold_high,
        cond,
        margin: delta.lower - threshold_high,
        delta: Some(delta),
    })
}
