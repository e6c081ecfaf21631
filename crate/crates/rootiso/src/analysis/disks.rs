//! The hyperbolic disk family accumulating at `±1`, the count of roots
//! inside its union, and the deterministic upper bound on that count.
//!
//! For degree `d` and `N = ceil(log2 d)`, the family has disks indexed by
//! `n = -N..N` with exact rational centers and radii: geometrically
//! shrinking toward the endpoints of `I`, the outermost pair slightly
//! enlarged. The number of roots in the union controls the width of the
//! Descartes subdivision tree; each evaluation `|f(center)|` bounds the
//! root count of its disk through the classical log-ratio argument.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::oracle::NumericRootSet;
use super::AnalysisError;
use crate::poly::{log2_rational, squarefree_part, IntPolynomial, PolyError, Rational};

/// One disk of the family: center `ξ_n` on the real axis, radius `ρ_n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiskEntry {
    pub n: i32,
    pub center: Rational,
    pub radius: Rational,
}

/// The full family for a given degree, indexed `n = -N..=N`.
#[derive(Debug, Clone)]
pub struct DiskFamily {
    pub degree: usize,
    pub entries: Vec<DiskEntry>,
}

impl DiskFamily {
    pub fn n_max(&self) -> i32 {
        (self.entries.len() as i32 - 1) / 2
    }
}

/// `ceil(log2 d)` for `d >= 1`.
pub(crate) fn ceil_log2(d: usize) -> u32 {
    assert!(d >= 1);
    (usize::BITS - (d - 1).leading_zeros()).min(63)
}

/// Builds the disk family for degree `d` (`N = ceil(log2 d)`); `sgn(0)` is
/// taken as 0, so the middle disk is centered at the origin.
pub fn disk_family(d: usize) -> DiskFamily {
    let n_max = ceil_log2(d) as i32;
    let mut entries = Vec::with_capacity(2 * n_max as usize + 1);
    for n in -n_max..=n_max {
        let a = n.unsigned_abs();
        let (center_mag, radius) = if n.abs() < n_max {
            // ξ = 1 - (3/4) 2^-|n|, ρ = (3/8) 2^-|n|
            (
                Rational::one() - Rational::new(BigInt::from(3), BigInt::from(4) << a),
                Rational::new(BigInt::from(3), BigInt::from(8) << a),
            )
        } else {
            // boundary disks: ξ = 1 - 2^-N, ρ = (3/2) 2^-N
            (
                Rational::one() - Rational::new(BigInt::one(), BigInt::one() << a),
                Rational::new(BigInt::from(3), BigInt::from(2) << a),
            )
        };
        let center = match n.signum() {
            1 => center_mag,
            -1 => -center_mag,
            _ => Rational::zero(),
        };
        entries.push(DiskEntry { n, center, radius });
    }
    DiskFamily { degree: d, entries }
}

/// Number of certified roots inside the disk union, as the bracket
/// `[definite, possible]`: a root whose inclusion disk straddles a family
/// boundary is reported in the range, never silently resolved.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RhoCount {
    pub definite: usize,
    pub possible: usize,
}

impl RhoCount {
    pub fn is_exact(&self) -> bool {
        self.definite == self.possible
    }
}

/// Counts certified roots inside the family union, exactly: all distance
/// comparisons are rational (the oracle's approximations are dyadic).
pub fn rho_count(f: &IntPolynomial, set: &NumericRootSet) -> RhoCount {
    let d = f.degree().expect("nonzero polynomial");
    let family = disk_family(d);
    let mut definite = 0;
    let mut possible = 0;
    for i in 0..set.len() {
        let re = set.re_rational(i);
        let im = set.im_rational(i);
        let u = set.radius_rational(i);
        let mut inside = false;
        let mut maybe = false;
        for disk in &family.entries {
            let dre = &re - &disk.center;
            let dist_sq = &dre * &dre + &im * &im;
            // definite: dist + u <= ρ  <=>  u <= ρ and dist^2 <= (ρ-u)^2
            if u <= disk.radius {
                let slack = &disk.radius - &u;
                if dist_sq <= &slack * &slack {
                    inside = true;
                    break;
                }
            }
            let reach = &disk.radius + &u;
            if dist_sq <= &reach * &reach {
                maybe = true;
            }
        }
        if inside {
            definite += 1;
            possible += 1;
        } else if maybe {
            possible += 1;
        }
    }
    RhoCount { definite, possible }
}

/// Convenience wrapper: takes the square-free part, runs the oracle, and
/// counts. The family is built for the degree of the square-free part.
pub fn rho_count_of(f: &IntPolynomial, precision_bits: u32) -> Result<RhoCount, AnalysisError> {
    let sf = squarefree_part(f)?;
    if sf.degree().map_or(true, |d| d == 0) {
        return Ok(RhoCount { definite: 0, possible: 0 });
    }
    let set = super::oracle::numeric_roots(&sf, precision_bits)?;
    Ok(rho_count(&sf, &set))
}

/// `sum_n log2(e ||f||_1 / |f(ξ_n)|)` over the family of `f`'s degree,
/// evaluated in exact rational arithmetic; `+infinity` when some center is
/// a root (the bound degenerates there).
pub fn rho_upper_bound(f: &IntPolynomial) -> Result<f64, PolyError> {
    let norm = Rational::from(f.one_norm()?);
    let d = f.degree().unwrap();
    if d == 0 {
        return Ok(0.0);
    }
    let family = disk_family(d);
    let log2_e = std::f64::consts::LOG2_E;
    let mut sum = 0.0;
    for disk in &family.entries {
        let v = f.evaluate(&disk.center).abs();
        if v.is_zero() {
            return Ok(f64::INFINITY);
        }
        sum += log2_e + log2_rational(&(&norm / &v));
    }
    Ok(sum)
}
