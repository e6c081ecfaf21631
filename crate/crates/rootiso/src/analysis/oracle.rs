//! Certified numeric root approximation.
//!
//! Aberth–Ehrlich simultaneous iteration, run first in `f64` and then in
//! dyadic fixed-point arithmetic at a working precision that escalates on
//! demand (128 bits doubling up to 4096). Certification is exact: with
//! `z` a dyadic complex point, `f(z)` and `f'(z)` are evaluated in exact
//! integer arithmetic, a dyadic upper bound on the Newton-style inclusion
//! radius `d |f(z)/f'(z)|` is derived by integer square roots, and the
//! resulting inclusion disks must be pairwise disjoint — which pins exactly
//! one root of `f` inside each disk.
//!
//! Real/complex classification is also exact: the reflection of an
//! inclusion disk across the real axis must contain the conjugate root, so
//! a disk whose reflection meets no other disk holds a real root, and a
//! disk whose reflection meets exactly one partner holds one half of a
//! conjugate pair. Any ambiguity escalates the precision.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::AnalysisError;
use crate::poly::{is_squarefree, IntPolynomial, PolyError, Rational};

const MAX_PRECISION: u32 = 4096;

/// One approximate root with its certified inclusion radius, at the scale
/// `2^-precision` of the owning [`NumericRootSet`].
#[derive(Debug, Clone)]
pub struct CertifiedRoot {
    re: BigInt,
    im: BigInt,
    radius: BigInt,
    real: bool,
}

/// Certified approximations of all complex roots of a square-free
/// polynomial: one entry per root, pairwise disjoint inclusion disks.
#[derive(Debug, Clone)]
pub struct NumericRootSet {
    pub precision_bits: u32,
    roots: Vec<CertifiedRoot>,
}

impl NumericRootSet {
    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn roots(&self) -> &[CertifiedRoot] {
        &self.roots
    }

    fn scale(&self) -> BigInt {
        BigInt::one() << self.precision_bits
    }

    pub fn re_rational(&self, i: usize) -> Rational {
        Rational::new(self.roots[i].re.clone(), self.scale())
    }

    pub fn im_rational(&self, i: usize) -> Rational {
        Rational::new(self.roots[i].im.clone(), self.scale())
    }

    pub fn radius_rational(&self, i: usize) -> Rational {
        Rational::new(self.roots[i].radius.clone(), self.scale())
    }

    pub fn approx(&self, i: usize) -> Complex64 {
        let s = 2f64.powi(-(self.precision_bits as i32));
        Complex64::new(
            big_to_f64(&self.roots[i].re) * s,
            big_to_f64(&self.roots[i].im) * s,
        )
    }

    pub fn radius_f64(&self, i: usize) -> f64 {
        big_to_f64(&self.roots[i].radius) * 2f64.powi(-(self.precision_bits as i32))
    }

    /// Whether the root in disk `i` is certified real.
    pub fn is_real(&self, i: usize) -> bool {
        self.roots[i].real
    }

    /// Indices of the certified real roots.
    pub fn real_indices(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.roots.len()).filter(|&i| self.roots[i].real)
    }

    /// `|f(z_i)|^2` as an exact rational, for residual checks.
    pub fn residual_sq(&self, f: &IntPolynomial, i: usize) -> Rational {
        let d = f.degree().unwrap();
        let (re, im) = exact_complex_eval(f, &self.roots[i].re, &self.roots[i].im, self.precision_bits);
        let norm = &re * &re + &im * &im;
        Rational::new(norm, BigInt::one() << (2 * d as u64 * self.precision_bits as u64))
    }

    /// Exact count of certified real roots strictly inside `(-1, 1)`.
    /// Returns `None` when an inclusion disk straddles an endpoint that is
    /// not itself a root — a signal to re-run at higher precision.
    pub fn count_real_in_unit(&self, f: &IntPolynomial) -> Option<usize> {
        let scale = self.scale();
        let root_at_one = f.evaluate_int(&BigInt::one()).is_zero();
        let root_at_minus_one = f.evaluate_int(&(-BigInt::one())).is_zero();
        let mut count = 0;
        for (i, r) in self.roots.iter().enumerate() {
            if !r.real {
                continue;
            }
            // Is this disk the one holding an exact endpoint root?
            if root_at_one && self.disk_contains_real_point(i, &scale) {
                continue;
            }
            if root_at_minus_one && self.disk_contains_real_point_neg(i, &scale) {
                continue;
            }
            // inside iff re + u < scale and re - u > -scale (value * 2^prec)
            let hi = &r.re + &r.radius;
            let lo = &r.re - &r.radius;
            if hi < scale && lo > -&scale {
                count += 1;
            } else if lo >= scale || hi <= -&scale {
                // certainly outside
            } else {
                return None;
            }
        }
        Some(count)
    }

    fn disk_contains_real_point(&self, i: usize, scale: &BigInt) -> bool {
        // |1 - z_i| <= u_i, all at scale 2^-prec
        let r = &self.roots[i];
        let dre = scale - &r.re;
        let dsq = &dre * &dre + &r.im * &r.im;
        dsq <= &r.radius * &r.radius
    }

    fn disk_contains_real_point_neg(&self, i: usize, scale: &BigInt) -> bool {
        let r = &self.roots[i];
        let dre = -scale - &r.re;
        let dsq = &dre * &dre + &r.im * &r.im;
        dsq <= &r.radius * &r.radius
    }
}

/// Approximates all roots of a square-free `f` with certified, pairwise
/// disjoint inclusion disks, starting at `precision_bits` of working
/// precision and doubling (up to 4096) until certification and real/complex
/// classification both succeed.
pub fn numeric_roots(
    f: &IntPolynomial,
    precision_bits: u32,
) -> Result<NumericRootSet, AnalysisError> {
    let d = match f.degree() {
        None => return Err(PolyError::ZeroPolynomial.into()),
        Some(0) => return Err(PolyError::ConstantPolynomial.into()),
        Some(d) => d,
    };
    if !is_squarefree(f) {
        return Err(PolyError::NotSquareFree {
            gcd_degree: crate::poly::gcd_with_derivative_degree(f),
        }
        .into());
    }

    let mut prec = precision_bits.clamp(32, MAX_PRECISION);
    let seeds = aberth_f64(f);
    let mut pts: Vec<(BigInt, BigInt)> = seeds
        .iter()
        .map(|z| (f64_to_fix(z.re, prec), f64_to_fix(z.im, prec)))
        .collect();

    loop {
        // Break any symmetric configuration the warm start may have left:
        // clustered seeds can otherwise ride an unstable manifold of the
        // iteration straight into a critical point.
        perturb(&mut pts, prec);
        aberth_fixed(f, &mut pts, prec);
        if let Some(set) = certify(f, &pts, prec, d) {
            return Ok(set);
        }
        if prec >= MAX_PRECISION {
            return Err(AnalysisError::OracleCertificationFailed { precision_bits: prec });
        }
        for (re, im) in &mut pts {
            *re <<= prec;
            *im <<= prec;
        }
        prec *= 2;
    }
}

/// Index-dependent offsets of magnitude about `2^(-3 prec / 4)`, with
/// alternating signs.
fn perturb(pts: &mut [(BigInt, BigInt)], prec: u32) {
    for (i, (re, im)) in pts.iter_mut().enumerate() {
        let eps = BigInt::from(2 * i as i64 + 1) << (prec / 4);
        if i % 2 == 0 {
            *re += &eps;
            *im += eps >> 1;
        } else {
            *re -= &eps;
            *im -= eps >> 1;
        }
    }
}

/// Ladder wrapper: re-runs the oracle at doubled precision until the unit
/// interval count is unambiguous.
pub fn certified_real_count_in_unit(
    f: &IntPolynomial,
    start_bits: u32,
) -> Result<(usize, NumericRootSet), AnalysisError> {
    let mut prec = start_bits;
    loop {
        let set = numeric_roots(f, prec)?;
        if let Some(count) = set.count_real_in_unit(f) {
            return Ok((count, set));
        }
        prec = set.precision_bits.saturating_mul(2);
        if prec > MAX_PRECISION {
            return Err(AnalysisError::OracleCertificationFailed { precision_bits: prec / 2 });
        }
    }
}

// ---------------------------------------------------------------------------
// f64 warm start

fn coeffs_f64(f: &IntPolynomial) -> Vec<f64> {
    // Scale down uniformly so the largest coefficient fits f64 comfortably;
    // roots are invariant under scalar multiples.
    let max_bits = f.bitsize();
    let shift = max_bits.saturating_sub(900);
    f.coeffs()
        .iter()
        .map(|c| {
            let reduced = c >> shift;
            big_to_f64(&reduced)
        })
        .collect()
}

fn horner_c64(coeffs: &[f64], z: Complex64) -> (Complex64, Complex64) {
    let mut v = Complex64::new(0.0, 0.0);
    let mut dv = Complex64::new(0.0, 0.0);
    for &c in coeffs.iter().rev() {
        dv = dv * z + v;
        v = v * z + c;
    }
    (v, dv)
}

fn aberth_f64(f: &IntPolynomial) -> Vec<Complex64> {
    let coeffs = coeffs_f64(f);
    let d = coeffs.len() - 1;
    let lead = coeffs[d].abs();
    let radius = 1.0
        + coeffs[..d]
            .iter()
            .map(|c| (c / lead).abs())
            .fold(0.0f64, f64::max);
    let mut z: Vec<Complex64> = (0..d)
        .map(|k| {
            let theta = 2.0 * std::f64::consts::PI * (k as f64) / (d as f64) + 0.45;
            Complex64::from_polar(radius * (0.5 + 0.5 * ((k % 7) as f64 + 1.0) / 7.0), theta)
        })
        .collect();
    for _ in 0..400 {
        let mut max_step = 0.0f64;
        for i in 0..d {
            let (v, dv) = horner_c64(&coeffs, z[i]);
            if v.norm() == 0.0 {
                continue;
            }
            let newton = if dv.norm() == 0.0 {
                Complex64::new(1e-3, 1e-3)
            } else {
                v / dv
            };
            let mut s = Complex64::new(0.0, 0.0);
            for j in 0..d {
                if j != i {
                    let diff = z[i] - z[j];
                    if diff.norm() > 0.0 {
                        s += diff.inv();
                    }
                }
            }
            let denom = Complex64::new(1.0, 0.0) - newton * s;
            let step = if denom.norm() == 0.0 { newton } else { newton / denom };
            z[i] -= step;
            max_step = max_step.max(step.norm() / z[i].norm().max(1.0));
        }
        if max_step < 1e-14 {
            break;
        }
    }
    z
}

// ---------------------------------------------------------------------------
// fixed-point refinement (mantissas at scale 2^-prec)

fn f64_to_fix(x: f64, prec: u32) -> BigInt {
    let scaled = x * 2f64.powi(prec.min(512) as i32);
    let mut b = f64_to_big(scaled);
    if prec > 512 {
        b <<= prec - 512;
    }
    b
}

fn f64_to_big(x: f64) -> BigInt {
    if !x.is_finite() {
        return BigInt::zero();
    }
    if x.abs() < 9e15 {
        return BigInt::from(x as i64);
    }
    let (mant, exp) = frexp(x);
    let m = BigInt::from((mant * 2f64.powi(53)) as i64);
    let e = exp - 53;
    if e >= 0 {
        m << e as u32
    } else {
        m >> (-e) as u32
    }
}

fn frexp(x: f64) -> (f64, i32) {
    let exp = x.abs().log2().floor() as i32 + 1;
    (x / 2f64.powi(exp), exp)
}

fn big_to_f64(n: &BigInt) -> f64 {
    n.to_f64().unwrap_or(if n.is_negative() { f64::MIN } else { f64::MAX })
}

struct Fix;

impl Fix {
    fn cmul(ar: &BigInt, ai: &BigInt, br: &BigInt, bi: &BigInt, prec: u32) -> (BigInt, BigInt) {
        ((ar * br - ai * bi) >> prec, (ar * bi + ai * br) >> prec)
    }

    fn cdiv(ar: &BigInt, ai: &BigInt, br: &BigInt, bi: &BigInt, prec: u32) -> (BigInt, BigInt) {
        let mut den = br * br + bi * bi;
        if den.is_zero() {
            den = BigInt::one();
        }
        let nr = (ar * br + ai * bi) << prec;
        let ni = (ai * br - ar * bi) << prec;
        (nr / &den, ni / &den)
    }

    fn norm_sq(re: &BigInt, im: &BigInt) -> BigInt {
        re * re + im * im
    }
}

/// Rounded fixed-point evaluation of `f` and `f'` at `z`, mantissas at
/// scale `2^-prec`.
fn horner_fixed(
    f: &IntPolynomial,
    re: &BigInt,
    im: &BigInt,
    prec: u32,
) -> ((BigInt, BigInt), (BigInt, BigInt)) {
    let mut vr = BigInt::zero();
    let mut vi = BigInt::zero();
    let mut dr = BigInt::zero();
    let mut di = BigInt::zero();
    for c in f.coeffs().iter().rev() {
        let (t_r, t_i) = Fix::cmul(&dr, &di, re, im, prec);
        dr = t_r + &vr;
        di = t_i + &vi;
        let (u_r, u_i) = Fix::cmul(&vr, &vi, re, im, prec);
        vr = u_r + (c << prec);
        vi = u_i;
    }
    ((vr, vi), (dr, di))
}

fn aberth_fixed(f: &IntPolynomial, pts: &mut [(BigInt, BigInt)], prec: u32) {
    let d = pts.len();
    let threshold = BigInt::one() << (prec / 8).max(1);
    let lead = f.leading_coeff().unwrap();
    let bound_f64 = 1.0
        + f.coeffs()
            .iter()
            .map(|c| big_to_f64(c).abs() / big_to_f64(lead).abs())
            .fold(0.0f64, f64::max)
            .min(1e18);
    let escape = f64_to_fix(8.0 * bound_f64, prec);
    for _sweep in 0..64 {
        let mut max_step = BigInt::zero();
        for i in 0..d {
            // runaway points restart on a deterministic grid
            if pts[i].0.abs() > escape || pts[i].1.abs() > escape {
                let gx = (i % 7) as f64 - 3.0;
                let gy = ((i * 3 + 1) % 5) as f64 - 2.0;
                pts[i].0 = f64_to_fix(gx * bound_f64 / 3.0, prec);
                pts[i].1 = f64_to_fix(gy * bound_f64 / 2.0, prec);
            }
            let (v, dv) = horner_fixed(f, &pts[i].0, &pts[i].1, prec);
            if v.0.is_zero() && v.1.is_zero() {
                continue;
            }
            let (wr, wi) = Fix::cdiv(&v.0, &v.1, &dv.0, &dv.1, prec);
            // sum of inverses of pairwise differences
            let mut sr = BigInt::zero();
            let mut si = BigInt::zero();
            for j in 0..d {
                if i == j {
                    continue;
                }
                let dr = &pts[i].0 - &pts[j].0;
                let di = &pts[i].1 - &pts[j].1;
                let one = BigInt::one() << prec;
                let (ir, ii) = Fix::cdiv(&one, &BigInt::zero(), &dr, &di, prec);
                sr += ir;
                si += ii;
            }
            let (ws_r, ws_i) = Fix::cmul(&wr, &wi, &sr, &si, prec);
            let den_r = (BigInt::one() << prec) - ws_r;
            let den_i = -ws_i;
            let (mut step_r, mut step_i) = Fix::cdiv(&wr, &wi, &den_r, &den_i, prec);
            // trust region: a step past max(|z|, 1)/2 is halved into range
            let limit = pts[i]
                .0
                .abs()
                .max(pts[i].1.abs())
                .max(BigInt::one() << prec)
                >> 1;
            while step_r.abs().max(step_i.abs()) > limit {
                step_r >>= 1;
                step_i >>= 1;
            }
            pts[i].0 -= &step_r;
            pts[i].1 -= &step_i;
            let step_mag = step_r.abs().max(step_i.abs());
            max_step = max_step.max(step_mag);
        }
        if max_step < threshold {
            break;
        }
    }
}

// ---------------------------------------------------------------------------
// exact certification

/// Exact `f(z) * 2^(d * prec)` for dyadic complex `z = (re + i im)/2^prec`,
/// as a Gaussian integer.
fn exact_complex_eval(
    f: &IntPolynomial,
    re: &BigInt,
    im: &BigInt,
    prec: u32,
) -> (BigInt, BigInt) {
    let d = f.degree().unwrap();
    let mut ar = BigInt::zero();
    let mut ai = BigInt::zero();
    for (k, c) in f.coeffs().iter().enumerate().rev() {
        // acc = acc * z + c * 2^(prec * (d - k))   [all exact]
        let t_r = &ar * re - &ai * im;
        let t_i = &ar * im + &ai * re;
        ar = t_r + (c << (prec as u64 * (d - k) as u64));
        ai = t_i;
    }
    (ar, ai)
}

/// Smallest integer `m` with `m^2 * den >= num` (a certified upper bound
/// for `sqrt(num/den)` scaled to integers).
fn ceil_sqrt_ratio(num: &BigInt, den: &BigInt) -> BigInt {
    if num.is_zero() {
        return BigInt::zero();
    }
    let mut m = (num / den).sqrt();
    while &m * &m * den < *num {
        m += 1;
    }
    m
}

fn certify(
    f: &IntPolynomial,
    pts: &[(BigInt, BigInt)],
    prec: u32,
    d: usize,
) -> Option<NumericRootSet> {
    let df = f.derivative();
    let dd = BigInt::from(d);
    let mut roots = Vec::with_capacity(d);
    for (re, im) in pts {
        let (ar, ai) = exact_complex_eval(f, re, im, prec);
        if ar.is_zero() && ai.is_zero() {
            roots.push(CertifiedRoot { re: re.clone(), im: im.clone(), radius: BigInt::zero(), real: false });
            continue;
        }
        let (br, bi) = exact_complex_eval(&df, re, im, prec);
        let bnorm = Fix::norm_sq(&br, &bi);
        if bnorm.is_zero() {
            return None;
        }
        // radius^2 = d^2 |A|^2 / (|B|^2 2^(2 prec)); mantissa bound m with
        // (m/2^prec)^2 >= radius^2  <=>  m^2 |B|^2 >= d^2 |A|^2.
        let anorm = Fix::norm_sq(&ar, &ai);
        let m = ceil_sqrt_ratio(&(&dd * &dd * anorm), &bnorm);
        roots.push(CertifiedRoot { re: re.clone(), im: im.clone(), radius: m, real: false });
    }

    // pairwise disjointness, exact
    for i in 0..roots.len() {
        for j in i + 1..roots.len() {
            let dre = &roots[i].re - &roots[j].re;
            let dim = &roots[i].im - &roots[j].im;
            let dist_sq = Fix::norm_sq(&dre, &dim);
            let rad = &roots[i].radius + &roots[j].radius;
            if dist_sq <= &rad * &rad {
                return None;
            }
        }
    }

    // real/complex classification via reflected disks
    let flags = classify_real(&mut roots)?;
    for (r, flag) in roots.iter_mut().zip(flags) {
        r.real = flag;
    }
    Some(NumericRootSet { precision_bits: prec, roots })
}

/// For each disk, intersect its reflection across the real axis with all
/// disks: meeting only itself certifies a real root, meeting exactly one
/// other certifies a conjugate pair. Anything else is ambiguous.
fn classify_real(roots: &mut [CertifiedRoot]) -> Option<Vec<bool>> {
    let n = roots.len();
    let mut flags = vec![false; n];
    let mut paired = vec![usize::MAX; n];
    for i in 0..n {
        let mut hits = Vec::new();
        for j in 0..n {
            let dre = &roots[i].re - &roots[j].re;
            let dim = -&roots[i].im - &roots[j].im;
            let dist_sq = Fix::norm_sq(&dre, &dim);
            let rad = &roots[i].radius + &roots[j].radius;
            if dist_sq <= &rad * &rad {
                hits.push(j);
            }
        }
        match hits.as_slice() {
            [j] if *j == i => flags[i] = true,
            [j] => paired[i] = *j,
            _ => return None,
        }
    }
    // conjugate pairing must be an involution
    for i in 0..n {
        if !flags[i] {
            let j = paired[i];
            if j == usize::MAX || paired[j] != i {
                return None;
            }
        }
    }
    Some(flags)
}
