//! Obreshkoff disc geometry for an interval.
//!
//! For `0 <= α <= d` and an open interval `J`, the two Obreshkoff discs
//! pass through both endpoints of `J`, subtending the angle `π/(α+2)`;
//! their diameter is `wid(J)/sin(π/(α+2))`. The *area* is the union of the
//! discs, the *lens* their intersection. Root counts in these regions
//! sandwich the sign-variation count `var(f, J)`: at least `k` roots in
//! the lens `L_{d-k}` force `var >= k`, at most `k` roots in the area
//! `A_k` force `var <= k`.

use num_complex::Complex64;

use crate::poly::DyadicInterval;

/// The two discs through the endpoints of an interval, for one `α`.
#[derive(Debug, Clone)]
pub struct ObreshkoffRegion {
    pub interval: DyadicInterval,
    pub alpha: usize,
    pub upper_center: Complex64,
    pub lower_center: Complex64,
    pub radius: f64,
}

/// Builds the Obreshkoff discs of `J` for parameter `α`: radius
/// `wid/(2 sin φ)` and centers `mid ± i (wid/2) cot φ` with `φ = π/(α+2)`,
/// so both endpoints lie on each boundary.
pub fn obreshkoff_region(interval: &DyadicInterval, alpha: usize) -> ObreshkoffRegion {
    let mid = interval.midpoint().to_f64();
    let wid = interval.width().to_f64();
    let phi = std::f64::consts::PI / (alpha as f64 + 2.0);
    let radius = wid / (2.0 * phi.sin());
    // cot(π/2) = 0 exactly; f64 cos(π/2) is only zero to an ulp
    let offset = if alpha == 0 { 0.0 } else { (wid / 2.0) * (phi.cos() / phi.sin()) };
    ObreshkoffRegion {
        interval: interval.clone(),
        alpha,
        upper_center: Complex64::new(mid, offset),
        lower_center: Complex64::new(mid, -offset),
        radius,
    }
}

impl ObreshkoffRegion {
    /// Signed margin of `z` into the area (union): positive inside, in
    /// absolute distance units.
    pub fn area_margin(&self, z: Complex64) -> f64 {
        let d_up = (z - self.upper_center).norm();
        let d_dn = (z - self.lower_center).norm();
        self.radius - d_up.min(d_dn)
    }

    /// Signed margin of `z` into the lens (intersection): positive inside.
    pub fn lens_margin(&self, z: Complex64) -> f64 {
        let d_up = (z - self.upper_center).norm();
        let d_dn = (z - self.lower_center).norm();
        self.radius - d_up.max(d_dn)
    }

    pub fn area_contains(&self, z: Complex64) -> bool {
        self.area_margin(z) > 0.0
    }

    pub fn lens_contains(&self, z: Complex64) -> bool {
        self.lens_margin(z) > 0.0
    }
}
