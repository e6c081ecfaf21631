//! Condition numbers, separation, root-counting regions, and the certified
//! numeric root oracle used to validate the exact solvers.
//!
//! Submodules:
//!
//! - [`oracle`] — Aberth-style simultaneous iteration in dyadic fixed-point
//!   arithmetic with exact a-posteriori certification: every output root
//!   comes with an inclusion disk, all disks pairwise disjoint.
//! - [`cond`] — the local condition number `C(f, x)` and a certified
//!   bracket for its maximum over `[-1, 1]` via the Lipschitz property of
//!   `1/C(f, ·)`.
//! - [`separation`] — ε-real separation from certified roots, and the
//!   separation/condition inequality check.
//! - [`disks`] — the hyperbolic disk family accumulating at `±1`, the root
//!   count `rho` inside it, and its deterministic upper bound.
//! - [`obreshkoff`] — Obreshkoff disc/lens/area geometry for an interval.

pub mod cond;
pub mod disks;
pub mod obreshkoff;
pub mod oracle;
pub mod separation;

pub use cond::{
    cond_lower_on_grid, global_cond_certified, global_cond_certified_with_budget, local_cond,
    ConditionEstimate,
};
pub use disks::{disk_family, rho_count, rho_upper_bound, DiskEntry, DiskFamily, RhoCount};
pub use obreshkoff::{obreshkoff_region, ObreshkoffRegion};
pub use num_complex::Complex64;
pub use oracle::{numeric_roots, CertifiedRoot, NumericRootSet};
pub use separation::{
    check_separation_condition_inequality, separation, SeparationEstimate, SeparationReport,
    Verdict,
};

use crate::poly::PolyError;

/// Errors from the analysis toolkit.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AnalysisError {
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("oracle certification failed: inclusion disks still overlap at {precision_bits} bits")]
    OracleCertificationFailed { precision_bits: u32 },
}
