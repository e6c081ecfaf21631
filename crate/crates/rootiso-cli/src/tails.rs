//! Empirical tail-bound validation for the global condition number and
//! the disk-family root count.
//!
//! Both checks draw an ensemble, measure a certified *lower* bound of the
//! quantity per sample, and compare the empirical exceedance frequency at
//! each grid value `t` against the theoretical curve. Lower bounds can
//! only under-report exceedance, so a pass is conservative in the right
//! direction (the reverse direction is asserted by a harness test). A grid
//! point whose bound is at least one is flagged vacuous; a point beyond
//! the theorem's stated validity range is still measured but flagged, and
//! excluded from the within-validity verdict.

use rayon::prelude::*;

use rootiso::analysis::{cond_lower_on_grid, disks::rho_count_of};
use rootiso::poly::IntPolynomial;
use rootiso::randmodels::{model_stats, sample_nth, RandomModelConfig};

use crate::ensemble::HarnessError;
use crate::report::{TailPoint, TailReport};
use crate::stats::binomial_se;

fn build_report(
    kind: &str,
    model: &RandomModelConfig,
    uniformity: f64,
    values: Vec<f64>,
    t_grid: &[f64],
    bound_at: impl Fn(f64) -> f64,
    validity_max: f64,
) -> TailReport {
    let n = values.len();
    let points: Vec<TailPoint> = t_grid
        .iter()
        .map(|&t| {
            let bound = bound_at(t);
            let exceed = values.iter().filter(|&&v| v >= t).count();
            let empirical = exceed as f64 / n as f64;
            let standard_error = binomial_se(bound.min(1.0), n);
            let vacuous = bound >= 1.0;
            let within_validity = t <= validity_max;
            let pass = vacuous || empirical <= bound + 3.0 * standard_error;
            TailPoint { t, bound, empirical, standard_error, vacuous, within_validity, pass }
        })
        .collect();
    TailReport {
        kind: kind.into(),
        d: model.d,
        tau: model.tau,
        uniformity,
        n_samples: n,
        pass_within_validity: points
            .iter()
            .filter(|p| p.within_validity && !p.vacuous)
            .all(|p| p.pass),
        pass_all_non_vacuous: points.iter().filter(|p| !p.vacuous).all(|p| p.pass),
        points,
    }
}

/// Exceedance of the global condition number against
/// `8 sqrt(2) d (d+1) e^u / sqrt(t)`, valid for `t <= (d+1) 2^τ`.
pub fn cond_tail_check(
    model: &RandomModelConfig,
    n_samples: u64,
    t_grid: &[f64],
) -> Result<TailReport, HarnessError> {
    if n_samples == 0 {
        return Err(HarnessError::EmptyEnsemble);
    }
    let stats = model_stats(model)?;
    let u = stats.uniformity;
    let d = model.d as f64;

    let values: Vec<f64> = (0..n_samples)
        .into_par_iter()
        .map(|i| {
            let f = sample_nth(model, i).expect("validated config");
            cond_lower_of(&f)
        })
        .collect();

    let coeff = 8.0 * 2f64.sqrt() * d * (d + 1.0) * u.exp();
    let validity_max = (d + 1.0) * 2f64.powi(model.tau as i32);
    Ok(build_report(
        "cond",
        model,
        u,
        values,
        t_grid,
        |t| coeff / t.sqrt(),
        validity_max,
    ))
}

fn cond_lower_of(f: &IntPolynomial) -> f64 {
    match f.degree() {
        None | Some(0) => 1.0,
        Some(_) => cond_lower_on_grid(f, 12).unwrap_or(f64::INFINITY),
    }
}

/// Exceedance of the disk-family root count against
/// `44 d^2 (2 ceil(log d) + 1) e^u e^(-t / (2 ceil(log d) + 1))`, valid
/// for `t <= τ (2 ceil(log d) + 1)`.
pub fn rho_tail_check(
    model: &RandomModelConfig,
    n_samples: u64,
    t_grid: &[f64],
) -> Result<TailReport, HarnessError> {
    if n_samples == 0 {
        return Err(HarnessError::EmptyEnsemble);
    }
    let stats = model_stats(model)?;
    let u = stats.uniformity;
    let d = model.d as f64;
    let log_blocks = 2.0 * (model.d as f64).log2().ceil() + 1.0;

    let values: Vec<f64> = (0..n_samples)
        .into_par_iter()
        .map(|i| {
            let f = sample_nth(model, i).expect("validated config");
            match f.degree() {
                None | Some(0) => 0.0,
                Some(_) => rho_count_of(&f, 128).map(|r| r.definite as f64).unwrap_or(0.0),
            }
        })
        .collect();

    let coeff = 44.0 * d * d * log_blocks * u.exp();
    let validity_max = model.tau as f64 * log_blocks;
    Ok(build_report(
        "rho",
        model,
        u,
        values,
        t_grid,
        |t| coeff * (-t / log_blocks).exp(),
        validity_max,
    ))
}
