//! Three-way cross-validation: Descartes, Sturm, and the certified
//! numeric oracle must agree exactly on the roots in `(-1, 1)`.
//!
//! Roots never sit "between" the parties: the oracle's inclusion disks are
//! matched one-to-one against isolating intervals and exact roots in exact
//! rational arithmetic, and any ambiguity (a disk touching an interval
//! endpoint) re-runs the oracle at doubled precision instead of guessing.
//! A genuine disagreement dumps the full instance for triage.

use std::path::{Path, PathBuf};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rayon::prelude::*;

use rootiso::analysis::oracle::{numeric_roots, NumericRootSet};
use rootiso::descartes::{isolate_in_unit_interval, IsolationResult};
use rootiso::io::format_polynomial;
use rootiso::poly::{is_squarefree, squarefree_part, IntPolynomial, Rational};
use rootiso::randmodels::{sample_nth, RandomModelConfig};
use rootiso::sturm::isolate_sturm;

use crate::ensemble::HarnessError;

/// One cross-validation failure, with everything needed to reproduce it.
#[derive(Debug, Clone, serde::Serialize)]
pub struct Disagreement {
    pub sample_id: u64,
    pub d: usize,
    pub tau: u32,
    pub polynomial: String,
    pub detail: String,
    pub dump_path: Option<PathBuf>,
}

#[derive(Debug, Clone, serde::Serialize)]
pub struct XvalReport {
    pub n_samples: u64,
    pub validated: u64,
    pub skipped_trivial: u64,
    pub disagreements: Vec<Disagreement>,
}

impl XvalReport {
    pub fn passed(&self) -> bool {
        self.disagreements.is_empty()
    }
}

enum MatchProblem {
    /// Root disk touches a boundary: retry at higher precision.
    Ambiguous,
    Mismatch(String),
}

/// Matches every certified real oracle root in `(-1, 1)` against exactly
/// one isolating interval or exact root, and requires every interval and
/// exact root to be used exactly once.
fn match_roots(
    f: &IntPolynomial,
    set: &NumericRootSet,
    res: &IsolationResult,
) -> Result<usize, MatchProblem> {
    let one = Rational::from(BigInt::one());
    let root_at_one = f.evaluate_int(&BigInt::one()).is_zero();
    let root_at_minus_one = f.evaluate_int(&(-BigInt::one())).is_zero();
    let mut interval_hits = vec![0usize; res.intervals.len()];
    let mut exact_hits = vec![0usize; res.exact_roots.len()];
    let mut inside = 0usize;

    for i in 0..set.len() {
        if !set.is_real(i) {
            continue;
        }
        let re = set.re_rational(i);
        let im = set.im_rational(i);
        let u = set.radius_rational(i);
        let lo = &re - &u;
        let hi = &re + &u;

        // a disk that contains an exact endpoint root holds exactly that root
        if root_at_one && disk_contains(&re, &im, &u, &one) {
            continue;
        }
        if root_at_minus_one && disk_contains(&re, &im, &u, &-&one) {
            continue;
        }
        if &hi <= &-&one || &lo >= &one {
            continue; // certainly outside the open interval
        }
        if !(&lo > &-&one && &hi < &one) {
            return Err(MatchProblem::Ambiguous);
        }
        inside += 1;

        // exact roots first: the disk holding a reported rational root is
        // decidable exactly
        let mut matched = false;
        for (k, r) in res.exact_roots.iter().enumerate() {
            if disk_contains(&re, &im, &u, r) {
                exact_hits[k] += 1;
                matched = true;
                break;
            }
        }
        if !matched {
            let mut touching = false;
            for (k, j) in res.intervals.iter().enumerate() {
                let jl = j.low.to_rational();
                let jh = j.high.to_rational();
                if lo > jl && hi < jh {
                    interval_hits[k] += 1;
                    matched = true;
                    break;
                }
                if hi > jl && lo < jh {
                    touching = true;
                }
            }
            if !matched && touching {
                return Err(MatchProblem::Ambiguous);
            }
        }
        if !matched {
            return Err(MatchProblem::Mismatch(format!(
                "oracle root near {} not covered by any interval or exact root",
                set.approx(i)
            )));
        }
    }

    for (k, &h) in interval_hits.iter().enumerate() {
        if h != 1 {
            return Err(MatchProblem::Mismatch(format!(
                "interval {} holds {h} oracle roots",
                res.intervals[k]
            )));
        }
    }
    for (k, &h) in exact_hits.iter().enumerate() {
        if h != 1 {
            return Err(MatchProblem::Mismatch(format!(
                "exact root {} matched {h} oracle roots",
                res.exact_roots[k]
            )));
        }
    }
    Ok(inside)
}

fn disk_contains(re: &Rational, im: &Rational, u: &Rational, point: &Rational) -> bool {
    let dre = point - re;
    &dre * &dre + im * im <= u * u
}

/// Validates one polynomial; `None` means the instance is trivial (degree
/// below one).
pub fn validate_instance(f: &IntPolynomial) -> Option<Result<(), String>> {
    let d = f.degree()?;
    if d < 1 {
        return None;
    }
    let sf = if is_squarefree(f) {
        f.clone()
    } else {
        match squarefree_part(f) {
            Ok(sf) => sf,
            Err(e) => return Some(Err(format!("squarefree_part failed: {e}"))),
        }
    };

    let desc = match isolate_in_unit_interval(&sf) {
        Ok((res, _)) => res,
        Err(e) => return Some(Err(format!("descartes failed: {e}"))),
    };
    let sturm = match isolate_sturm(f) {
        Ok((res, _)) => res,
        Err(e) => return Some(Err(format!("sturm failed: {e}"))),
    };
    if desc.root_count() != sturm.root_count() {
        return Some(Err(format!(
            "descartes found {} roots, sturm {}",
            desc.root_count(),
            sturm.root_count()
        )));
    }

    let mut prec = 128u32;
    loop {
        let set = match numeric_roots(&sf, prec) {
            Ok(set) => set,
            Err(e) => return Some(Err(format!("oracle failed: {e}"))),
        };
        let count = set.count_real_in_unit(&sf);
        let desc_match = match_roots(&sf, &set, &desc);
        let sturm_match = match_roots(&sf, &set, &sturm);
        match (count, desc_match, sturm_match) {
            (Some(c), Ok(md), Ok(ms)) => {
                if c != desc.root_count() {
                    return Some(Err(format!(
                        "oracle counts {c} roots in (-1,1), descartes {}",
                        desc.root_count()
                    )));
                }
                debug_assert_eq!(md, c);
                debug_assert_eq!(ms, c);
                return Some(Ok(()));
            }
            (_, Err(MatchProblem::Mismatch(m)), _) => {
                return Some(Err(format!("descartes mismatch: {m}")))
            }
            (_, _, Err(MatchProblem::Mismatch(m))) => {
                return Some(Err(format!("sturm mismatch: {m}")))
            }
            _ => {
                // ambiguity: escalate the oracle precision
                if prec >= 4096 {
                    return Some(Err("oracle ambiguity persists at 4096 bits".into()));
                }
                prec *= 2;
            }
        }
    }
}

/// Draws `n_samples` uniform random instances with per-sample degree in
/// `[2, d_max]` and bitsize in `[1, tau_max]`, and validates each one.
/// Disagreements are dumped into `dump_dir` when given.
pub fn cross_validate(
    n_samples: u64,
    d_max: usize,
    tau_max: u32,
    seed: u64,
    dump_dir: Option<&Path>,
) -> Result<XvalReport, HarnessError> {
    if n_samples == 0 {
        return Err(HarnessError::EmptyEnsemble);
    }

    let outcomes: Vec<Option<(u64, Option<Result<(), String>>, IntPolynomial, usize, u32)>> =
        (0..n_samples)
            .into_par_iter()
            .map(|i| {
                let mut pick = rand_chacha::ChaCha12Rng::seed_from_u64(seed ^ 0x9e37_79b9_7f4a_7c15);
                pick.set_stream(i);
                let d = pick.gen_range(2..=d_max.max(2));
                let tau = pick.gen_range(1..=tau_max.max(1));
                let cfg = RandomModelConfig::uniform(d, tau, seed);
                let f = sample_nth(&cfg, i).expect("valid config");
                let outcome = validate_instance(&f);
                Some((i, outcome, f, d, tau))
            })
            .collect();

    let mut report = XvalReport {
        n_samples,
        validated: 0,
        skipped_trivial: 0,
        disagreements: Vec::new(),
    };
    for entry in outcomes.into_iter().flatten() {
        let (i, outcome, f, d, tau) = entry;
        match outcome {
            None => report.skipped_trivial += 1,
            Some(Ok(())) => report.validated += 1,
            Some(Err(detail)) => {
                let dump_path = dump_dir.map(|dir| {
                    let _ = std::fs::create_dir_all(dir);
                    let path = dir.join(format!("disagreement_{i}.txt"));
                    let _ = std::fs::write(
                        &path,
                        format!("# {detail}\n{}", format_polynomial(&f)),
                    );
                    path
                });
                report.disagreements.push(Disagreement {
                    sample_id: i,
                    d,
                    tau,
                    polynomial: format_polynomial(&f),
                    detail,
                    dump_path,
                });
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn planted_instances_agree() {
        // known roots 1/4, 1/2
        let f = IntPolynomial::from_i64_coeffs(&[1, -6, 8]);
        assert_eq!(validate_instance(&f), Some(Ok(())));
        // non-square-free: (x^2 - 2x + 1) * x = x(x-1)^2
        let g = IntPolynomial::from_i64_coeffs(&[0, 1, -2, 1]);
        assert_eq!(validate_instance(&g), Some(Ok(())));
    }

    #[test]
    fn small_ensemble_has_no_disagreements() {
        let report = cross_validate(40, 16, 8, 99, None).unwrap();
        assert!(report.passed(), "{:?}", report.disagreements);
        assert!(report.validated >= 35);
    }

    #[test]
    fn zero_samples_rejected() {
        assert!(matches!(
            cross_validate(0, 8, 8, 0, None),
            Err(HarnessError::EmptyEnsemble)
        ));
    }
}
