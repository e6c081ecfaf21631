//! Ensemble experiment runners: per-model benchmarks and degree-scaling
//! sweeps. Samples are dispatched to a worker pool; each worker owns its
//! sample end-to-end (draw, solve, analyze) and determinism is guaranteed
//! by per-sample ChaCha streams — wall-clock fields excepted.

use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;
use serde_json::json;

use rootiso::analysis::{disks::rho_count_of, global_cond_certified_with_budget};
use rootiso::descartes::isolate_in_unit_interval;
use rootiso::poly::{is_squarefree, squarefree_part, IntPolynomial};
use rootiso::randmodels::{sample_nth, RandomModelConfig};
use rootiso::sturm::isolate_sturm_with_sequence;

use crate::report::{ExperimentRecord, SampleRow, ScalingPoint, ScalingReport};
use crate::stats;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Solver {
    Descartes,
    Sturm,
}

impl Solver {
    pub fn name(&self) -> &'static str {
        match self {
            Solver::Descartes => "descartes",
            Solver::Sturm => "sturm",
        }
    }
}

impl FromStr for Solver {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "descartes" => Ok(Solver::Descartes),
            "sturm" => Ok(Solver::Sturm),
            other => Err(format!("unknown solver `{other}` (expected descartes|sturm)")),
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum HarnessError {
    #[error("n_samples must be at least 1")]
    EmptyEnsemble,
    #[error(transparent)]
    Model(#[from] rootiso::randmodels::ModelError),
}

/// Runs one solver on one polynomial, producing a row skeleton.
pub fn run_solver_on(
    solver: Solver,
    f: &IntPolynomial,
    sample_id: u64,
    model_name: &str,
    tau: u32,
) -> SampleRow {
    let d = f.degree().unwrap_or(0);
    let start = Instant::now();
    let mut row = SampleRow {
        sample_id,
        solver: solver.name().into(),
        d,
        tau,
        model: model_name.into(),
        nodes: 0,
        depth: 0,
        width: 0,
        bitsize: 0,
        cond_lo: None,
        cond_hi: None,
        rho: None,
        seconds: 0.0,
        sturm_total_bitsize: None,
        error: None,
    };
    match solver {
        Solver::Descartes => {
            // the solver contract wants square-free input
            let prepared = if is_squarefree(f) {
                Ok(f.clone())
            } else {
                squarefree_part(f).map_err(|e| e.to_string())
            };
            match prepared.and_then(|sf| isolate_in_unit_interval(&sf).map_err(|e| e.to_string()))
            {
                Ok((_, st)) => {
                    row.nodes = st.node_count;
                    row.depth = st.max_depth;
                    row.width = st.width_per_level.iter().copied().max().unwrap_or(0);
                    row.bitsize = st.max_intermediate_bitsize;
                }
                Err(e) => row.error = Some(e),
            }
        }
        Solver::Sturm => match isolate_sturm_with_sequence(f) {
            Ok((_, st, seq)) => {
                row.nodes = st.node_count;
                row.depth = st.max_depth;
                row.width = st.width_per_level.iter().copied().max().unwrap_or(0);
                row.bitsize = st.max_intermediate_bitsize;
                row.sturm_total_bitsize = Some(seq.total_bitsize());
            }
            Err(e) => row.error = Some(e.to_string()),
        },
    }
    row.seconds = start.elapsed().as_secs_f64();
    row
}

/// Per-sample condition bracket and disk-family root count, attached to
/// already-built rows.
fn analyze_sample(f: &IntPolynomial, rows: &mut [SampleRow]) {
    let cond = global_cond_certified_with_budget(f, 4.0, 1 << 16).ok();
    let rho = rho_count_of(f, 128).ok();
    for row in rows {
        if let Some(c) = &cond {
            row.cond_lo = Some(c.lower);
            row.cond_hi = Some(c.upper);
        }
        if let Some(r) = &rho {
            row.rho = Some(r.definite);
        }
    }
}

/// Runs every requested solver on every sample of the model; per-sample
/// solver errors are recorded in the rows, not raised.
pub fn run_ensemble(
    model: &RandomModelConfig,
    solvers: &[Solver],
    n_samples: u64,
    analyze: bool,
) -> Result<ExperimentRecord, HarnessError> {
    if n_samples == 0 {
        return Err(HarnessError::EmptyEnsemble);
    }
    model.validate()?;
    let rows: Vec<SampleRow> = (0..n_samples)
        .into_par_iter()
        .flat_map_iter(|i| {
            let f = sample_nth(model, i).expect("validated config");
            let mut rows: Vec<SampleRow> = solvers
                .iter()
                .map(|&s| run_solver_on(s, &f, i, model.kind.name(), model.tau))
                .collect();
            if analyze {
                analyze_sample(&f, &mut rows);
            }
            rows
        })
        .collect();

    let mut record = ExperimentRecord {
        config: json!({
            "kind": model.kind.name(),
            "d": model.d,
            "tau": model.tau,
            "seed": model.seed,
            "analyze": analyze,
        }),
        solvers: solvers.iter().map(|s| s.name().to_string()).collect(),
        n_samples,
        rows,
        aggregates: Default::default(),
    };
    record.compute_aggregates();
    Ok(record)
}

/// Sweep of the uniform model over a set of degrees at fixed `tau`:
/// mean node counts with bootstrap confidence intervals, fitted growth
/// exponents, and a polylog verdict for the node counts.
pub fn scaling_experiment(
    d_set: &[usize],
    tau: u32,
    n_per_d: u64,
    seed: u64,
    include_sturm: bool,
    include_rho: bool,
    polylog_threshold: f64,
) -> Result<ScalingReport, HarnessError> {
    if n_per_d == 0 {
        return Err(HarnessError::EmptyEnsemble);
    }
    let mut points = Vec::new();
    for (di, &d) in d_set.iter().enumerate() {
        let model = RandomModelConfig::uniform(d, tau, seed.wrapping_add(di as u64));
        let samples: Vec<(SampleRow, Option<SampleRow>, Option<usize>)> = (0..n_per_d)
            .into_par_iter()
            .map(|i| {
                let f = sample_nth(&model, i).expect("valid config");
                let desc = run_solver_on(Solver::Descartes, &f, i, "uniform", tau);
                let sturm = include_sturm
                    .then(|| run_solver_on(Solver::Sturm, &f, i, "uniform", tau));
                let rho = include_rho.then(|| {
                    rho_count_of(&f, 128).map(|r| r.definite).unwrap_or(usize::MAX)
                });
                (desc, sturm, rho)
            })
            .collect();

        let nodes: Vec<f64> =
            samples.iter().filter(|s| s.0.error.is_none()).map(|s| s.0.nodes as f64).collect();
        let depths: Vec<f64> =
            samples.iter().filter(|s| s.0.error.is_none()).map(|s| s.0.depth as f64).collect();
        let bits: Vec<f64> =
            samples.iter().filter(|s| s.0.error.is_none()).map(|s| s.0.bitsize as f64).collect();
        let cost: Vec<f64> = samples
            .iter()
            .filter(|s| s.0.error.is_none())
            .map(|s| s.0.nodes as f64 * s.0.bitsize as f64)
            .collect();
        let sturm_bits: Option<Vec<f64>> = include_sturm.then(|| {
            samples
                .iter()
                .filter_map(|s| s.1.as_ref())
                .filter(|r| r.error.is_none())
                .filter_map(|r| r.sturm_total_bitsize.map(|b| b as f64))
                .collect()
        });
        let rhos: Option<Vec<f64>> = include_rho.then(|| {
            samples
                .iter()
                .filter_map(|s| s.2)
                .filter(|&r| r != usize::MAX)
                .map(|r| r as f64)
                .collect()
        });

        points.push(ScalingPoint {
            d,
            n: nodes.len(),
            mean_nodes: stats::mean(&nodes),
            nodes_ci: stats::bootstrap_mean_ci(&nodes, 1000, 0.95, seed ^ d as u64),
            mean_depth: stats::mean(&depths),
            mean_bitsize: stats::mean(&bits),
            mean_cost_proxy: stats::mean(&cost),
            mean_sturm_total_bitsize: sturm_bits.map(|v| stats::mean(&v)),
            mean_rho: rhos.map(|v| stats::mean(&v)),
        });
    }

    let ds: Vec<f64> = points.iter().map(|p| p.d as f64).collect();
    let nodes_slope =
        stats::log_log_slope(&ds, &points.iter().map(|p| p.mean_nodes).collect::<Vec<_>>());
    let cost_proxy_slope =
        stats::log_log_slope(&ds, &points.iter().map(|p| p.mean_cost_proxy).collect::<Vec<_>>());
    let sturm_bitsize_slope = include_sturm.then(|| {
        stats::log_log_slope(
            &ds,
            &points.iter().map(|p| p.mean_sturm_total_bitsize.unwrap()).collect::<Vec<_>>(),
        )
    });
    let rho_slope = include_rho.then(|| {
        // rho means can be zero; shift by 1 to keep the logs finite
        stats::log_log_slope(
            &ds,
            &points.iter().map(|p| p.mean_rho.unwrap() + 1.0).collect::<Vec<_>>(),
        )
    });

    Ok(ScalingReport {
        tau,
        seed,
        polylog_consistent: nodes_slope < polylog_threshold,
        polylog_threshold,
        points,
        nodes_slope,
        cost_proxy_slope,
        sturm_bitsize_slope,
        rho_slope,
    })
}
