//! Experiment records and report emission (CSV, JSON summary, gnuplot).

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::stats;

/// Frozen CSV schema: one row per (sample, solver).
pub const CSV_HEADER: &str =
    "sample_id,solver,d,tau,model,nodes,depth,width,bitsize,cond_lo,cond_hi,rho,seconds";

/// Per-sample, per-solver measurements. Optional analysis fields are `None`
/// when the run skipped them; solver errors are recorded, not fatal.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct SampleRow {
    pub sample_id: u64,
    pub solver: String,
    pub d: usize,
    pub tau: u32,
    pub model: String,
    pub nodes: usize,
    pub depth: usize,
    /// Largest subdivision-tree layer.
    pub width: usize,
    /// Largest intermediate coefficient bitsize (for Sturm: largest
    /// coefficient in the sequence).
    pub bitsize: u64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub cond_lo: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub cond_hi: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub rho: Option<usize>,
    pub seconds: f64,
    /// Total bitsize of the Sturm sequence (Sturm rows only).
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub sturm_total_bitsize: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub error: Option<String>,
}

/// Mean / median / 95th percentile triple.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct Summary3 {
    pub mean: f64,
    pub median: f64,
    pub p95: f64,
}

fn summary3(xs: &[f64]) -> Summary3 {
    Summary3 {
        mean: stats::mean(xs),
        median: stats::median(xs),
        p95: stats::percentile(xs, 95.0),
    }
}

/// Per-solver aggregates, recomputable from the rows.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct SolverAggregate {
    pub samples: usize,
    pub errors: usize,
    pub nodes: Summary3,
    pub depth: Summary3,
    pub width: Summary3,
    pub bitsize: Summary3,
    pub seconds: Summary3,
}

/// One ensemble experiment: config snapshot, per-sample rows, aggregates.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ExperimentRecord {
    pub config: serde_json::Value,
    pub solvers: Vec<String>,
    pub n_samples: u64,
    pub rows: Vec<SampleRow>,
    pub aggregates: BTreeMap<String, SolverAggregate>,
}

impl ExperimentRecord {
    pub fn compute_aggregates(&mut self) {
        let mut map = BTreeMap::new();
        for solver in &self.solvers {
            let ok: Vec<&SampleRow> = self
                .rows
                .iter()
                .filter(|r| &r.solver == solver && r.error.is_none())
                .collect();
            let errors =
                self.rows.iter().filter(|r| &r.solver == solver && r.error.is_some()).count();
            let pick = |f: fn(&SampleRow) -> f64| -> Vec<f64> { ok.iter().map(|r| f(r)).collect() };
            map.insert(
                solver.clone(),
                SolverAggregate {
                    samples: ok.len(),
                    errors,
                    nodes: summary3(&pick(|r| r.nodes as f64)),
                    depth: summary3(&pick(|r| r.depth as f64)),
                    width: summary3(&pick(|r| r.width as f64)),
                    bitsize: summary3(&pick(|r| r.bitsize as f64)),
                    seconds: summary3(&pick(|r| r.seconds)),
                },
            );
        }
        self.aggregates = map;
    }
}

fn opt_f64(v: Option<f64>) -> String {
    v.map(|x| format!("{x}")).unwrap_or_default()
}

pub fn rows_to_csv(rows: &[SampleRow]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in rows {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{},{},{},{},{},{},{}",
            r.sample_id,
            r.solver,
            r.d,
            r.tau,
            r.model,
            r.nodes,
            r.depth,
            r.width,
            r.bitsize,
            opt_f64(r.cond_lo),
            opt_f64(r.cond_hi),
            r.rho.map(|x| x.to_string()).unwrap_or_default(),
            r.seconds,
        );
    }
    out
}

/// Writes `records.csv`, `summary.json`, and `plots.gp` into `dir`.
pub fn emit_report(record: &ExperimentRecord, dir: &Path) -> std::io::Result<()> {
    std::fs::create_dir_all(dir)?;
    std::fs::write(dir.join("records.csv"), rows_to_csv(&record.rows))?;
    std::fs::write(
        dir.join("summary.json"),
        serde_json::to_string_pretty(record).expect("serializable record"),
    )?;
    let mut gp = String::new();
    gp.push_str("set datafile separator ','\n");
    gp.push_str("set key autotitle columnhead\n");
    gp.push_str("set xlabel 'sample'\nset ylabel 'subdivision nodes'\n");
    gp.push_str("set term png size 900,600\nset output 'nodes.png'\n");
    let mut parts = Vec::new();
    for s in &record.solvers {
        parts.push(format!(
            "'records.csv' using 1:($6*(strcol(2) eq '{s}' ? 1 : NaN)) with points title '{s}'"
        ));
    }
    let _ = writeln!(gp, "plot {}", parts.join(", \\\n     "));
    std::fs::write(dir.join("plots.gp"), gp)?;
    Ok(())
}

/// One degree of a scaling sweep.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ScalingPoint {
    pub d: usize,
    pub n: usize,
    pub mean_nodes: f64,
    pub nodes_ci: (f64, f64),
    pub mean_depth: f64,
    pub mean_bitsize: f64,
    /// nodes × max intermediate bitsize: the bit-cost proxy.
    pub mean_cost_proxy: f64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub mean_sturm_total_bitsize: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub mean_rho: Option<f64>,
}

/// Scaling sweep over a set of degrees at fixed bitsize.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ScalingReport {
    pub tau: u32,
    pub seed: u64,
    pub points: Vec<ScalingPoint>,
    /// log-log slope of mean node count against degree.
    pub nodes_slope: f64,
    /// log-log slope of the Descartes bit-cost proxy against degree.
    pub cost_proxy_slope: f64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub sturm_bitsize_slope: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub rho_slope: Option<f64>,
    /// Node growth consistent with polylog: slope below the threshold.
    pub polylog_threshold: f64,
    pub polylog_consistent: bool,
}

pub fn emit_scaling_report(report: &ScalingReport, dir: &Path) -> std::io::Result<()> {
    std::fs::create_dir_all(dir)?;
    let mut csv = String::from("d,n,mean_nodes,nodes_ci_lo,nodes_ci_hi,mean_depth,mean_bitsize,mean_cost_proxy,mean_sturm_total_bitsize,mean_rho\n");
    for p in &report.points {
        let _ = writeln!(
            csv,
            "{},{},{},{},{},{},{},{},{},{}",
            p.d,
            p.n,
            p.mean_nodes,
            p.nodes_ci.0,
            p.nodes_ci.1,
            p.mean_depth,
            p.mean_bitsize,
            p.mean_cost_proxy,
            p.mean_sturm_total_bitsize.map(|v| v.to_string()).unwrap_or_default(),
            p.mean_rho.map(|v| v.to_string()).unwrap_or_default(),
        );
    }
    std::fs::write(dir.join("scale.csv"), csv)?;
    std::fs::write(dir.join("scale.json"), serde_json::to_string_pretty(report)?)?;
    let gp = "set datafile separator ','\n\
              set key autotitle columnhead\n\
              set logscale xy\n\
              set xlabel 'degree d'\nset ylabel 'mean subdivision nodes'\n\
              set term png size 900,600\nset output 'scale.png'\n\
              plot 'scale.csv' using 1:3:4:5 with yerrorlines title 'mean nodes'\n";
    std::fs::write(dir.join("scale.gp"), gp)?;
    Ok(())
}

/// One grid point of a tail-bound comparison.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TailPoint {
    pub t: f64,
    pub bound: f64,
    pub empirical: f64,
    pub standard_error: f64,
    /// Theoretical bound at or above one: the check holds trivially.
    pub vacuous: bool,
    /// `t` within the theorem's stated validity range.
    pub within_validity: bool,
    pub pass: bool,
}

/// Empirical tail frequencies against a theoretical curve.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TailReport {
    pub kind: String,
    pub d: usize,
    pub tau: u32,
    pub uniformity: f64,
    pub n_samples: usize,
    pub points: Vec<TailPoint>,
    /// Every non-vacuous point inside the validity range passed.
    pub pass_within_validity: bool,
    /// Every non-vacuous point passed, including those beyond the stated
    /// validity range (reported with a warning flag).
    pub pass_all_non_vacuous: bool,
}

pub fn emit_tail_report(report: &TailReport, dir: &Path) -> std::io::Result<()> {
    std::fs::create_dir_all(dir)?;
    let mut csv = String::from("t,bound,empirical,standard_error,vacuous,within_validity,pass\n");
    for p in &report.points {
        let _ = writeln!(
            csv,
            "{},{},{},{},{},{},{}",
            p.t, p.bound, p.empirical, p.standard_error, p.vacuous, p.within_validity, p.pass
        );
    }
    std::fs::write(dir.join("tails.csv"), csv)?;
    std::fs::write(dir.join("tails.json"), serde_json::to_string_pretty(report)?)?;
    let gp = "set datafile separator ','\n\
              set key autotitle columnhead\n\
              set logscale x\n\
              set xlabel 't'\nset ylabel 'P(X >= t)'\n\
              set term png size 900,600\nset output 'tails.png'\n\
              plot 'tails.csv' using 1:2 with lines title 'bound', \\\n     \
              'tails.csv' using 1:3 with linespoints title 'empirical'\n";
    std::fs::write(dir.join("tails.gp"), gp)?;
    Ok(())
}
