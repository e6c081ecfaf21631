//! File formats: the plain-text polynomial format, JSON model configs,
//! and JSON shaping of solver outputs.
//!
//! Polynomial text format: first line `d=<degree>`, then one line
//! `<index> <coefficient>` per (sparse) entry in decimal; missing indices
//! are zero. The writer emits the same format. Sparse files are densified
//! on read — the in-memory representation is always dense.

use std::fmt::Write as _;
use std::path::Path;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::descartes::{IsolationResult, SubdivisionStats};
use crate::poly::IntPolynomial;
use crate::randmodels::{ModelKind, RandomModelConfig};

#[derive(Debug, thiserror::Error)]
pub enum IoError {
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error("polynomial file: {0}")]
    Format(String),
    #[error("model config: {0}")]
    Config(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

/// Parses the polynomial text format.
pub fn parse_polynomial(text: &str) -> Result<IntPolynomial, IoError> {
    let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#'));
    let header = lines.next().ok_or_else(|| IoError::Format("empty file".into()))?;
    let degree: usize = header
        .strip_prefix("d=")
        .ok_or_else(|| IoError::Format(format!("expected `d=<degree>`, got `{header}`")))?
        .trim()
        .parse()
        .map_err(|e| IoError::Format(format!("bad degree: {e}")))?;
    let mut coeffs = vec![BigInt::zero(); degree + 1];
    let mut seen = vec![false; degree + 1];
    for line in lines {
        let mut parts = line.split_whitespace();
        let idx: usize = parts
            .next()
            .ok_or_else(|| IoError::Format("missing index".into()))?
            .parse()
            .map_err(|e| IoError::Format(format!("bad index: {e}")))?;
        let coeff = parts
            .next()
            .ok_or_else(|| IoError::Format(format!("index {idx}: missing coefficient")))?;
        if parts.next().is_some() {
            return Err(IoError::Format(format!("index {idx}: trailing tokens")));
        }
        if idx > degree {
            return Err(IoError::Format(format!("index {idx} exceeds declared degree {degree}")));
        }
        if seen[idx] {
            return Err(IoError::Format(format!("duplicate index {idx}")));
        }
        seen[idx] = true;
        coeffs[idx] = BigInt::from_str(coeff)
            .map_err(|e| IoError::Format(format!("index {idx}: bad coefficient: {e}")))?;
    }
    Ok(IntPolynomial::new(coeffs))
}

/// Renders the polynomial text format (nonzero entries only).
pub fn format_polynomial(f: &IntPolynomial) -> String {
    let mut out = String::new();
    match f.degree() {
        None => {
            out.push_str("d=0\n0 0\n");
        }
        Some(d) => {
            let _ = writeln!(out, "d={d}");
            for (i, c) in f.coeffs().iter().enumerate() {
                if !c.is_zero() {
                    let _ = writeln!(out, "{i} {c}");
                }
            }
        }
    }
    out
}

pub fn read_polynomial(path: &Path) -> Result<IntPolynomial, IoError> {
    parse_polynomial(&std::fs::read_to_string(path)?)
}

pub fn write_polynomial(path: &Path, f: &IntPolynomial) -> Result<(), IoError> {
    Ok(std::fs::write(path, format_polynomial(f))?)
}

/// On-disk JSON form of a model configuration; `base_poly_file` is a path
/// resolved relative to the config file.
#[derive(Debug, Clone, serde::Serialize, serde::Deserialize)]
pub struct ModelConfigFile {
    pub kind: ModelKind,
    pub d: usize,
    pub tau: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub support: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub signs: Option<Vec<i8>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub base_poly_file: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sigma: Option<i64>,
    pub seed: u64,
}

impl ModelConfigFile {
    pub fn resolve(&self, base_dir: &Path) -> Result<RandomModelConfig, IoError> {
        let base_poly = match &self.base_poly_file {
            None => None,
            Some(rel) => Some(read_polynomial(&base_dir.join(rel))?),
        };
        let cfg = RandomModelConfig {
            kind: self.kind,
            d: self.d,
            tau: self.tau,
            support_set: self.support.clone(),
            sign_vector: self.signs.clone(),
            base_poly,
            sigma: self.sigma.map(BigInt::from),
            seed: self.seed,
        };
        cfg.validate().map_err(|e| IoError::Config(e.to_string()))?;
        Ok(cfg)
    }
}

pub fn read_model_config(path: &Path) -> Result<RandomModelConfig, IoError> {
    let text = std::fs::read_to_string(path)?;
    let file: ModelConfigFile = serde_json::from_str(&text)?;
    file.resolve(path.parent().unwrap_or_else(|| Path::new(".")))
}

/// JSON view of an isolation result: intervals and exact roots as exact
/// fraction strings.
pub fn isolation_result_json(result: &IsolationResult) -> serde_json::Value {
    serde_json::json!({
        "intervals": result
            .intervals
            .iter()
            .map(|j| serde_json::json!([j.low.to_string(), j.high.to_string()]))
            .collect::<Vec<_>>(),
        "exact_roots": result.exact_roots.iter().map(|r| r.to_string()).collect::<Vec<_>>(),
        "root_count": result.root_count(),
    })
}

/// JSON view of subdivision statistics (per-node records elided).
pub fn subdivision_stats_json(stats: &SubdivisionStats) -> serde_json::Value {
    serde_json::json!({
        "node_count": stats.node_count,
        "max_depth": stats.max_depth,
        "width_per_level": stats.width_per_level,
        "var_per_node": stats.var_per_node,
        "max_intermediate_bitsize": stats.max_intermediate_bitsize,
        "total_pow2_content_removed": stats.total_pow2_content_removed,
    })
}
